#include "grig/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

#include "grig/parallel.hpp"
#include "grig/philox.hpp"

namespace grig {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

nlohmann::json number_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

nlohmann::json big_strings(const std::vector<BigInt>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

nlohmann::json doubles(const std::vector<double>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : v) out.push_back(number_or_null(x));
  return out;
}

/// Neumaier compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0, c_ = 0.0;
};

double log_count(unsigned __int128 v) { return v ? std::log(static_cast<double>(v)) : -kInf; }
double log_count(const BigInt& v) { return log_big(v); }

/// Walks the exact walk-count vector W_t (words of length t ending at each
/// ball vertex) for t = 0..n_max on a ball of radius >= n_max and hands each
/// one to `visit(t, W_t, live)`, where only the first `live` entries can be
/// nonzero.
template <class T, class Visit>
void walk_counts(const CayleyBall& b, std::size_t n_max, Visit&& visit) {
  std::vector<T> cur(b.size(), T(0)), nxt(b.size(), T(0));
  cur[0] = 1;
  visit(std::size_t{0}, cur, std::size_t{1});
  for (std::size_t t = 0; t < n_max; ++t) {
    std::size_t live = b.ball_size(t + 1);
    parallel_for(live, [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) {
        T s(0);
        for (std::size_t j = 0; j < b.rank; ++j) {
          std::int32_t v = b.neighbor(u, b.inverse_generator[j]);
          if (v >= 0) s += cur[static_cast<std::size_t>(v)];
        }
        nxt[u] = s;
      }
    });
    std::swap(cur, nxt);
    visit(t + 1, cur, live);
  }
}

bool fits_int128(std::size_t n, std::size_t k) {
  return static_cast<double>(n) * std::log2(static_cast<double>(k)) < 126.0;
}

/// Radial distance chain of the k-regular tree: N[d] = number of length-n
/// words ending at distance d. visit(n, N).
template <class Visit>
void radial_counts(std::size_t k, std::size_t n_max, Visit&& visit) {
  std::vector<BigInt> N(n_max + 2, BigInt(0)), next(n_max + 2, BigInt(0));
  N[0] = 1;
  visit(std::size_t{0}, N);
  for (std::size_t n = 0; n < n_max; ++n) {
    std::fill(next.begin(), next.end(), BigInt(0));
    next[1] += N[0] * k;
    for (std::size_t d = 1; d <= n; ++d) {
      if (N[d] == 0) continue;
      next[d + 1] += N[d] * (k - 1);
      next[d - 1] += N[d];
    }
    std::swap(N, next);
    visit(n + 1, N);
  }
}

double log_sphere(std::size_t k, std::size_t d) {
  if (d == 0) return 0.0;
  return std::log(static_cast<double>(k)) + static_cast<double>(d - 1) * std::log(static_cast<double>(k - 1));
}

}  // namespace

nlohmann::json EstimateReport::to_json(bool include_runtime) const {
  nlohmann::json j{{"schema", kReportSchemaVersion},
                   {"parameter", parameter},
                   {"group", group},
                   {"estimate", number_or_null(estimate)},
                   {"certified", nullptr},
                   {"ci", nullptr},
                   {"parameters", parameters},
                   {"series", series},
                   {"notes", notes}};
  if (certified) {
    j["certified"] = {{"value", number_or_null(certified->value)},
                      {"direction", certified->direction == CertifiedBound::Direction::lower ? "lower" : "upper"}};
  }
  if (ci) j["ci"] = {number_or_null(ci->first), number_or_null(ci->second)};
  if (include_runtime) j["runtime_seconds"] = runtime_seconds;
  return j;
}

// ------------------------------------------------------------ spectral radius

std::vector<double> spectral_lower_bounds(const CountSeries& c, std::size_t k) {
  std::vector<double> out(c.values.size(), 0.0);
  double best = 0.0;
  for (std::size_t n = 1; n < c.values.size(); ++n) {
    if (c.values[n] > 0) {
      best = std::max(best, std::exp(log_big(c.values[n]) / static_cast<double>(n)) / static_cast<double>(k));
    }
    out[n] = best;
  }
  if (!out.empty()) out[0] = kNaN;
  return out;
}

double spectral_extrapolation(const CountSeries& c, std::size_t k) {
  std::vector<std::pair<double, double>> ratios;  // (m, corrected ratio)
  for (std::size_t m = 2; 2 * m < c.values.size(); ++m) {
    if (c.values[2 * m] == 0 || c.values[2 * m - 2] == 0) continue;
    double md = static_cast<double>(m);
    double r = std::exp(log_big(c.values[2 * m]) - log_big(c.values[2 * m - 2])) * std::pow(md / (md - 1), 1.5);
    ratios.emplace_back(md, r);
  }
  if (ratios.empty()) return kNaN;
  double r2 = ratios.back().second;
  if (ratios.size() >= 2) {
    auto [m1, r1] = ratios[ratios.size() - 2];
    auto [m, rm] = ratios.back();
    r2 = (m * m * rm - m1 * m1 * r1) / (m * m - m1 * m1);
  }
  return std::min(1.0, std::sqrt(std::max(r2, 0.0)) / static_cast<double>(k));
}

EstimateReport spectral_radius(const MarkedGroup& g, std::size_t n_max) {
  auto t0 = Clock::now();
  CountSeries c = cogrowth(g, n_max);
  EstimateReport r;
  r.parameter = "rho";
  r.group = g.name();
  auto lower = spectral_lower_bounds(c, g.rank());
  r.estimate = spectral_extrapolation(c, g.rank());
  r.certified = CertifiedBound{lower.back(), CertifiedBound::Direction::lower};
  r.parameters = {{"n_max", n_max}, {"k", g.rank()}};
  r.series = {{"cogrowth", big_strings(c.values)}, {"lower_bound", doubles(lower)}};
  r.notes.push_back("estimate assumes c(2m) ~ A m^{-3/2} (k rho)^{2m}; the lower bound is exact");
  r.runtime_seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------- percolation

PercolationGraph percolation_graph(const CayleyBall& ball) {
  PercolationGraph g;
  g.radius = ball.radius;
  g.vertex_count = ball.size();
  g.offsets.assign(ball.size() + 1, 0);
  std::vector<std::uint32_t> scratch;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    scratch.clear();
    for (std::size_t j = 0; j < ball.rank; ++j) {
      std::int32_t u = ball.neighbor(v, j);
      if (u >= 0 && static_cast<std::size_t>(u) != v) scratch.push_back(static_cast<std::uint32_t>(u));
    }
    // inverse generators give the reverse edges, so lists are symmetric
    for (std::size_t j = 0; j < ball.rank; ++j) {
      std::int32_t u = ball.neighbor(v, ball.inverse_generator[j]);
      if (u >= 0 && static_cast<std::size_t>(u) != v) scratch.push_back(static_cast<std::uint32_t>(u));
    }
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    g.nbr.insert(g.nbr.end(), scratch.begin(), scratch.end());
    g.offsets[v + 1] = static_cast<std::uint32_t>(g.nbr.size());
  }
  g.edge.assign(g.nbr.size(), 0);
  std::uint32_t next = 0;
  for (std::size_t v = 0; v < ball.size(); ++v)
    for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i)
      if (g.nbr[i] > v) g.edge[i] = next++;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    for (std::uint32_t i = g.offsets[v]; i < g.offsets[v + 1]; ++i) {
      std::uint32_t u = g.nbr[i];
      if (u > v) continue;
      auto first = g.nbr.begin() + g.offsets[u];
      auto last = g.nbr.begin() + g.offsets[u + 1];
      auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(v));
      g.edge[i] = g.edge[static_cast<std::size_t>(it - g.nbr.begin())];
    }
  }
  g.edge_count = next;
  g.on_sphere.assign(ball.size(), 0);
  for (std::size_t v = 0; v < ball.size(); ++v) g.on_sphere[v] = ball.distance[v] == ball.radius;
  return g;
}

std::vector<double> percolation_variates(const PercolationGraph& graph, PercolationMode mode, std::uint64_t seed,
                                         std::uint64_t trial) {
  PhiloxStream rng(seed, trial);
  std::vector<double> u(mode == PercolationMode::site ? graph.vertex_count : graph.edge_count);
  for (auto& x : u) x = rng.uniform();
  return u;
}

double connection_threshold(const PercolationGraph& graph, PercolationMode mode, const std::vector<double>& u) {
  const bool site = mode == PercolationMode::site;
  std::vector<double> best(graph.vertex_count, kInf);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  best[0] = site ? u[0] : 0.0;
  heap.emplace(best[0], 0);
  while (!heap.empty()) {
    auto [w, v] = heap.top();
    heap.pop();
    if (w > best[v]) continue;
    if (graph.on_sphere[v]) return w;
    for (std::uint32_t i = graph.offsets[v]; i < graph.offsets[v + 1]; ++i) {
      std::uint32_t x = graph.nbr[i];
      double cand = std::max(w, site ? u[x] : u[graph.edge[i]]);
      if (cand < best[x]) {
        best[x] = cand;
        heap.emplace(cand, x);
      }
    }
  }
  return kInf;
}

double half_crossing(const std::vector<double>& p, const std::vector<double>& theta) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (theta[i] >= 0.5) {
      if (i == 0 || theta[i] == theta[i - 1]) return p[i];
      return p[i - 1] + (0.5 - theta[i - 1]) / (theta[i] - theta[i - 1]) * (p[i] - p[i - 1]);
    }
  }
  return kNaN;
}

namespace {

std::vector<double> theta_on_grid(std::vector<double> thresholds, const std::vector<double>& grid) {
  std::sort(thresholds.begin(), thresholds.end());
  std::vector<double> theta;
  for (double p : grid) {
    auto below = std::lower_bound(thresholds.begin(), thresholds.end(), p) - thresholds.begin();
    theta.push_back(static_cast<double>(below) / static_cast<double>(thresholds.size()));
  }
  return theta;
}

std::pair<double, double> wilson(double phat, double n) {
  const double z = 1.959963984540054;
  double denom = 1 + z * z / n;
  double center = (phat + z * z / (2 * n)) / denom;
  double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
  // clamp so rounding never leaves phat outside its own interval
  return {std::min(phat, std::max(0.0, center - half)), std::max(phat, std::min(1.0, center + half))};
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  double pos = q * static_cast<double>(v.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

}  // namespace

PercolationResult percolation(const MarkedGroup& g, const PercolationOptions& opt) {
  auto t0 = Clock::now();
  if (opt.trials == 0) throw std::invalid_argument("percolation: trials must be positive");
  std::vector<double> grid = opt.p_grid;
  if (grid.empty()) {
    for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);
  }
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("percolation: p grid must be sorted");

  CayleyBall ball = bfs_ball(g, opt.radius);
  PercolationGraph graph = percolation_graph(ball);

  PercolationResult out;
  EstimateReport& r = out.report;
  r.parameter = opt.mode == PercolationMode::site ? "pc-site" : "pc-bond";
  r.group = g.name();
  r.parameters = {{"mode", opt.mode == PercolationMode::site ? "site" : "bond"},
                  {"radius", opt.radius},
                  {"trials", opt.trials},
                  {"seed", opt.seed},
                  {"bootstrap", opt.bootstrap},
                  {"vertices", graph.vertex_count},
                  {"edges", graph.edge_count}};

  bool degenerate = std::none_of(graph.on_sphere.begin(), graph.on_sphere.end(), [](char c) { return c != 0; });
  out.thresholds.assign(opt.trials, kInf);
  if (!degenerate) {
    parallel_for(opt.trials, [&](std::size_t begin, std::size_t end) {
      for (std::size_t t = begin; t < end; ++t) {
        out.thresholds[t] = connection_threshold(graph, opt.mode, percolation_variates(graph, opt.mode, opt.seed, t));
      }
    });
  }

  auto theta = theta_on_grid(out.thresholds, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto [lo, hi] = wilson(theta[i], static_cast<double>(opt.trials));
    out.curve.push_back({grid[i], theta[i], lo, hi});
  }

  if (degenerate) {
    r.estimate = 1.0;
    r.notes.push_back("the radius-" + std::to_string(opt.radius) +
                      " sphere is empty (finite group); p_c is undefined and reported as 1");
  } else {
    r.estimate = half_crossing(grid, theta);
    std::vector<double> boot;
    std::vector<double> sample(opt.trials);
    for (std::size_t b = 0; b < opt.bootstrap; ++b) {
      PhiloxStream rng(opt.seed, (std::uint64_t{1} << 62) + b);
      for (auto& s : sample) s = out.thresholds[rng.below(static_cast<std::uint32_t>(opt.trials))];
      double c = half_crossing(grid, theta_on_grid(sample, grid));
      if (std::isfinite(c)) boot.push_back(c);
    }
    if (!boot.empty()) r.ci = std::make_pair(quantile(boot, 0.025), quantile(boot, 0.975));
    r.notes.push_back("finite-ball proxy: root reaches the radius-" + std::to_string(opt.radius) +
                      " sphere; p is the 0.5 crossing of theta");
  }
  r.series = {{"p", doubles(grid)}, {"theta", doubles(theta)}};
  r.runtime_seconds = seconds_since(t0);
  return out;
}

void write_theta_csv(std::ostream& out, const std::vector<ThetaPoint>& curve) {
  out << "p,theta_hat,ci_lo,ci_hi\n";
  for (const auto& pt : curve) out << pt.p << ',' << pt.theta << ',' << pt.ci_lo << ',' << pt.ci_hi << '\n';
}

// -------------------------------------------------------------------- entropy

EntropySeries walk_entropy(const MarkedGroup& g, std::size_t n_max, bool allow_radial) {
  EntropySeries out;
  const std::size_t k = g.rank();
  const double log_k = std::log(static_cast<double>(k));
  if (allow_radial && g.cayley_graph_is_tree()) {
    out.radial = true;
    radial_counts(k, n_max, [&](std::size_t n, const std::vector<BigInt>& N) {
      CompensatedSum h;
      for (std::size_t d = 0; d <= n; ++d) {
        if (N[d] == 0) continue;
        double log_mass = log_big(N[d]) - static_cast<double>(n) * log_k;
        double log_point = log_mass - log_sphere(k, d);
        h.add(-std::exp(log_mass) * log_point);
      }
      out.H.push_back(h.value());
    });
    return out;
  }
  CayleyBall b = bfs_ball(g, n_max);
  auto visit = [&](std::size_t n, const auto& W, std::size_t live) {
    CompensatedSum h;
    for (std::size_t v = 0; v < live; ++v) {
      if (W[v] == 0) continue;
      double log_p = log_count(W[v]) - static_cast<double>(n) * log_k;
      h.add(-std::exp(log_p) * log_p);
    }
    out.H.push_back(h.value());
  };
  if (fits_int128(n_max, k)) {
    walk_counts<unsigned __int128>(b, n_max, visit);
  } else {
    walk_counts<BigInt>(b, n_max, visit);
  }
  return out;
}

EstimateReport entropy(const MarkedGroup& g, std::size_t n_max, bool allow_radial) {
  auto t0 = Clock::now();
  if (n_max == 0) throw std::invalid_argument("entropy: n must be positive");
  EntropySeries s = walk_entropy(g, n_max, allow_radial);
  std::vector<double> per_step{kNaN}, increments{kNaN};
  double best = kInf;
  for (std::size_t n = 1; n <= n_max; ++n) {
    per_step.push_back(s.H[n] / static_cast<double>(n));
    increments.push_back(s.H[n] - s.H[n - 1]);
    best = std::min(best, per_step.back());
  }
  EstimateReport r;
  r.parameter = "entropy";
  r.group = g.name();
  r.estimate = per_step.back();
  r.certified = CertifiedBound{best, CertifiedBound::Direction::upper};
  r.parameters = {{"n_max", n_max}, {"mode", s.radial ? "radial" : "ball"}};
  // the increments decrease to h as well and converge at O(1/n)
  r.series = {{"H", doubles(s.H)}, {"H_over_n", doubles(per_step)}, {"increments", doubles(increments)}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------- speed

double expected_distance_exact(const MarkedGroup& g, std::size_t n) {
  const std::size_t k = g.rank();
  const double log_k = std::log(static_cast<double>(k));
  double result = 0.0;
  if (g.cayley_graph_is_tree()) {
    radial_counts(k, n, [&](std::size_t t, const std::vector<BigInt>& N) {
      if (t != n) return;
      CompensatedSum s;
      for (std::size_t d = 1; d <= n; ++d)
        if (N[d] != 0) s.add(static_cast<double>(d) * std::exp(log_big(N[d]) - static_cast<double>(n) * log_k));
      result = s.value();
    });
    return result;
  }
  CayleyBall b = bfs_ball(g, n);
  auto visit = [&](std::size_t t, const auto& W, std::size_t live) {
    if (t != n) return;
    CompensatedSum s;
    for (std::size_t v = 1; v < live; ++v)
      if (W[v] != 0) s.add(b.distance[v] * std::exp(log_count(W[v]) - static_cast<double>(n) * log_k));
    result = s.value();
  };
  if (fits_int128(n, k)) {
    walk_counts<unsigned __int128>(b, n, visit);
  } else {
    walk_counts<BigInt>(b, n, visit);
  }
  return result;
}

EstimateReport speed(const MarkedGroup& g, std::size_t n, std::size_t samples, std::uint64_t seed) {
  auto t0 = Clock::now();
  if (n == 0 || samples == 0) throw std::invalid_argument("speed: n and samples must be positive");
  std::optional<CayleyBall> ball;
  if (!g.word_length(g.identity())) ball = bfs_ball(g, n);
  const auto k = static_cast<std::uint32_t>(g.rank());
  std::vector<double> dist(samples);
  parallel_for(samples, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      PhiloxStream rng(seed, s);
      Elem x = g.identity();
      for (std::size_t t = 0; t < n; ++t) x = g.step(x, rng.below(k));
      if (ball) {
        dist[s] = ball->distance[static_cast<std::size_t>(ball->index_of(x))];
      } else {
        dist[s] = static_cast<double>(*g.word_length(x));
      }
    }
  });
  CompensatedSum sum;
  for (double d : dist) sum.add(d);
  double mean = sum.value() / static_cast<double>(samples);
  CompensatedSum sq;
  for (double d : dist) sq.add((d - mean) * (d - mean));
  double sd = samples > 1 ? std::sqrt(sq.value() / static_cast<double>(samples - 1)) : 0.0;
  double half = 1.959963984540054 * sd / std::sqrt(static_cast<double>(samples));
  const double nd = static_cast<double>(n);

  EstimateReport r;
  r.parameter = "speed";
  r.group = g.name();
  r.estimate = mean / nd;
  r.ci = std::make_pair((mean - half) / nd, (mean + half) / nd);
  r.parameters = {{"n", n}, {"samples", samples}, {"seed", seed}, {"distance", ball ? "ball" : "word_length"}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

// -------------------------------------------------------- connective constant

EstimateReport connective_constant(const MarkedGroup& g, std::size_t n_max) {
  auto t0 = Clock::now();
  if (n_max == 0) throw std::invalid_argument("connective constant: n must be positive");
  CountSeries s = saw_count(g, n_max);
  std::vector<double> upper{kNaN};
  double best = kInf;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (s.values[n] == 0) {
      best = 0.0;
    } else {
      best = std::min(best, s.normalized[n]);
    }
    upper.push_back(best);
  }
  EstimateReport r;
  r.parameter = "mu";
  r.group = g.name();
  if (s.values[n_max] == 0) {
    r.estimate = 0.0;
    r.notes.push_back("no self-avoiding walk of length " + std::to_string(n_max) + "; mu is degenerate (0)");
  } else {
    r.estimate = std::exp(log_big(s.values[n_max]) - log_big(s.values[n_max - 1]));
  }
  r.certified = CertifiedBound{best, CertifiedBound::Direction::upper};
  r.parameters = {{"n_max", n_max}};
  r.series = {{"saw", big_strings(s.values)}, {"upper_bound", doubles(upper)}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

// ----------------------------------------------------------- Cheeger, growth

EstimateReport cheeger(const MarkedGroup& g, std::size_t n_max, CheegerStrategy strategy) {
  auto t0 = Clock::now();
  auto points = cheeger_upper(g, strategy, n_max);
  EstimateReport r;
  r.parameter = "cheeger";
  r.group = g.name();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : points) {
    rows.push_back({{"candidate", p.candidate},
                    {"size", p.set_size},
                    {"boundary", p.boundary},
                    {"ratio", std::to_string(p.ratio.numerator()) + "/" + std::to_string(p.ratio.denominator())},
                    {"best", boost::rational_cast<double>(p.best)}});
  }
  double best = boost::rational_cast<double>(points.back().best);
  r.estimate = best;
  r.certified = CertifiedBound{best, CertifiedBound::Direction::upper};
  r.parameters = {{"n_max", n_max}, {"strategy", strategy == CheegerStrategy::balls ? "balls" : "greedy"}};
  r.series = {{"candidates", std::move(rows)}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

EstimateReport growth_rate(const MarkedGroup& g, std::size_t n_max) {
  auto t0 = Clock::now();
  CountSeries s = growth(g, n_max);
  double best = kInf;
  for (std::size_t n = 1; n <= n_max; ++n) best = std::min(best, s.normalized[n]);
  EstimateReport r;
  r.parameter = "growth";
  r.group = g.name();
  r.estimate = n_max ? s.normalized[n_max] : kNaN;
  if (n_max) r.certified = CertifiedBound{best, CertifiedBound::Direction::upper};
  r.parameters = {{"n_max", n_max}};
  r.series = {{"ball_size", big_strings(s.values)}, {"log_b_over_nk", doubles(s.normalized)}};
  r.runtime_seconds = seconds_since(t0);
  return r;
}

}  // namespace grig
