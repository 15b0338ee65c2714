#include "grig/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "grig/parallel.hpp"

namespace grig {

namespace {

std::size_t thread_count_setting = 0;
std::size_t max_vertices_setting = kDefaultMaxVertices;

}  // namespace

std::size_t default_threads() {
  if (thread_count_setting) return thread_count_setting;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(std::size_t n) { thread_count_setting = n; }

std::size_t default_max_vertices() { return max_vertices_setting; }
void set_default_max_vertices(std::size_t n) { max_vertices_setting = n ? n : kDefaultMaxVertices; }

// ----------------------------------------------------------------- CayleyBall

std::size_t CayleyBall::ball_size(std::size_t r) const { return layer_end[std::min(r, radius)]; }

std::size_t CayleyBall::sphere_size(std::size_t r) const {
  if (r > radius) return 0;
  return layer_end[r] - (r ? layer_end[r - 1] : 0);
}

std::int32_t CayleyBall::index_of(Elem x) const {
  auto it = index.find(x);
  return it == index.end() ? kOutside : it->second;
}

CayleyBall bfs_ball(const MarkedGroup& g, std::size_t n, std::size_t max_vertices) {
  const std::size_t k = g.rank();
  if (k == 0 || k > 255) throw std::invalid_argument("bfs_ball: rank must be in 1..255");
  if (max_vertices == 0) max_vertices = default_max_vertices();
  max_vertices = std::min<std::size_t>(max_vertices, std::numeric_limits<std::int32_t>::max());

  CayleyBall b;
  b.radius = n;
  b.rank = k;
  for (std::size_t j = 0; j < k; ++j) {
    Elem inv = g.inverse(g.generator(j));
    std::size_t found = k;
    if (g.generator(j) == inv) {
      found = j;
    } else {
      for (std::size_t i = 0; i < k && found == k; ++i)
        if (g.generator(i) == inv) found = i;
    }
    if (found == k) {
      throw std::invalid_argument("bfs_ball: generating set of " + g.name() + " is not symmetric");
    }
    b.inverse_generator.push_back(static_cast<std::uint8_t>(found));
  }

  b.vertices.push_back(g.identity());
  b.distance.push_back(0);
  b.index.emplace(g.identity(), 0);
  b.layer_end.push_back(1);

  std::vector<Elem> images;
  std::size_t lo = 0;
  for (std::size_t r = 0; r <= n; ++r) {
    std::size_t hi = b.vertices.size();
    images.assign((hi - lo) * k, 0);
    parallel_for(hi - lo, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < k; ++j) images[i * k + j] = g.step(b.vertices[lo + i], j);
    });
    b.adjacency.resize(hi * k, CayleyBall::kOutside);
    for (std::size_t i = 0; i < hi - lo; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        Elem y = images[i * k + j];
        auto it = b.index.find(y);
        std::int32_t target;
        if (it != b.index.end()) {
          target = it->second;
        } else if (r < n) {
          if (b.vertices.size() >= max_vertices) {
            throw ResourceError("ball of " + g.name() + " exceeds " + std::to_string(max_vertices) +
                                    " vertices at radius " + std::to_string(r + 1),
                                r);
          }
          target = static_cast<std::int32_t>(b.vertices.size());
          b.vertices.push_back(y);
          b.distance.push_back(static_cast<std::uint32_t>(r + 1));
          b.index.emplace(y, target);
        } else {
          target = CayleyBall::kOutside;
        }
        b.adjacency[(lo + i) * k + j] = target;
      }
    }
    if (r < n) b.layer_end.push_back(b.vertices.size());
    lo = hi;
  }
  b.adjacency.resize(b.vertices.size() * k, CayleyBall::kOutside);
  return b;
}

// -------------------------------------------------------------- CountSeries

double log_big(const BigInt& v) {
  if (v == 0) return -std::numeric_limits<double>::infinity();
  // log of a big integer without overflowing double
  std::size_t bits = boost::multiprecision::msb(v);
  if (bits < 1000) return std::log(v.convert_to<double>());
  BigInt top = v >> (bits - 60);
  return std::log(top.convert_to<double>()) + static_cast<double>(bits - 60) * std::log(2.0);
}


std::string to_string(CountSeries::Kind kind) {
  switch (kind) {
    case CountSeries::Kind::cogrowth: return "cogrowth";
    case CountSeries::Kind::growth: return "growth";
    case CountSeries::Kind::saw: return "saw";
  }
  return "?";
}

namespace {

template <class T>
std::vector<BigInt> cogrowth_dp(const CayleyBall& b, std::size_t n_max) {
  const std::size_t k = b.rank;
  std::vector<T> cur(b.size(), T(0)), nxt(b.size(), T(0));
  std::size_t written_cur = 1, written_nxt = 0;
  cur[0] = 1;
  std::vector<BigInt> out{BigInt(1)};
  for (std::size_t t = 0; t < n_max; ++t) {
    // at time t+1 only vertices that can still get home by n_max matter
    std::size_t reach = std::min(t + 1, n_max - t - 1);
    std::size_t count = b.ball_size(reach);
    parallel_for(count, [&](std::size_t begin, std::size_t end) {
      for (std::size_t u = begin; u < end; ++u) {
        T s(0);
        for (std::size_t j = 0; j < k; ++j) {
          std::int32_t v = b.neighbor(u, b.inverse_generator[j]);
          if (v >= 0) s += cur[static_cast<std::size_t>(v)];
        }
        nxt[u] = s;
      }
    });
    for (std::size_t u = count; u < written_nxt; ++u) nxt[u] = T(0);
    written_nxt = count;
    std::swap(cur, nxt);
    std::swap(written_cur, written_nxt);
    if constexpr (std::is_same_v<T, BigInt>) {
      out.push_back(cur[0]);
    } else {
      // unsigned __int128 into cpp_int
      BigInt v = static_cast<std::uint64_t>(cur[0] >> 64);
      v <<= 64;
      v += static_cast<std::uint64_t>(cur[0]);
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

CountSeries cogrowth(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices) {
  CayleyBall b = bfs_ball(g, n_max / 2, max_vertices);
  const double k = static_cast<double>(g.rank());
  CountSeries s{CountSeries::Kind::cogrowth, {}, {}};
  if (static_cast<double>(n_max) * std::log2(k) < 126.0) {
    s.values = cogrowth_dp<unsigned __int128>(b, n_max);
  } else {
    s.values = cogrowth_dp<BigInt>(b, n_max);
  }
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    if (n == 0) {
      s.normalized.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      s.normalized.push_back(std::exp(log_big(s.values[n]) / static_cast<double>(n)) / k);
    }
  }
  return s;
}

CountSeries growth(const CayleyBall& ball) {
  CountSeries s{CountSeries::Kind::growth, {}, {}};
  const double k = static_cast<double>(ball.rank);
  for (std::size_t n = 0; n <= ball.radius; ++n) {
    std::size_t b = ball.ball_size(n);
    s.values.emplace_back(b);
    s.normalized.push_back(n == 0 ? std::numeric_limits<double>::quiet_NaN()
                                  : std::log(static_cast<double>(b)) / (static_cast<double>(n) * k));
  }
  return s;
}

CountSeries growth(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices) {
  return growth(bfs_ball(g, n_max, max_vertices));
}

namespace {

struct SawSearch {
  const CayleyBall& b;
  std::size_t n_max;
  std::vector<char> visited;
  std::vector<std::uint64_t> counts;

  SawSearch(const CayleyBall& ball, std::size_t n) : b(ball), n_max(n), visited(ball.size(), 0), counts(n + 1, 0) {}

  void dfs(std::size_t v, std::size_t depth) {
    ++counts[depth];
    if (depth == n_max) return;
    for (std::size_t j = 0; j < b.rank; ++j) {
      std::int32_t u = b.neighbor(v, j);
      if (u < 0 || visited[static_cast<std::size_t>(u)]) continue;
      visited[static_cast<std::size_t>(u)] = 1;
      dfs(static_cast<std::size_t>(u), depth + 1);
      visited[static_cast<std::size_t>(u)] = 0;
    }
  }
};

}  // namespace

CountSeries saw_count(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices) {
  CayleyBall b = bfs_ball(g, n_max, max_vertices);
  const std::size_t k = b.rank;
  // One task per two-letter prefix; each worker keeps its own visited set.
  std::vector<std::vector<std::uint64_t>> partial(k * k, std::vector<std::uint64_t>(n_max + 1, 0));
  parallel_for(n_max >= 2 ? k * k : 0, [&](std::size_t begin, std::size_t end) {
    SawSearch search(b, n_max);
    for (std::size_t task = begin; task < end; ++task) {
      std::int32_t v1 = b.neighbor(0, task / k);
      if (v1 <= 0) continue;
      std::int32_t v2 = b.neighbor(static_cast<std::size_t>(v1), task % k);
      if (v2 <= 0 || v2 == v1) continue;
      std::fill(search.counts.begin(), search.counts.end(), 0);
      search.visited[0] = search.visited[static_cast<std::size_t>(v1)] = search.visited[static_cast<std::size_t>(v2)] = 1;
      search.dfs(static_cast<std::size_t>(v2), 2);
      search.visited[0] = search.visited[static_cast<std::size_t>(v1)] = search.visited[static_cast<std::size_t>(v2)] = 0;
      partial[task] = search.counts;
    }
  });
  CountSeries s{CountSeries::Kind::saw, {}, {}};
  std::vector<BigInt> total(n_max + 1, BigInt(0));
  total[0] = 1;
  if (n_max >= 1) {
    for (std::size_t j = 0; j < k; ++j)
      if (b.neighbor(0, j) > 0) total[1] += 1;
  }
  for (const auto& p : partial)
    for (std::size_t n = 2; n <= n_max; ++n) total[n] += p[n];
  s.values = std::move(total);
  for (std::size_t n = 0; n <= n_max; ++n) {
    s.normalized.push_back(n == 0 ? std::numeric_limits<double>::quiet_NaN()
                                  : std::exp(log_big(s.values[n]) / static_cast<double>(n)));
  }
  return s;
}

// ------------------------------------------------------------------- Cheeger

Rational boundary_ratio(const MarkedGroup& g, const std::vector<Elem>& set) {
  if (set.empty()) throw std::invalid_argument("boundary_ratio: empty set");
  std::unordered_set<Elem> members(set.begin(), set.end());
  std::int64_t boundary = 0;
  for (Elem x : members)
    for (std::size_t j = 0; j < g.rank(); ++j)
      if (!members.count(g.step(x, j))) ++boundary;
  return Rational(boundary, static_cast<std::int64_t>(g.rank() * members.size()));
}

namespace {

class GreedyCheeger {
 public:
  GreedyCheeger(const CayleyBall& b, std::size_t r) : b_(b), in_(b.size(), 0) {
    for (std::size_t v = 0; v < b.ball_size(r); ++v) in_[v] = 1;
    size_ = b.ball_size(r);
    for (std::size_t v = 0; v < size_; ++v)
      for (std::size_t j = 0; j < b.rank; ++j) boundary_ += outside(b.neighbor(v, j)) ? 1 : 0;
  }

  /// Single toggles that strictly lower the ratio, swept in index order
  /// until nothing improves or `passes` sweeps are done.
  void improve(std::size_t passes) {
    const std::size_t limit = b_.ball_size(b_.radius - 1);
    for (std::size_t pass = 0; pass < passes; ++pass) {
      bool changed = false;
      for (std::size_t v = 0; v < limit; ++v) {
        std::int64_t delta = toggle_delta(v);
        std::int64_t size = static_cast<std::int64_t>(size_) + (in_[v] ? -1 : 1);
        if (size <= 0) continue;
        // (B + delta) / size < B / size_  (both over k)
        if ((boundary_ + delta) * static_cast<std::int64_t>(size_) < boundary_ * size) {
          boundary_ += delta;
          size_ = static_cast<std::size_t>(size);
          in_[v] ^= 1;
          changed = true;
        }
      }
      if (!changed) break;
    }
  }

  std::size_t size() const { return size_; }
  std::int64_t boundary() const { return boundary_; }

 private:
  bool outside(std::int32_t u) const { return u < 0 || !in_[static_cast<std::size_t>(u)]; }

  std::int64_t toggle_delta(std::size_t v) const {
    std::int64_t out_edges = 0, in_edges = 0;
    for (std::size_t j = 0; j < b_.rank; ++j) {
      std::int32_t fwd = b_.neighbor(v, j);
      std::int32_t back = b_.neighbor(v, b_.inverse_generator[j]);
      if (fwd != static_cast<std::int32_t>(v) && outside(fwd)) ++out_edges;
      if (back != static_cast<std::int32_t>(v) && !outside(back)) ++in_edges;
    }
    // adding v: its outward edges become boundary, edges from X into v stop being boundary
    return in_[v] ? in_edges - out_edges : out_edges - in_edges;
  }

  const CayleyBall& b_;
  std::vector<char> in_;
  std::size_t size_ = 0;
  std::int64_t boundary_ = 0;
};

}  // namespace

std::vector<CheegerPoint> cheeger_upper(const MarkedGroup& g, CheegerStrategy strategy, std::size_t n_max,
                                        std::size_t max_vertices) {
  CayleyBall b = bfs_ball(g, n_max, max_vertices);
  const auto k = static_cast<std::int64_t>(b.rank);
  std::vector<CheegerPoint> out;
  Rational best(1);
  auto record = [&](std::string label, std::size_t size, std::int64_t boundary) {
    CheegerPoint p;
    p.candidate = std::move(label);
    p.set_size = size;
    p.boundary = static_cast<std::size_t>(boundary);
    p.ratio = Rational(boundary, k * static_cast<std::int64_t>(size));
    if (out.empty() || p.ratio < best) best = p.ratio;
    p.best = best;
    out.push_back(std::move(p));
  };
  for (std::size_t r = 0; r <= n_max; ++r) {
    std::size_t size = b.ball_size(r);
    std::int64_t boundary = 0;
    for (std::size_t v = 0; v < size; ++v)
      for (std::size_t j = 0; j < b.rank; ++j) {
        std::int32_t u = b.neighbor(v, j);
        if (u < 0 || b.distance[static_cast<std::size_t>(u)] > r) ++boundary;
      }
    record("ball(" + std::to_string(r) + ")", size, boundary);
    if (strategy == CheegerStrategy::greedy && r + 1 < n_max) {
      GreedyCheeger search(b, r);
      search.improve(32);
      record("greedy(" + std::to_string(r) + ")", search.size(), search.boundary());
    }
  }
  return out;
}

// ------------------------------------------------------------------- exports

void write_csv(std::ostream& out, const CountSeries& s) {
  out << "n,value,normalized_value\n";
  for (std::size_t n = 0; n < s.values.size(); ++n) {
    out << n << ',' << s.values[n] << ',';
    if (!std::isnan(s.normalized[n])) out << s.normalized[n];
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const CayleyBall& ball, const MarkedGroup& g) {
  out << "# source target generator\n";
  for (std::size_t v = 0; v < ball.size(); ++v)
    for (std::size_t j = 0; j < ball.rank; ++j) {
      std::int32_t u = ball.neighbor(v, j);
      if (u >= 0) out << v << ' ' << u << ' ' << g.generator_label(j) << '\n';
    }
}

void write_dot(std::ostream& out, const CayleyBall& ball, const MarkedGroup& g) {
  out << "digraph ball {\n";
  for (std::size_t v = 0; v < ball.size(); ++v) out << "  " << v << " [label=\"" << v << "\" dist=" << ball.distance[v] << "];\n";
  for (std::size_t v = 0; v < ball.size(); ++v)
    for (std::size_t j = 0; j < ball.rank; ++j) {
      std::int32_t u = ball.neighbor(v, j);
      // involutions would draw every edge twice
      if (u < 0 || (ball.inverse_generator[j] == j && static_cast<std::size_t>(u) < v)) continue;
      out << "  " << v << " -> " << u << " [label=\"" << g.generator_label(j) << "\"];\n";
    }
  out << "}\n";
}

}  // namespace grig
