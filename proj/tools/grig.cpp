// grig: command-line front end for the Grigorchuk-family laboratory.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grig/cayley.hpp"
#include "grig/errors.hpp"
#include "grig/estimators.hpp"
#include "grig/family.hpp"
#include "grig/group_expr.hpp"
#include "grig/parallel.hpp"
#include "grig/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

struct Output {
  std::string json_path;
  std::string csv_path;
  bool timing = false;
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--json", out.json_path, "write the JSON report here ('-' = stdout)");
  cmd->add_option("--csv", out.csv_path, "write the CSV table here ('-' = stdout)");
  cmd->add_flag("--timing", out.timing, "include runtimes in JSON");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  std::ostringstream s;
  s.precision(10);
  s << x;
  return s.str();
}

// ----------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite;
  std::string omega = "(012)*";
  grig::VerifyOptions options;
  Output out;
};

int run_verify(VerifyArgs& a) {
  a.options.omega = grig::OmegaWord::parse(a.omega);
  auto reports = grig::run_suite(a.suite, a.options);
  bool pass = true;
  nlohmann::json doc{{"schema", grig::kReportSchemaVersion}, {"suites", nlohmann::json::array()}};
  std::ostringstream csv;
  csv << "suite,check,pass,detail\n";
  for (const auto& r : reports) {
    std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.suite << "\n";
    for (const auto& c : r.checks) {
      std::cerr << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  [" + c.detail + "]")
                << "\n";
      csv << r.suite << ",\"" << c.name << "\"," << (c.pass ? 1 : 0) << ",\"" << c.detail << "\"\n";
    }
    auto j = r.to_json();
    if (a.out.timing) j["runtime_seconds"] = r.runtime_seconds;
    doc["suites"].push_back(std::move(j));
    pass = pass && r.pass();
  }
  doc["pass"] = pass;
  emit(a.out.json_path, doc.dump(2) + "\n");
  emit(a.out.csv_path, csv.str());
  return pass ? kExitOk : kExitVerifyFailed;
}

// --------------------------------------------------------------- estimate

struct EstimateArgs {
  std::string group;
  std::string parameter;
  std::size_t n = 0;
  std::size_t radius = 64;
  std::size_t trials = 2000;
  std::size_t samples = 2000;
  std::size_t bootstrap = 400;
  double p_min = 0.0, p_max = 1.0, p_step = 0.01;
  std::uint64_t seed = 1;
  std::string strategy = "balls";
  bool ball_entropy = false;
  Output out;
};

const std::vector<std::string> kParameters{"rho", "pc-site", "pc-bond", "entropy", "speed", "mu", "cheeger", "growth"};

std::size_t default_n(const std::string& parameter) {
  if (parameter == "rho") return 24;
  if (parameter == "entropy") return 50;
  if (parameter == "speed") return 100;
  if (parameter == "mu") return 12;
  return 8;
}

std::vector<double> grid(const EstimateArgs& a) {
  if (a.p_step <= 0 || a.p_max < a.p_min) throw std::invalid_argument("bad p grid");
  std::vector<double> g;
  auto steps = static_cast<std::size_t>(std::floor((a.p_max - a.p_min) / a.p_step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) g.push_back(a.p_min + static_cast<double>(i) * a.p_step);
  return g;
}

grig::EstimateReport estimate_one(const grig::MarkedGroup& g, const EstimateArgs& a, std::string* csv) {
  std::size_t n = a.n ? a.n : default_n(a.parameter);
  std::ostringstream table;
  grig::EstimateReport r;
  if (a.parameter == "rho") {
    r = grig::spectral_radius(g, n);
    table << "n,value,normalized_value\n";
    const auto& c = r.series["cogrowth"];
    const auto& lb = r.series["lower_bound"];
    for (std::size_t i = 0; i < c.size(); ++i)
      table << i << ',' << c[i].get<std::string>() << ',' << (lb[i].is_null() ? "" : fmt(lb[i].get<double>())) << '\n';
  } else if (a.parameter == "pc-site" || a.parameter == "pc-bond") {
    grig::PercolationOptions o;
    o.mode = a.parameter == "pc-site" ? grig::PercolationMode::site : grig::PercolationMode::bond;
    o.radius = a.radius;
    o.trials = a.trials;
    o.seed = a.seed;
    o.bootstrap = a.bootstrap;
    o.p_grid = grid(a);
    auto res = grig::percolation(g, o);
    grig::write_theta_csv(table, res.curve);
    r = std::move(res.report);
  } else if (a.parameter == "entropy") {
    r = grig::entropy(g, n, !a.ball_entropy);
    table << "n,H,H_over_n\n";
    const auto& H = r.series["H"];
    const auto& Hn = r.series["H_over_n"];
    for (std::size_t i = 0; i < H.size(); ++i)
      table << i << ',' << fmt(H[i].get<double>()) << ',' << (Hn[i].is_null() ? "" : fmt(Hn[i].get<double>())) << '\n';
  } else if (a.parameter == "speed") {
    r = grig::speed(g, n, a.samples, a.seed);
    table << "n,speed,ci_lo,ci_hi\n" << n << ',' << fmt(r.estimate) << ',' << fmt(r.ci->first) << ','
          << fmt(r.ci->second) << '\n';
  } else if (a.parameter == "mu") {
    r = grig::connective_constant(g, n);
    table << "n,value,normalized_value\n";
    const auto& s = r.series["saw"];
    const auto& ub = r.series["upper_bound"];
    for (std::size_t i = 0; i < s.size(); ++i)
      table << i << ',' << s[i].get<std::string>() << ',' << (ub[i].is_null() ? "" : fmt(ub[i].get<double>())) << '\n';
  } else if (a.parameter == "cheeger") {
    if (a.strategy != "balls" && a.strategy != "greedy") throw std::invalid_argument("strategy must be balls or greedy");
    r = grig::cheeger(g, n, a.strategy == "balls" ? grig::CheegerStrategy::balls : grig::CheegerStrategy::greedy);
    table << "candidate,size,boundary,ratio,best\n";
    for (const auto& row : r.series["candidates"])
      table << row["candidate"].get<std::string>() << ',' << row["size"] << ',' << row["boundary"] << ','
            << row["ratio"].get<std::string>() << ',' << fmt(row["best"].get<double>()) << '\n';
  } else if (a.parameter == "growth") {
    r = grig::growth_rate(g, n);
    table << "n,value,normalized_value\n";
    const auto& b = r.series["ball_size"];
    const auto& l = r.series["log_b_over_nk"];
    for (std::size_t i = 0; i < b.size(); ++i)
      table << i << ',' << b[i].get<std::string>() << ',' << (l[i].is_null() ? "" : fmt(l[i].get<double>())) << '\n';
  } else {
    throw std::invalid_argument("unknown parameter '" + a.parameter + "'");
  }
  if (csv) *csv = table.str();
  return r;
}

void print_summary(const grig::EstimateReport& r) {
  std::cerr << r.parameter << " of " << r.group << ": " << fmt(r.estimate);
  if (r.certified) {
    std::cerr << "  (certified "
              << (r.certified->direction == grig::CertifiedBound::Direction::lower ? "lower" : "upper")
              << " bound " << fmt(r.certified->value) << ")";
  }
  if (r.ci) std::cerr << "  CI [" << fmt(r.ci->first) << ", " << fmt(r.ci->second) << "]";
  std::cerr << "\n";
}

int run_estimate(EstimateArgs& a) {
  auto g = grig::parse_group(a.group);
  std::string csv;
  auto r = estimate_one(*g, a, &csv);
  print_summary(r);
  emit(a.out.json_path, r.to_json(a.out.timing).dump(2) + "\n");
  emit(a.out.csv_path, csv);
  return kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepArgs {
  std::string parameter;
  std::vector<std::string> items;
  std::string omega = "(012)*";
  EstimateArgs estimate;
  Output out;
};

std::string j_text(const std::vector<std::size_t>& J) {
  std::string s = "{";
  for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
  return s + "}";
}

int run_separation_sweep(SweepArgs& a) {
  grig::OmegaWord omega = grig::OmegaWord::parse(a.omega);
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& item : a.items) sets.push_back(grig::parse_j_set(item, 64));
  std::ostringstream csv;
  csv << "J,Jp,i,success,direct_kernel_element,witness_leaf,error\n";
  nlohmann::json rows = nlohmann::json::array();
  bool all = true;
  for (const auto& J : sets) {
    for (const auto& Jp : sets) {
      if (J == Jp || !std::includes(Jp.begin(), Jp.end(), J.begin(), J.end())) continue;
      // first i in J' \ J whose witness succeeds
      nlohmann::json row{{"J", J}, {"Jp", Jp}};
      bool ok = false;
      std::string err;
      for (std::size_t i : Jp) {
        if (std::binary_search(J.begin(), J.end(), i)) continue;
        try {
          auto rep = grig::separation_witness(omega, J, Jp, i);
          row["i"] = i;
          row["report"] = rep.to_json();
          if (rep.success()) {
            ok = true;
            csv << '"' << j_text(J) << "\",\"" << j_text(Jp) << "\"," << i << ",1," << rep.direct_kernel_element
                << ",\"" << rep.witness_leaf_index << "\",\n";
            break;
          }
        } catch (const std::exception& e) {
          err = e.what();
        }
      }
      if (!ok) csv << '"' << j_text(J) << "\",\"" << j_text(Jp) << "\",,0,0,,\"" << err << "\"\n";
      row["success"] = ok;
      all = all && ok;
      rows.push_back(std::move(row));
      std::cerr << (ok ? "witness " : "NO WITNESS ") << j_text(J) << " < " << j_text(Jp) << "\n";
    }
  }
  emit(a.out.json_path, nlohmann::json{{"schema", grig::kReportSchemaVersion}, {"rows", rows}}.dump(2) + "\n");
  emit(a.out.csv_path, csv.str());
  return all ? kExitOk : kExitVerifyFailed;
}

int run_sweep(SweepArgs& a) {
  if (a.parameter == "separation") return run_separation_sweep(a);
  if (std::find(kParameters.begin(), kParameters.end(), a.parameter) == kParameters.end()) {
    throw std::invalid_argument("unknown parameter '" + a.parameter + "'");
  }
  a.estimate.parameter = a.parameter;
  std::ostringstream csv;
  csv << "group,parameter,estimate,certified,direction,ci_lo,ci_hi,error\n";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& expr : a.items) {
    try {
      auto g = grig::parse_group(expr);
      auto r = estimate_one(*g, a.estimate, nullptr);
      print_summary(r);
      csv << '"' << expr << "\"," << a.parameter << ',' << fmt(r.estimate) << ','
          << (r.certified ? fmt(r.certified->value) : "") << ','
          << (r.certified ? (r.certified->direction == grig::CertifiedBound::Direction::lower ? "lower" : "upper")
                          : "")
          << ',' << (r.ci ? fmt(r.ci->first) : "") << ',' << (r.ci ? fmt(r.ci->second) : "") << ",\n";
      auto j = r.to_json(a.out.timing);
      j["expr"] = expr;
      rows.push_back(std::move(j));
    } catch (const std::exception& e) {
      std::cerr << expr << ": " << e.what() << "\n";
      csv << '"' << expr << "\"," << a.parameter << ",,,,,,\"" << e.what() << "\"\n";
      rows.push_back({{"expr", expr}, {"error", e.what()}});
    }
  }
  emit(a.out.json_path, nlohmann::json{{"schema", grig::kReportSchemaVersion}, {"rows", rows}}.dump(2) + "\n");
  emit(a.out.csv_path.empty() ? "-" : a.out.csv_path, csv.str());
  return kExitOk;
}

// ----------------------------------------------------------------- export

struct ExportArgs {
  std::string group;
  std::size_t n = 3;
  std::string format = "edges";
  std::string path = "-";
  std::string csv_path;
  std::string json_path;
};

int run_export(ExportArgs& a) {
  auto g = grig::parse_group(a.group);
  auto ball = grig::bfs_ball(*g, a.n);
  std::ostringstream s;
  if (a.format == "edges") {
    grig::write_edge_list(s, ball, *g);
  } else if (a.format == "dot") {
    grig::write_dot(s, ball, *g);
  } else {
    throw std::invalid_argument("format must be edges or dot");
  }
  emit(a.path, s.str());
  std::ostringstream csv;
  grig::write_csv(csv, grig::growth(ball));
  emit(a.csv_path, csv.str());
  nlohmann::json vertices = nlohmann::json::array();
  for (std::size_t v = 0; v < ball.size(); ++v)
    vertices.push_back({{"index", v}, {"distance", ball.distance[v]}, {"element", g->element_json(ball.vertices[v])}});
  emit(a.json_path,
       nlohmann::json{{"schema", grig::kReportSchemaVersion}, {"group", g->name()}, {"radius", a.n}, {"vertices", vertices}}
               .dump(2) +
           "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grig: marked groups, Grigorchuk quotients and their random-walk parameters"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value file mirroring the flags (flags win)");
  std::size_t threads = 0;
  std::size_t max_vertices = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)");
  app.add_option("--max-vertices", max_vertices, "ball size budget before exiting with code 3");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "run a verification suite");
  v->add_option("suite", verify.suite, "matrix-relations | contraction | eta | product-compat | all")
      ->required()
      ->check(CLI::IsMember(grig::suite_names()));
  v->add_option("--omega", verify.omega, "omega word, (012)* or pre|period");
  v->add_option("--m", verify.options.m, "contraction levels 1..m");
  v->add_option("--k", verify.options.k, "eta words 0..k");
  v->add_option("--radius", verify.options.radius, "product-compat radius");
  add_output_flags(v, verify.out);

  EstimateArgs est;
  auto* e = app.add_subcommand("estimate", "estimate a parameter of a marked group");
  e->add_option("group", est.group, "group expression, e.g. free(2) or grig((012)*, 3)")->required();
  e->add_option("parameter", est.parameter, "rho | pc-site | pc-bond | entropy | speed | mu | cheeger | growth")
      ->required()
      ->check(CLI::IsMember(kParameters));
  auto add_estimate_flags = [](CLI::App* cmd, EstimateArgs& a) {
    cmd->add_option("--n", a.n, "length / radius (parameter dependent default)");
    cmd->add_option("--R", a.radius, "percolation ball radius");
    cmd->add_option("--trials", a.trials, "percolation trials");
    cmd->add_option("--samples", a.samples, "speed samples");
    cmd->add_option("--bootstrap", a.bootstrap, "bootstrap resamples for the p_c interval");
    cmd->add_option("--p-min", a.p_min);
    cmd->add_option("--p-max", a.p_max);
    cmd->add_option("--p-step", a.p_step);
    cmd->add_option("--seed", a.seed, "random seed");
    cmd->add_option("--strategy", a.strategy, "cheeger candidates: balls | greedy");
    cmd->add_flag("--ball-entropy", a.ball_entropy, "entropy by ball convolution even on trees");
  };
  add_estimate_flags(e, est);
  add_output_flags(e, est.out);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "one row per family member");
  s->add_option("parameter", sweep.parameter, "an estimate parameter, or 'separation'")->required();
  s->add_option("items", sweep.items, "group expressions, or J sets for 'separation'");
  s->add_option("--omega", sweep.omega, "omega for separation");
  add_estimate_flags(s, sweep.estimate);
  add_output_flags(s, sweep.out);

  ExportArgs ex;
  auto* x = app.add_subcommand("export", "export a Cayley ball");
  x->add_option("group", ex.group)->required();
  x->add_option("--n", ex.n, "radius");
  x->add_option("--format", ex.format, "edges | dot")->check(CLI::IsMember({"edges", "dot"}));
  x->add_option("--out", ex.path, "graph output path ('-' = stdout)");
  x->add_option("--csv", ex.csv_path, "growth series CSV");
  x->add_option("--json", ex.json_path, "vertex list JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    int code = app.exit(err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (threads) grig::set_default_threads(threads);
    if (max_vertices) grig::set_default_max_vertices(max_vertices);
    if (*v) return run_verify(verify);
    if (*e) return run_estimate(est);
    if (*s) return run_sweep(sweep);
    if (*x) return run_export(ex);
  } catch (const grig::ResourceError& err) {
    std::cerr << "resource limit: " << err.what() << " (achieved " << err.achieved() << ")\n";
    return kExitResource;
  } catch (const grig::ParseError& err) {
    std::cerr << "parse error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
