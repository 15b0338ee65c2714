#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grig/cayley.hpp"
#include "grig/group_expr.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("grig_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = std::string(GRIG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("verify") {
  fs::path out = scratch() / "verify.json";
  CHECK(run("verify matrix-relations --json " + out.string()) == 0);
  auto j = read_json(out);
  CHECK(j["pass"] == true);
  CHECK(j["suites"][0]["suite"] == "matrix-relations");
  CHECK(run("verify eta --k 2") == 0);
  CHECK(run("verify contraction --m 2") == 0);
  CHECK(run("verify nonsense") == 2);
  CHECK(run("") == 2);
}

TEST_CASE("estimate and exit codes") {
  CHECK(run("estimate 'foo(2)' rho") == 2);
  CHECK(run("estimate 'free(2' rho") == 2);
  CHECK(run("estimate 'free(2)' nonsense") == 2);
  CHECK(run("--max-vertices 100 estimate 'free(2)' growth --n 8") == 3);

  fs::path out = scratch() / "rho.json";
  fs::path csv = scratch() / "rho.csv";
  CHECK(run("estimate 'free(2)' rho --n 12 --json " + out.string() + " --csv " + csv.string()) == 0);
  auto j = read_json(out);
  CHECK(j["parameter"] == "rho");
  CHECK(j["certified"]["direction"] == "lower");
  CHECK_FALSE(j.contains("runtime_seconds"));
  CHECK(slurp(csv).rfind("n,value,normalized_value\n", 0) == 0);

  fs::path g = scratch() / "growth.json";
  CHECK(run("estimate 'gj((012)*, {1,3}, 8)' growth --n 8 --json " + g.string()) == 0);
  auto ball = grig::bfs_ball(*grig::parse_group("gj((012)*, {1,3}, 8)"), 8);
  auto sizes = read_json(g)["series"]["ball_size"];
  REQUIRE(sizes.size() == 9);
  for (std::size_t r = 0; r <= 8; ++r) CHECK(sizes[r] == std::to_string(ball.ball_size(r)));
}

TEST_CASE("runs are reproducible byte for byte") {
  fs::path a = scratch() / "a.json", b = scratch() / "b.json";
  CHECK(run("--threads 1 estimate 'grid(2)' pc-bond --R 8 --trials 200 --seed 9 --json " + a.string()) == 0);
  CHECK(run("--threads 3 estimate 'grid(2)' pc-bond --R 8 --trials 200 --seed 9 --json " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(run("estimate 'free(2)' speed --n 50 --samples 300 --seed 4 --json " + a.string()) == 0);
  CHECK(run("estimate 'free(2)' speed --n 50 --samples 300 --seed 4 --json " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("sweeps") {
  fs::path csv = scratch() / "empty.csv";
  CHECK(run("sweep separation --csv " + csv.string()) == 0);
  CHECK(line_count(slurp(csv)) == 1);

  fs::path sep = scratch() / "sep.json";
  CHECK(run("sweep separation '{}' '{1}' '{2}' '{1,2}' --json " + sep.string()) == 0);
  auto rows = read_json(sep)["rows"];
  CHECK(rows.size() == 5);  // pairs J < J' in subset order
  for (const auto& r : rows) CHECK(r["success"] == true);

  fs::path rho = scratch() / "rho_sweep.json";
  CHECK(run("sweep rho 'free(2)' 'gamma_free()' 'bogus()' --n 16 --json " + rho.string()) == 0);
  auto rr = read_json(rho)["rows"];
  REQUIRE(rr.size() == 3);
  CHECK(rr[1]["certified"]["value"].get<double>() >= rr[0]["certified"]["value"].get<double>());
  CHECK(rr[2].contains("error"));
}

TEST_CASE("export") {
  fs::path dot = scratch() / "ball.dot";
  CHECK(run("export 'cycle(6)' --n 2 --format dot --out " + dot.string()) == 0);
  CHECK(slurp(dot).rfind("digraph", 0) == 0);
  CHECK(run("export 'cycle(6)' --format svg") == 2);
}

TEST_CASE("config file with flag precedence") {
  fs::path cfg = scratch() / "grig.ini";
  std::ofstream(cfg) << "[verify]\nk=1\n";
  fs::path out = scratch() / "cfg.json";
  CHECK(run("--config " + cfg.string() + " verify eta --json " + out.string()) == 0);
  CHECK(read_json(out)["suites"][0]["checks"].size() == 8);
  CHECK(run("--config " + cfg.string() + " verify eta --k 2 --json " + out.string()) == 0);
  CHECK(read_json(out)["suites"][0]["checks"].size() == 12);
}
