#include <doctest.h>

#include <sstream>

#include "grig/cayley.hpp"
#include "grig/errors.hpp"
#include "grig/group_expr.hpp"
#include "grig/tree_wreath.hpp"
#include "oracles.hpp"

using namespace grig;

namespace {

const OmegaWord kOmega = OmegaWord::parse("(012)*");

BigInt binom(unsigned n, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt pow3(unsigned r) {
  BigInt p = 1;
  for (unsigned i = 0; i < r; ++i) p *= 3;
  return p;
}

}  // namespace

TEST_CASE("ball sizes") {
  CHECK(bfs_ball(GammaFreeGroup(), 1).size() == 5);
  CHECK(bfs_ball(*grigorchuk_quotient(kOmega, 1), 2).size() == 2);
  auto ball = bfs_ball(FreeGroup(2), 5);
  for (unsigned r = 0; r <= 5; ++r) CHECK(ball.ball_size(r) == 2 * std::stoul(pow3(r).str()) - 1);
  CHECK(ball.sphere_size(0) == 1);
  CHECK(ball.sphere_size(3) == 36);
  CHECK(bfs_ball(*grigorchuk_quotient(kOmega, 3), 20).size() == 128);
}

TEST_CASE("ball structure is consistent") {
  GroupPtr g = parse_group("grig((012)*, 4)");
  auto ball = bfs_ball(*g, 6);
  for (std::size_t v = 0; v < ball.size(); ++v) {
    CHECK(ball.index_of(ball.vertices[v]) == static_cast<std::int32_t>(v));
    for (std::size_t j = 0; j < ball.rank; ++j) {
      std::int32_t u = ball.neighbor(v, j);
      Elem expect = g->multiply(ball.vertices[v], g->generator(j));
      if (u == CayleyBall::kOutside) {
        CHECK(ball.distance[v] == 6);
        CHECK(ball.index_of(expect) == CayleyBall::kOutside);
      } else {
        CHECK(ball.vertices[static_cast<std::size_t>(u)] == expect);
        CHECK(ball.neighbor(static_cast<std::size_t>(u), ball.inverse_generator[j]) == static_cast<std::int32_t>(v));
        auto dv = static_cast<long>(ball.distance[v]), du = static_cast<long>(ball.distance[static_cast<std::size_t>(u)]);
        CHECK(std::abs(dv - du) <= 1);
      }
    }
  }
}

TEST_CASE("resource limit reports the achieved radius") {
  try {
    bfs_ball(FreeGroup(2), 10, 1000);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(e.achieved() == 5);  // |B(5)| = 485, |B(6)| = 1457
  }
}

TEST_CASE("cogrowth equals brute-force enumeration") {
  std::vector<GroupPtr> groups{parse_group("free(2)"), parse_group("gamma_free()"), parse_group("grig((012)*, 2)"),
                               parse_group("grid(2)"), parse_group("cycle(3)"), parse_group("matrix_h()")};
  for (const auto& g : groups) {
    INFO(g->name());
    auto dp = cogrowth(*g, 8);
    auto brute = oracle::brute_cogrowth(*g, 8);
    for (std::size_t n = 0; n <= 8; ++n) CHECK(dp.values[n] == brute[n]);
  }
}

TEST_CASE("cogrowth of Z is the central binomial") {
  auto c = cogrowth(GridGroup(1), 40);
  for (unsigned n = 0; n <= 20; ++n) {
    CHECK(c.values[2 * n] == binom(2 * n, n));
    if (2 * n + 1 <= 40) CHECK(c.values[2 * n + 1] == 0);
  }
}

TEST_CASE("cogrowth of the free group matches the tree recursion") {
  auto c = cogrowth(FreeGroup(2), 24);
  auto tree = oracle::tree_closed_walks(4, 24);
  for (std::size_t n = 0; n <= 24; ++n) CHECK(c.values[n] == tree[n]);
}

TEST_CASE("cogrowth past 2^126 switches to arbitrary precision") {
  // transfer over the 128 elements of G_3, in arbitrary precision
  GroupPtr g = grigorchuk_quotient(kOmega, 3);
  auto ball = bfs_ball(*g, 64);
  REQUIRE(ball.size() == 128);
  std::vector<BigInt> at(128, 0);
  at[0] = 1;
  std::vector<BigInt> closed{1};
  for (std::size_t n = 1; n <= 80; ++n) {
    std::vector<BigInt> next(128, 0);
    for (std::size_t v = 0; v < 128; ++v)
      for (std::size_t j = 0; j < 4; ++j) {
        Elem y = g->multiply(ball.vertices[v], g->generator(j));
        next[static_cast<std::size_t>(ball.index_of(y))] += at[v];
      }
    at = std::move(next);
    closed.push_back(at[0]);
  }
  auto c = cogrowth(*g, 80);
  for (std::size_t n = 0; n <= 80; ++n) CHECK(c.values[n] == closed[n]);
  CHECK(c.values[80] > BigInt(1) << 126);
}

TEST_CASE("cogrowth is supermultiplicative") {
  for (const char* expr : {"free(2)", "gamma_free()", "grid(2)", "grig((012)*, 3)"}) {
    auto c = cogrowth(*parse_group(expr), 20);
    for (std::size_t n = 0; n <= 20; ++n)
      for (std::size_t m = 0; n + m <= 20; ++m) CHECK(c.values[n + m] >= c.values[n] * c.values[m]);
  }
}

TEST_CASE("self-avoiding walks") {
  auto s = saw_count(GridGroup(2), 12);
  auto oracle_counts = oracle::z2_saw(12);
  for (std::size_t n = 0; n <= 12; ++n) CHECK(s.values[n] == oracle_counts[n]);
  CHECK(s.values[1] == 4);
  CHECK(s.values[2] == 12);
  CHECK(s.values[3] == 36);

  auto f = saw_count(FreeGroup(2), 10);
  for (unsigned n = 1; n <= 10; ++n) CHECK(f.values[n] == 4 * pow3(n - 1));

  // submultiplicativity
  for (const char* expr : {"grid(2)", "gamma_free()", "grig((012)*, 4)"}) {
    auto v = saw_count(*parse_group(expr), 12);
    for (std::size_t n = 0; n <= 12; ++n)
      for (std::size_t m = 0; n + m <= 12; ++m) CHECK(v.values[n + m] <= v.values[n] * v.values[m]);
  }
  // a finite group runs out of self-avoiding walks
  auto fin = saw_count(*grigorchuk_quotient(kOmega, 1), 4);
  CHECK(fin.values[1] == 1);
  CHECK(fin.values[2] == 0);
}

TEST_CASE("growth") {
  auto g = growth(FreeGroup(2), 6);
  for (unsigned n = 0; n <= 6; ++n) CHECK(g.values[n] == 2 * pow3(n) - 1);
  auto z = growth(GridGroup(2), 10);
  for (unsigned n = 0; n <= 10; ++n) CHECK(z.values[n] == 2 * n * n + 2 * n + 1);
}

TEST_CASE("boundary ratios and Cheeger bounds") {
  FreeGroup f(2);
  CHECK(boundary_ratio(f, {f.identity()}) == Rational(1));
  auto pts = cheeger_upper(f, CheegerStrategy::balls, 6);
  REQUIRE(pts.size() == 7);
  for (unsigned r = 0; r <= 6; ++r) {
    std::int64_t p = std::stoll(pow3(r).str());
    CHECK(pts[r].ratio == Rational(p, 2 * p - 1));
    if (r > 0) CHECK(pts[r].ratio < pts[r - 1].ratio);
    CHECK(pts[r].ratio > Rational(1, 2));
  }

  GridGroup z(2);
  for (std::int64_t s : {1, 2, 8, 32}) {
    std::vector<Elem> square;
    for (std::int64_t x = 0; x < s; ++x)
      for (std::int64_t y = 0; y < s; ++y) square.push_back(z.from_coords({x, y}));
    CHECK(boundary_ratio(z, square) == Rational(1, s));
  }

  auto greedy = cheeger_upper(GridGroup(2), CheegerStrategy::greedy, 6);
  auto balls = cheeger_upper(GridGroup(2), CheegerStrategy::balls, 6);
  CHECK(greedy.back().best <= balls.back().best);
}

TEST_CASE("exports") {
  CycleGroup c(4);
  auto ball = bfs_ball(c, 2);
  std::ostringstream edges, dot, csv;
  write_edge_list(edges, ball, c);
  write_dot(dot, ball, c);
  write_csv(csv, growth(ball));
  CHECK(dot.str().rfind("digraph", 0) == 0);
  CHECK(csv.str().rfind("n,value,normalized_value\n", 0) == 0);
  std::size_t lines = 0;
  std::string line;
  std::istringstream in(edges.str());
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') ++lines;
  CHECK(lines >= 4);
}
