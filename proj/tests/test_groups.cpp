#include <doctest.h>

#include "grig/family.hpp"
#include "grig/group_expr.hpp"
#include "grig/philox.hpp"
#include "grig/tree_wreath.hpp"
#include "oracles.hpp"

using namespace grig;

namespace {

void check_axioms(const MarkedGroup& g, std::uint64_t seed) {
  PhiloxStream rng(seed, 0);
  auto random_elem = [&] {
    Elem x = g.identity();
    std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) x = g.multiply(x, g.generator(rng.below(static_cast<std::uint32_t>(g.rank()))));
    return x;
  };
  for (int t = 0; t < 100; ++t) {
    Elem x = random_elem(), y = random_elem(), z = random_elem();
    CHECK(g.multiply(g.multiply(x, y), z) == g.multiply(x, g.multiply(y, z)));
    CHECK(g.is_identity(g.multiply(x, g.inverse(x))));
    CHECK(g.multiply(x, g.identity()) == x);
    for (std::size_t j = 0; j < g.rank(); ++j) CHECK(g.step(x, j) == g.multiply(x, g.generator(j)));
  }
}

}  // namespace

TEST_CASE("group axioms for every kind") {
  check_axioms(FreeGroup(2), 1);
  check_axioms(GridGroup(2), 2);
  check_axioms(CycleGroup(7), 3);
  check_axioms(GammaFreeGroup(), 4);
  check_axioms(MatrixHGroup(), 5);
  check_axioms(*parse_group("product(grig((012)*, 3), gamma_free())"), 6);
  check_axioms(TrivialGroup(4), 7);
}

TEST_CASE("basic groups") {
  FreeGroup f(2);
  CHECK(f.rank() == 4);
  CHECK(f.is_identity(f.multiply(f.generator(0), f.inverse(f.generator(0)))));
  CHECK(f.word_length(f.multiply(f.generator(0), f.generator(2))) == 2u);
  CHECK(f.cayley_graph_is_tree());

  GridGroup z2(2);
  Elem p = z2.from_coords({3, -2});
  CHECK(z2.coords(p) == std::vector<std::int64_t>{3, -2});
  CHECK(z2.word_length(p) == 5u);
  CHECK(z2.multiply(p, z2.generator(0)) == z2.multiply(z2.generator(0), p));

  CycleGroup c(5);
  Elem x = c.identity();
  for (int i = 0; i < 5; ++i) x = c.multiply(x, c.generator(0));
  CHECK(c.is_identity(x));
  CHECK(c.word_length(c.generator(1)) == 1u);

  CHECK_THROWS_AS(FreeGroup(0), std::invalid_argument);
  CHECK_THROWS_AS(CycleGroup(0), std::invalid_argument);
}

TEST_CASE("free Grigorchuk group matches reduce") {
  GammaFreeGroup g;
  PhiloxStream rng(15, 0);
  for (int t = 0; t < 300; ++t) {
    Word w = oracle::random_word(rng, 30);
    Elem x = g.evaluate(w);
    CHECK(g.normal_form(x) == reduce(w));
    CHECK(g.is_identity(x) == reduce(w).empty());
  }
}

TEST_CASE("evaluate on matrix_h agrees with word_to_matrix") {
  MatrixHGroup g;
  PhiloxStream rng(16, 0);
  for (int t = 0; t < 100; ++t) {
    Word w = oracle::random_word(rng, 20);
    CHECK(g.matrix(g.evaluate(w)) == word_to_matrix(w));
  }
  CHECK_THROWS_AS(FreeGroup(3).evaluate(parse_word("ab")), std::invalid_argument);
}

TEST_CASE("products are componentwise") {
  auto p = product({std::make_shared<const CycleGroup>(2), std::make_shared<const CycleGroup>(3)});
  const auto& pg = dynamic_cast<const ProductGroup&>(*p);
  Elem x = p->identity();
  std::size_t order = 0;
  do {
    x = p->multiply(x, p->generator(0));
    ++order;
  } while (!p->is_identity(x));
  CHECK(order == 6);
  CHECK(pg.parts(p->generator(1)).size() == 2);
  CHECK_THROWS_AS(product({std::make_shared<const FreeGroup>(1), std::make_shared<const GammaFreeGroup>()}),
                  std::invalid_argument);
}

TEST_CASE("group expression parser") {
  CHECK(parse_group("free(2)")->rank() == 4);
  CHECK(parse_group(" grid( 2 ) ")->rank() == 4);
  CHECK(parse_group("cycle(5)")->name() == "cycle(5)");
  CHECK(parse_group("gamma_free()")->rank() == 4);
  CHECK(parse_group("matrix_h()")->rank() == 4);
  CHECK(wreath_depth(*parse_group("grig((012)*, 3)")) == 3);
  CHECK(wreath_depth(*parse_group("grig(1|20, 2)")) == 2);
  CHECK(wreath_depth(*parse_group("functor((012)*, 2, matrix_h())")) == 2);
  CHECK(parse_group("product(free(2), gamma_free())")->rank() == 4);
  auto gj = parse_group("gj((012)*, {1,3}, 8)");
  CHECK(dynamic_cast<const ProductGroup&>(*gj).components().size() == truncation_level(8) + 1);
  CHECK(parse_group("trivial()")->rank() == 4);
}

TEST_CASE("parser errors carry the column") {
  auto column_of = [](const char* text) -> std::size_t {
    try {
      parse_group(text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 999;
  };
  CHECK(column_of("foo(2)") == 0);
  CHECK(column_of("free(2") == 6);
  CHECK(column_of("free(x)") == 5);
  CHECK(column_of("free(0)") == 5);
  CHECK(column_of("free(2) extra") == 8);
  CHECK(column_of("grig((013)*, 2)") == 5);
  CHECK(column_of("product(free(2), foo())") == 17);
  CHECK(column_of("gj((012)*, {0}, 4)") == 12);
  CHECK(column_of("product(free(1), free(2))") == 0);  // rank mismatch reported at the call
  try {
    parse_group("free(2");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("column 7:", 0) == 0);
  }
}

TEST_CASE("J expressions") {
  CHECK(parse_j_set("{}", 10).empty());
  CHECK(parse_j_set("{3,1}", 10) == std::vector<std::size_t>{1, 3});
  CHECK(parse_j_set("geom(1,2)", 10) == std::vector<std::size_t>{1, 2, 4, 8});
  CHECK(parse_j_set("geom(3,3) + {2}", 30) == std::vector<std::size_t>{2, 3, 9, 27});
  CHECK(parse_j_set("{1,50}", 10) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(parse_j_set("geom(0,2)", 10), ParseError);
  CHECK_THROWS_AS(parse_j_set("geom(1,1)", 10), ParseError);
  CHECK_THROWS_AS(parse_j_set("{1,", 10), ParseError);
  CHECK_THROWS_AS(parse_j_set("[1]", 10), ParseError);
}
