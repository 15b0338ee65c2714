#include <doctest.h>

#include "grig/philox.hpp"
#include "grig/word.hpp"
#include "oracles.hpp"

using namespace grig;

namespace {

Word w(const char* s) { return parse_word(s); }

const std::vector<Word>& relators() {
  static const std::vector<Word> r{w("aa"), w("bb"), w("cc"), w("dd"), w("bcd")};
  return r;
}

}  // namespace

TEST_CASE("reduce: small cases") {
  CHECK(reduce(w("bcd")).empty());
  CHECK(reduce(w("aa")).empty());
  CHECK(reduce(w("bc")) == w("d"));
  CHECK(reduce(w("abab")) == w("abab"));
  CHECK(reduce(w("abba")).empty());
  CHECK(reduce(w("acdbca")) == w("aca"));  // cdbc collapses to c
  CHECK(is_reduced(w("abacad")));
  CHECK_FALSE(is_reduced(w("bc")));
  CHECK_THROWS_AS(parse_word("abx"), std::invalid_argument);
}

TEST_CASE("reduce: idempotent and a congruence on random words") {
  PhiloxStream rng(7, 0);
  for (int t = 0; t < 2000; ++t) {
    Word u = oracle::random_word(rng, 30), v = oracle::random_word(rng, 30);
    Word ru = reduce(u);
    CHECK(reduce(ru) == ru);
    CHECK(is_reduced(ru));
    CHECK(reduce(concat(u, v)) == reduce(concat(ru, reduce(v))));
    CHECK(reduce(concat(u, inverse(u))).empty());
  }
}

TEST_CASE("phi twist") {
  CHECK(phi_twist(w("b"), 1) == w("c"));
  CHECK(phi_twist(w("c"), 1) == w("d"));
  CHECK(phi_twist(w("d"), 1) == w("b"));
  CHECK(phi_twist(w("a"), 1) == w("a"));
  CHECK(phi_twist(w("b"), -1) == w("d"));
  PhiloxStream rng(8, 0);
  for (int t = 0; t < 500; ++t) {
    Word u = oracle::random_word(rng, 25);
    CHECK(phi_twist(u, 0) == reduce(u));
    CHECK(phi_twist(u, 3) == reduce(u));
    CHECK(phi_twist(phi_twist(u, 1), 2) == reduce(u));
  }
}

TEST_CASE("substitutions") {
  CHECK(sigma_sub(w("a")) == w("aca"));
  CHECK(sigma_sub(w("ab")) == w("acab"));
  CHECK(tau_sub(w("d")).empty());
  CHECK(tau_sub(w("abc")) == w("c"));
  CHECK(sigma_twisted(w("b"), 1) == w("b"));
  CHECK(sigma_twisted(w("a"), 1) == w("ada"));
  PhiloxStream rng(9, 0);
  for (int t = 0; t < 200; ++t) {
    Word u = oracle::random_word(rng, 20);
    CHECK(sigma_twisted(u, 0) == sigma_sub(u));
  }
}

TEST_CASE("relations preserved by phi, sigma and tau") {
  for (const Word& r : relators()) {
    for (int x = 0; x < 3; ++x) {
      CHECK(phi_twist(r, x).empty());
      CHECK(sigma_twisted(r, x).empty());
      CHECK(tau_twisted(r, x).empty());
    }
    CHECK(sigma_sub(r).empty());
    CHECK(tau_sub(r).empty());
  }
  // congruence: equal normal forms stay equal after substitution
  PhiloxStream rng(10, 0);
  for (int t = 0; t < 500; ++t) {
    Word u = oracle::random_word(rng, 20);
    CHECK(sigma_sub(u) == sigma_sub(reduce(u)));
    CHECK(tau_sub(u) == tau_sub(reduce(u)));
  }
}

TEST_CASE("commutator and base relator") {
  CHECK(commutator(w("a"), w("b")) == w("abab"));
  CHECK(commutator(w("ab"), w("c"), CommutatorOrder::direct_first) == reduce(w("abcbac")));
  Word r = base_relator();
  CHECK_FALSE(r.empty());
  CHECK(is_reduced(r));
  CHECK(tau_sub(r).empty());
  // nested with the x y x^-1 y^-1 order: the other order does not evaluate to h
  constexpr auto direct = CommutatorOrder::direct_first;
  CHECK(r == reduce(commutator(w("c"), commutator(w("d"), commutator(w("b"), w("adadadad"), direct), direct), direct)));
  CHECK(r != reduce(commutator(w("c"), commutator(w("d"), commutator(w("b"), w("adadadad"))))));
}

TEST_CASE("omega words") {
  OmegaWord o = OmegaWord::parse("(012)*");
  CHECK(o.letter_at(1) == 0);
  CHECK(o.letter_at(2) == 1);
  CHECK(o.letter_at(4) == 0);
  CHECK(o.shifted(1).letter_at(1) == 1);
  OmegaWord p = OmegaWord::parse("2|01");
  CHECK(p.letter_at(1) == 2);
  CHECK(p.letter_at(2) == 0);
  CHECK(p.letter_at(5) == 1);
  CHECK(OmegaWord::parse(p.to_string()) == p);
  CHECK_THROWS_AS(OmegaWord::parse("(013)*"), std::invalid_argument);
  CHECK_THROWS_AS(OmegaWord::parse(""), std::invalid_argument);
}

TEST_CASE("eta words: recursion and lengths") {
  OmegaWord o = OmegaWord::parse("(012)*");
  // relator twist uses -x, matching the generator table
  CHECK(eta_word(o, 0) == phi_twist(base_relator(), -o.letter_at(1)));
  CHECK(eta_word(o, 1) == sigma_twisted(phi_twist(base_relator(), -o.letter_at(2)), -o.letter_at(1)));
  auto fx = oracle::fixture("eta_lengths.json");
  std::size_t bound = fx["length_over_2k_bound"];
  const auto& lengths = fx["lengths"];
  for (std::size_t k = 0; k < lengths.size(); ++k) {
    Word e = eta_word(o, k);
    CHECK(e.size() == lengths[k].get<std::size_t>());
    CHECK(e.size() <= bound << k);
    CHECK(is_reduced(e));
  }
}
