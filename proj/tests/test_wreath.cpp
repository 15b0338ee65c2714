#include <doctest.h>

#include "grig/errors.hpp"
#include "grig/family.hpp"
#include "grig/philox.hpp"
#include "grig/tree_wreath.hpp"
#include "oracles.hpp"

using namespace grig;

namespace {

const OmegaWord kOmega = OmegaWord::parse("(012)*");

GroupPtr trivial() { return std::make_shared<const TrivialGroup>(4); }

// Direct action of a generator on a vertex of the binary tree, read as a bit
// string from the root. At level i the letter x_i picks which of b, c, d acts
// trivially on the left subtree; the other two flip the next bit there.
void act(std::size_t gen, const OmegaWord& omega, std::vector<int>& s) {
  if (s.empty()) return;
  if (gen == 0) {
    s[0] ^= 1;
    return;
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 0) {
      bool trivial_left = gen == 3u - omega.letter_at(i + 1);
      if (!trivial_left && i + 1 < s.size()) s[i + 1] ^= 1;
      return;
    }
  }
}

std::vector<int> bits_of(std::size_t leaf, std::size_t depth) {
  std::vector<int> s(depth);
  for (std::size_t i = 0; i < depth; ++i) s[i] = static_cast<int>((leaf >> (depth - 1 - i)) & 1u);
  return s;
}

std::size_t leaf_of(const std::vector<int>& s) {
  std::size_t l = 0;
  for (int b : s) l = 2 * l + static_cast<std::size_t>(b);
  return l;
}

}  // namespace

TEST_CASE("portraits") {
  Portrait id(3);
  CHECK(id.is_identity());
  CHECK(id.node_count() == 7);
  auto perm = id.leaf_permutation();
  for (std::uint32_t l = 0; l < 8; ++l) CHECK(perm[l] == l);

  Portrait swap = Portrait::from_bit_string("1");
  CHECK(swap.depth() == 1);
  CHECK(swap.leaf_permutation() == std::vector<std::uint32_t>{1, 0});
  CHECK(swap.compose(swap).is_identity());

  PhiloxStream rng(12, 0);
  for (int t = 0; t < 200; ++t) {
    Portrait p(4), q(4);
    for (std::size_t v = 0; v < 15; ++v) {
      p.set_bit(v, rng.below(2));
      q.set_bit(v, rng.below(2));
    }
    CHECK(p.compose(p.inverse()).is_identity());
    CHECK(Portrait::from_bit_string(p.to_bit_string()) == p);
    // the leaf action of a composite is the composite of the leaf actions
    auto pq = p.compose(q).leaf_permutation();
    auto pp = p.leaf_permutation(), qp = q.leaf_permutation();
    bool ok = true;
    for (std::size_t l = 0; l < 16; ++l) ok = ok && pq[l] == pp[qp[l]];
    CHECK(ok);
  }
}

TEST_CASE("functor generators") {
  GroupPtr h = shared_matrix_h();
  for (std::uint8_t x = 0; x < 3; ++x) {
    for (GroupPtr base : {h, trivial()}) {
      auto f = apply_functor(x, base);
      for (std::size_t j = 0; j < 4; ++j) {
        Elem g = f->generator(j);
        // over the trivial group only A survives at depth 1
        CHECK(f->is_identity(g) == (base != h && j != 0));
        CHECK(f->is_identity(f->multiply(g, g)));
      }
      CHECK(f->is_identity(f->evaluate(parse_word("bcd"))));
      CHECK(f->node(f->generator(0)).swap);
    }
  }
  // x = 2: B = (1; 1, b)
  auto f2 = apply_functor(2, h);
  const auto& B = f2->node(f2->generator(1));
  CHECK_FALSE(B.swap);
  CHECK(h->is_identity(B.left));
  CHECK(B.right == h->generator(1));
  CHECK(trivial_left_generator(0) == 3);
  CHECK(trivial_left_generator(2) == 1);
  CHECK_THROWS_AS(apply_functor(0, std::make_shared<const FreeGroup>(2)), std::invalid_argument);
}

TEST_CASE("finite quotients") {
  CHECK(closure_order(*apply_functor(0, trivial())) == 2);
  CHECK(closure_order(*iterate_functor(kOmega, 1, trivial())) == 2);
  auto fx = oracle::fixture("quotient_orders.json");
  for (auto& [level, order] : fx["orders"].items()) {
    INFO("level " << level);
    CHECK(closure_order(*grigorchuk_quotient(kOmega, std::stoul(level))) == order.get<std::size_t>());
  }
  GroupPtr one = trivial();
  CHECK(iterate_functor(kOmega, 0, one) == one);
  CHECK_THROWS_AS(closure_order(*grigorchuk_quotient(kOmega, 4), 100), ResourceError);
}

TEST_CASE("portraits of G_omega,k agree with the direct tree action") {
  for (const char* o : {"(012)*", "(0)*", "1|20", "(01)*"}) {
    OmegaWord omega = OmegaWord::parse(o);
    const std::size_t depth = 5;
    GroupPtr g = grigorchuk_quotient(omega, depth);
    PhiloxStream rng(13, 0);
    for (int t = 0; t < 100; ++t) {
      Word w = oracle::random_word(rng, 30);
      auto perm = decorated_view(*g, g->evaluate(w)).portrait.leaf_permutation();
      bool ok = true;
      for (std::size_t l = 0; l < (1u << depth); ++l) {
        std::vector<int> s = bits_of(l, depth);
        // the rightmost letter acts first
        for (auto it = w.rbegin(); it != w.rend(); ++it) act(index_of(*it), omega, s);
        ok = ok && perm[l] == leaf_of(s);
      }
      INFO(o << " word " << to_string(w));
      CHECK(ok);
    }
  }
}

TEST_CASE("wreath group axioms and flat composition") {
  GroupPtr h = shared_matrix_h();
  GroupPtr f = iterate_functor(kOmega, 3, h);
  const MarkedGroup& base = leaf_group(*f);
  const auto& top = dynamic_cast<const WreathMarkedGroup&>(*f);
  PhiloxStream rng(14, 0);
  for (int t = 0; t < 100; ++t) {
    Elem x = f->evaluate(oracle::random_word(rng, 24));
    Elem y = f->evaluate(oracle::random_word(rng, 24));
    Elem z = f->evaluate(oracle::random_word(rng, 24));
    CHECK(f->multiply(f->multiply(x, y), z) == f->multiply(x, f->multiply(y, z)));
    CHECK(f->is_identity(f->multiply(x, f->inverse(x))));
    CHECK(f->multiply(f->identity(), x) == x);
    DecoratedElement dx = decorated_view(*f, x), dy = decorated_view(*f, y);
    CHECK(decorated_view(*f, f->multiply(x, y)) == compose(base, dx, dy));
    CHECK(decorated_view(*f, f->inverse(x)) == inverse(base, dx));
    CHECK(top.from_decorated(dx) == x);
  }
  CHECK(wreath_depth(*f) == 3);
  CHECK(to_json(base, identity_element(2))["leaves"].size() == 4);
}

TEST_CASE("eta evaluation at depth k") {
  GroupPtr h = shared_matrix_h();
  for (std::size_t k = 0; k <= 2; ++k) {
    Word e = eta_word(kOmega, k);
    GroupPtr above = iterate_functor(kOmega, k + 1, h);
    CHECK(above->is_identity(above->evaluate(e)));
    GroupPtr quotient = grigorchuk_quotient(kOmega, k);
    CHECK(quotient->is_identity(quotient->evaluate(e)));
    GroupPtr at = iterate_functor(kOmega, k, h);
    DecoratedElement d = decorated_view(*at, at->evaluate(e));
    CHECK(d.portrait.is_identity());
    std::size_t nontrivial = 0, where = 0;
    for (std::size_t l = 0; l < d.leaves.size(); ++l) {
      if (d.leaves[l] != 0) {
        ++nontrivial;
        where = l;
      }
    }
    CHECK(nontrivial == 1);
    CHECK(where == (std::size_t{1} << k) - 1);
  }
  // k = 0: the leaf is the relator itself, twisted
  GroupPtr hh = shared_matrix_h();
  const auto& mh = dynamic_cast<const MatrixHGroup&>(*hh);
  ProjectiveMat m = mh.matrix(hh->evaluate(eta_word(kOmega, 0)));
  CHECK_FALSE(m.is_identity());
}

TEST_CASE("ball agreement radius") {
  GroupPtr g = grigorchuk_quotient(kOmega, 3);
  CHECK(ball_agreement_radius(g, g, 5) == 5);
  CHECK(ball_agreement_radius(g, trivial(), 1) == 0);
  GroupPtr h = shared_matrix_h();
  for (std::size_t m = 1; m <= 2; ++m) {
    std::size_t n = (std::size_t{1} << m) - 1;
    CHECK(ball_agreement_radius(iterate_functor(kOmega, m, h), grigorchuk_quotient(kOmega, truncation_level(n)), n) ==
          n);
  }
  // without the ambient margin the radius-3 balls of F^2(H) and G_2 differ
  CHECK(ball_agreement_radius(iterate_functor(kOmega, 2, h), grigorchuk_quotient(kOmega, 2), 3) < 3);
}
