#include <doctest.h>

#include "grig/cayley.hpp"
#include "grig/family.hpp"
#include "grig/tree_wreath.hpp"

using namespace grig;

namespace {

const OmegaWord kOmega = OmegaWord::parse("(012)*");

GroupPtr gj(std::vector<std::size_t> J, std::size_t radius, std::optional<std::size_t> truncation = std::nullopt) {
  GJSpec s;
  s.J = std::move(J);
  s.radius = radius;
  s.normalize();
  return build_GJ(s, truncation).group;
}

}  // namespace

TEST_CASE("truncation levels") {
  CHECK(identity_test_level(1) == 3);
  CHECK(identity_test_level(7) == 3);
  CHECK(identity_test_level(8) == 4);
  CHECK(identity_test_level(64) == 7);
  CHECK(truncation_level(1) == 3);
  CHECK(truncation_level(3) == 3);
  CHECK(truncation_level(4) == 4);
  CHECK(truncation_level(7) == 4);
  CHECK(truncation_level(8) == 5);
}

TEST_CASE("GJ specs") {
  GJSpec s;
  s.J = {3, 1};
  s.radius = 5;
  s.normalize();
  CHECK(s.J == std::vector<std::size_t>{1, 3});
  GJSpec back = GJSpec::from_json(s.to_json());
  CHECK(back.J == s.J);
  CHECK(back.radius == s.radius);
  CHECK(back.omega == s.omega);
  GJSpec bad;
  bad.J = {0};
  CHECK_THROWS_AS(bad.normalize(), std::invalid_argument);
  bad.J = {2, 2};
  CHECK_THROWS_AS(bad.normalize(), std::invalid_argument);

  GJSpec t;
  t.J = {1, 3};
  t.radius = 8;
  auto g = build_GJ(t);
  CHECK(g.truncation == truncation_level(8));
  CHECK(g.labels.front() == "F^1(H)");
  CHECK(g.labels[1] == "G_2");
  CHECK(g.labels.back() == "tail G_" + std::to_string(g.truncation));
}

TEST_CASE("G_empty agrees with G_omega") {
  for (std::size_t n : {1, 3, 7}) {
    CHECK(ball_agreement_radius(gj({}, n), grigorchuk_quotient(kOmega, truncation_level(n) + 2), n) == n);
  }
}

TEST_CASE("continuity: changes above the truncation do not show at radius n") {
  for (std::size_t n : {3, 7}) {
    std::size_t N = truncation_level(n);
    for (std::vector<std::size_t> J : {std::vector<std::size_t>{}, {1}, {1, 3}}) {
      auto Jp = J;
      Jp.push_back(N + 1);
      INFO("n=" << n);
      CHECK(ball_agreement_radius(gj(J, n), gj(Jp, n, N + 2), n) == n);
    }
  }
}

TEST_CASE("separation witnesses") {
  auto r = separation_witness(kOmega, {}, {1}, 1);
  CHECK(r.success());
  CHECK(r.nontrivial_at_i);
  CHECK(r.trivial_above);

  auto r2 = separation_witness(kOmega, {}, {2}, 2);
  CHECK(r2.success());
  // the same word dies one level up
  GroupPtr f3 = iterate_functor(kOmega, 3, shared_matrix_h());
  CHECK(f3->is_identity(f3->evaluate(eta_word(kOmega, 2))));

  auto r3 = separation_witness(kOmega, {1}, {1, 2}, 2);
  CHECK(r3.success());
  CHECK(r3.to_json()["success"] == true);

  const std::vector<std::vector<std::size_t>> subsets{{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}};
  for (const auto& J : subsets) {
    for (const auto& Jp : subsets) {
      if (J == Jp || !std::includes(Jp.begin(), Jp.end(), J.begin(), J.end())) continue;
      bool found = false;
      for (std::size_t i : Jp)
        if (!std::binary_search(J.begin(), J.end(), i)) found = found || separation_witness(kOmega, J, Jp, i).success();
      CHECK(found);
    }
  }
  CHECK_THROWS_AS(separation_witness(kOmega, {1}, {1, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(separation_witness(kOmega, {2}, {1}, 1), std::invalid_argument);
}

TEST_CASE("kernel sections") {
  GroupPtr g_empty = gj({}, 3);
  const auto& pe = dynamic_cast<const ProductGroup&>(*g_empty);
  CHECK(finite_kernel_section(pe, 4).empty());

  GroupPtr g1 = gj({1}, 64);
  const auto& p1 = dynamic_cast<const ProductGroup&>(*g1);
  Elem e = g1->evaluate(eta_word(kOmega, 1));
  CHECK(in_kernel_section(p1, e));
  CHECK_FALSE(in_kernel_section(p1, g1->generator(0)));
}
