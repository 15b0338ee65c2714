#include "grig/verify.hpp"

#include <chrono>
#include <stdexcept>

#include "grig/family.hpp"
#include "grig/matrix_h.hpp"
#include "grig/philox.hpp"
#include "grig/tree_wreath.hpp"

namespace grig {

namespace {

using Clock = std::chrono::steady_clock;

ProjectiveMat integer_matrix(long a, long b, long c, long d) {
  return ProjectiveMat({GaussianDyadic::integer(a), GaussianDyadic::integer(b), GaussianDyadic::integer(c),
                        GaussianDyadic::integer(d)});
}

void finish(SuiteReport& r, Clock::time_point t0) {
  r.runtime_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) list.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"suite", suite}, {"pass", pass()}, {"checks", std::move(list)}};
}

SuiteReport verify_matrix_relations() {
  auto t0 = Clock::now();
  SuiteReport r{"matrix-relations", {}, 0.0};
  HGroup h = generator_matrices();
  for (const auto& rel : verify_relations(h)) r.checks.push_back({rel.relation, rel.holds, ""});

  ProjectiveMat ad4 = word_to_matrix(h, parse_word("adadadad"));
  r.checks.push_back({"(ad)^4 = ((1,-1),(0,1))", ad4 == integer_matrix(1, -1, 0, 1), ad4.to_string()});

  ProjectiveMat hm = word_to_matrix(h, base_relator());
  r.checks.push_back({"r = h = ((-1,2),(2,-5))", hm == integer_matrix(-1, 2, 2, -5), hm.to_string()});

  ProjectiveMat ad = word_to_matrix(h, parse_word("ad"));
  ProjectiveMat power = ProjectiveMat::identity();
  bool infinite = true;
  for (int m = 1; m <= 64; ++m) {
    power = mat_mul(power, ad);
    if (power.is_identity()) infinite = false;
  }
  r.checks.push_back({"(ad)^m != 1 for 1 <= m <= 64", infinite, ""});
  r.checks.push_back({"c and ad are real", word_to_matrix(h, parse_word("c")).is_real() && ad.is_real(), ""});
  finish(r, t0);
  return r;
}

SuiteReport verify_contraction(const VerifyOptions& o) {
  auto t0 = Clock::now();
  SuiteReport r{"contraction", {}, 0.0};
  GroupPtr h = shared_matrix_h();
  for (std::size_t m = 1; m <= o.m; ++m) {
    std::size_t n = (std::size_t{1} << m) - 1;
    std::size_t M = truncation_level(n);
    std::size_t got = ball_agreement_radius(iterate_functor(o.omega, m, h), grigorchuk_quotient(o.omega, M), n);
    r.checks.push_back({"F^" + std::to_string(m) + "(H) vs G_" + std::to_string(M) + " to radius " + std::to_string(n),
                        got == n, "agreement radius " + std::to_string(got)});
  }
  // Convergence: agreement with G_omega at a fixed radius grows with the level.
  std::size_t n = (std::size_t{1} << o.m) - 1;
  GroupPtr tail = grigorchuk_quotient(o.omega, truncation_level(n));
  std::size_t previous = 0;
  bool monotone = true;
  std::string trace;
  for (std::size_t i = 0; i <= o.m; ++i) {
    std::size_t got = ball_agreement_radius(iterate_functor(o.omega, i, h), tail, n);
    if (got < previous) monotone = false;
    previous = got;
    trace += (i ? " " : "") + std::to_string(got);
  }
  r.checks.push_back({"agreement radius nondecreasing in the level", monotone, trace});
  finish(r, t0);
  return r;
}

SuiteReport verify_eta(const VerifyOptions& o) {
  auto t0 = Clock::now();
  SuiteReport r{"eta", {}, 0.0};
  GroupPtr h = shared_matrix_h();
  for (std::size_t k = 0; k <= o.k; ++k) {
    Word w = eta_word(o.omega, k);
    std::string tag = "k=" + std::to_string(k) + ": ";
    std::size_t bound = std::size_t{64} << k;
    r.checks.push_back({tag + "length <= 64 * 2^k", w.size() <= bound, "length " + std::to_string(w.size())});

    GroupPtr above = iterate_functor(o.omega, k + 1, h);
    r.checks.push_back({tag + "trivial in F^{k+1}(H)", above->is_identity(above->evaluate(w)), ""});

    GroupPtr quotient = grigorchuk_quotient(o.omega, k);
    r.checks.push_back({tag + "trivial in G_{omega,k}", quotient->is_identity(quotient->evaluate(w)), ""});

    GroupPtr at = iterate_functor(o.omega, k, h);
    Elem x = at->evaluate(w);
    DecoratedElement e = decorated_view(*at, x);
    std::size_t nontrivial = 0;
    for (Elem leaf : e.leaves) nontrivial += leaf != 0;
    bool ok = !at->is_identity(x) && e.portrait.is_identity() && nontrivial == 1;
    r.checks.push_back({tag + "nontrivial identity-portrait element of F^k(H)", ok,
                        std::to_string(nontrivial) + " nontrivial leaf(s)"});
  }
  finish(r, t0);
  return r;
}

SuiteReport verify_product_compat(const VerifyOptions& o) {
  auto t0 = Clock::now();
  SuiteReport r{"product-compat", {}, 0.0};
  GroupPtr h = shared_matrix_h();
  GroupPtr g2 = grigorchuk_quotient(o.omega.shifted(1), 2);
  for (std::uint8_t x = 0; x < 3; ++x) {
    GroupPtr left = apply_functor(x, product({h, g2}));
    GroupPtr right = product({apply_functor(x, h), apply_functor(x, g2)});
    std::size_t got = ball_agreement_radius(left, right, o.radius);
    r.checks.push_back({"F_" + std::to_string(x) + "(H x G) = F_" + std::to_string(x) + "(H) x F_" +
                            std::to_string(x) + "(G) to radius " + std::to_string(o.radius),
                        got == o.radius, "agreement radius " + std::to_string(got)});
  }
  // Functoriality of H -> 1: evaluating then forgetting the decorations gives
  // the same portrait as evaluating in F_omega^k(1).
  const std::size_t depth = 3;
  GroupPtr decorated = iterate_functor(o.omega, depth, h);
  GroupPtr bare = grigorchuk_quotient(o.omega, depth);
  PhiloxStream rng(2024, 0);
  bool same = true;
  for (int trial = 0; trial < 200 && same; ++trial) {
    Word w;
    std::size_t len = 1 + rng.below(40);
    for (std::size_t i = 0; i < len; ++i) w.push_back(static_cast<Gen>(rng.below(4)));
    same = decorated_view(*decorated, decorated->evaluate(w)).portrait ==
           decorated_view(*bare, bare->evaluate(w)).portrait;
  }
  r.checks.push_back({"F^3(H) -> F^3(1) commutes with evaluation on 200 random words", same, ""});
  finish(r, t0);
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"matrix-relations", "contraction", "eta", "product-compat", "all"};
  return names;
}

std::vector<SuiteReport> run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "matrix-relations") return {verify_matrix_relations()};
  if (name == "contraction") return {verify_contraction(options)};
  if (name == "eta") return {verify_eta(options)};
  if (name == "product-compat") return {verify_product_compat(options)};
  if (name == "all") {
    return {verify_matrix_relations(), verify_contraction(options), verify_eta(options),
            verify_product_compat(options)};
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace grig
