#include "grig/family.hpp"

#include <algorithm>
#include <stdexcept>

#include "grig/cayley.hpp"

namespace grig {

std::size_t identity_test_level(std::size_t length) {
  std::size_t m = 3;
  while (((std::size_t{1} << m) - 1) < length) ++m;
  return m;
}

std::size_t truncation_level(std::size_t radius) { return identity_test_level(2 * radius); }

// ------------------------------------------------------------------- GJSpec

void GJSpec::normalize() {
  std::sort(J.begin(), J.end());
  if (!J.empty() && J.front() == 0) throw std::invalid_argument("J must contain positive integers only");
  if (std::adjacent_find(J.begin(), J.end()) != J.end()) throw std::invalid_argument("J has repeated members");
}

nlohmann::json GJSpec::to_json() const {
  auto letters = [](const std::vector<std::uint8_t>& v) {
    std::string s;
    for (auto x : v) s.push_back(static_cast<char>('0' + x));
    return s;
  };
  return {{"omega", {{"pre", letters(omega.preperiod())}, {"period", letters(omega.period())}}},
          {"J", J},
          {"radius", radius}};
}

GJSpec GJSpec::from_json(const nlohmann::json& j) {
  GJSpec spec;
  const auto& om = j.at("omega");
  spec.omega = OmegaWord::parse(om.value("pre", std::string()) + "|" + om.at("period").get<std::string>());
  spec.J = j.value("J", std::vector<std::size_t>{});
  spec.radius = j.value("radius", std::size_t{1});
  spec.normalize();
  return spec;
}

// ------------------------------------------------------------------- build

GroupPtr shared_matrix_h() {
  static const GroupPtr h = std::make_shared<const MatrixHGroup>();
  return h;
}

GroupPtr gamma_component(const OmegaWord& omega, std::size_t i, bool in_J) {
  if (in_J) return iterate_functor(omega, i, shared_matrix_h());
  return grigorchuk_quotient(omega, i);
}

GJGroup build_GJ(const GJSpec& spec, std::optional<std::size_t> truncation) {
  GJGroup out;
  out.truncation = truncation.value_or(truncation_level(spec.radius));
  std::vector<GroupPtr> parts;
  for (std::size_t i = 1; i <= out.truncation; ++i) {
    bool in_J = std::binary_search(spec.J.begin(), spec.J.end(), i);
    parts.push_back(gamma_component(spec.omega, i, in_J));
    out.labels.push_back(in_J ? "F^" + std::to_string(i) + "(H)" : "G_" + std::to_string(i));
  }
  parts.push_back(grigorchuk_quotient(spec.omega, out.truncation));
  out.labels.push_back("tail G_" + std::to_string(out.truncation));
  out.group = product(std::move(parts));
  return out;
}

// ------------------------------------------------------- separation witness

namespace {

ComponentEvaluation evaluate_component(const MarkedGroup& g, const Word& w, std::string label, std::size_t level,
                                       bool decorated) {
  ComponentEvaluation c;
  c.label = std::move(label);
  c.level = level;
  c.decorated = decorated;
  Elem x = g.evaluate(w);
  c.trivial = g.is_identity(x);
  DecoratedElement e = decorated_view(g, x);
  c.portrait_identity = e.portrait.is_identity();
  for (std::size_t l = 0; l < e.leaves.size(); ++l)
    if (e.leaves[l] != 0) c.nontrivial_leaves.push_back(l);
  return c;
}

bool contains(const std::vector<std::size_t>& v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

nlohmann::json SeparationReport::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components) {
    comps.push_back({{"label", c.label},
                     {"level", c.level},
                     {"decorated", c.decorated},
                     {"trivial", c.trivial},
                     {"portrait_identity", c.portrait_identity},
                     {"nontrivial_leaves", c.nontrivial_leaves}});
  }
  return {{"omega", omega.to_string()},
          {"J", J},
          {"Jp", Jp},
          {"i", i},
          {"word_length", word_length},
          {"tail_level", tail_level},
          {"components", std::move(comps)},
          {"trivial_above", trivial_above},
          {"nontrivial_at_i", nontrivial_at_i},
          {"direct_kernel_element", direct_kernel_element},
          {"witness_leaf_index", witness_leaf_index},
          {"witness_leaf", witness_leaf},
          {"success", success()}};
}

SeparationReport separation_witness(const OmegaWord& omega, std::vector<std::size_t> J, std::vector<std::size_t> Jp,
                                    std::size_t i) {
  std::sort(J.begin(), J.end());
  std::sort(Jp.begin(), Jp.end());
  if (!std::includes(Jp.begin(), Jp.end(), J.begin(), J.end())) {
    throw std::invalid_argument("separation_witness: J is not contained in J'");
  }
  if (!contains(Jp, i) || contains(J, i)) throw std::invalid_argument("separation_witness: i must lie in J' \\ J");

  SeparationReport r;
  r.omega = omega;
  r.J = J;
  r.Jp = Jp;
  r.i = i;
  Word w = eta_word(omega, i);
  r.word_length = w.size();
  r.tail_level = identity_test_level(w.size());

  std::size_t top = std::max(Jp.back(), i + 1);
  r.trivial_above = true;
  r.direct_kernel_element = true;
  for (std::size_t j = 1; j <= top; ++j) {
    bool in_Jp = contains(Jp, j);
    GroupPtr g = gamma_component(omega, j, in_Jp);
    auto c = evaluate_component(*g, w, in_Jp ? "F^" + std::to_string(j) + "(H)" : "G_" + std::to_string(j), j, in_Jp);
    if ((j > i || !in_Jp) && !c.trivial) r.trivial_above = false;
    if (j == i) {
      r.nontrivial_at_i = !c.trivial && c.portrait_identity && c.nontrivial_leaves.size() == 1;
      if (!c.nontrivial_leaves.empty()) {
        r.witness_leaf_index = c.nontrivial_leaves.front();
        DecoratedElement e = evaluate(*g, w);
        r.witness_leaf = leaf_group(*g).element_json(e.leaves[r.witness_leaf_index]);
      }
    }
    // Γ_{j,J} differs from Γ_{j,J'} only in whether j is decorated
    if (contains(J, j)) {
      if (!c.trivial) r.direct_kernel_element = false;
    } else if (in_Jp) {
      GroupPtr q = gamma_component(omega, j, false);
      if (!q->is_identity(q->evaluate(w))) r.direct_kernel_element = false;
    } else if (!c.trivial) {
      r.direct_kernel_element = false;
    }
    r.components.push_back(std::move(c));
  }
  GroupPtr tail = grigorchuk_quotient(omega, r.tail_level);
  auto c = evaluate_component(*tail, w, "tail G_" + std::to_string(r.tail_level), r.tail_level, false);
  if (!c.trivial) {
    r.trivial_above = false;
    r.direct_kernel_element = false;
  }
  r.components.push_back(std::move(c));
  return r;
}

// ---------------------------------------------------------- kernel section

bool in_kernel_section(const ProductGroup& gamma, Elem x) {
  const auto& parts = gamma.parts(x);
  if (parts.back() != 0) return false;
  return std::any_of(parts.begin(), parts.end() - 1, [](Elem p) { return p != 0; });
}

std::vector<Elem> finite_kernel_section(const ProductGroup& gamma, std::size_t n) {
  CayleyBall ball = bfs_ball(gamma, n);
  std::vector<Elem> out;
  for (Elem x : ball.vertices)
    if (in_kernel_section(gamma, x)) out.push_back(x);
  return out;
}

}  // namespace grig
