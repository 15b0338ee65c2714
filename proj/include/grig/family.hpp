#pragma once

// The family G_J = (product over i in J of F^i(H)) x (product over i not in J
// of G_{omega,i}) x G_omega, truncated to what a radius-n ball can see.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grig/marked_group.hpp"
#include "grig/tree_wreath.hpp"
#include "grig/word.hpp"

namespace grig {

/// Smallest level m >= 3 with 2^m - 1 >= length: a word of that length is
/// trivial in G_omega iff it is trivial in G_{omega,m}.
std::size_t identity_test_level(std::size_t length);

/// N(n) = M(n): level at which radius-n balls of G_J stop depending on the
/// rest of J (and at which G_{omega,M} stands in for G_omega).
std::size_t truncation_level(std::size_t radius);

struct GJSpec {
  OmegaWord omega = OmegaWord::parse("(012)*");
  /// Sorted, distinct, positive.
  std::vector<std::size_t> J;
  std::size_t radius = 1;

  /// Throws std::invalid_argument on zero or repeated members; sorts J.
  void normalize();
  nlohmann::json to_json() const;
  static GJSpec from_json(const nlohmann::json& j);
};

struct GJGroup {
  std::shared_ptr<const ProductGroup> group;
  /// Γ_{1,J}, ..., Γ_{N,J}, then the tail G_{omega,N}.
  std::vector<std::string> labels;
  std::size_t truncation = 0;
};

/// Shared matrix group H, so every F^i(H) component decorates with the same
/// interned matrices.
GroupPtr shared_matrix_h();

/// Γ_{i,J}: F^i_omega(H) when i is in J, G_{omega,i} otherwise.
GroupPtr gamma_component(const OmegaWord& omega, std::size_t i, bool in_J);

/// Components i = 1..N plus the tail, N = truncation_level(spec.radius)
/// unless overridden.
GJGroup build_GJ(const GJSpec& spec, std::optional<std::size_t> truncation = std::nullopt);

struct ComponentEvaluation {
  std::string label;
  std::size_t level = 0;
  bool decorated = false;  // F^level(H) rather than G_{omega,level}
  bool trivial = false;
  bool portrait_identity = false;
  /// Leaves of the flat view that are not the identity.
  std::vector<std::size_t> nontrivial_leaves;
};

struct SeparationReport {
  OmegaWord omega = OmegaWord::parse("(012)*");
  std::vector<std::size_t> J, Jp;
  std::size_t i = 0;
  std::size_t word_length = 0;
  std::vector<ComponentEvaluation> components;  // components of G_{J'}, then the tail
  std::size_t tail_level = 0;
  /// Check (1): trivial in Γ_{j,J'} for all j > i and in every G_{omega,j}.
  bool trivial_above = false;
  /// Check (2): nontrivial in F^i(H), with identity portrait.
  bool nontrivial_at_i = false;
  /// Trivial in every component of G_J, so the word itself lies in the
  /// kernel of G_{J'} -> G_J.
  bool direct_kernel_element = false;
  /// The decoration on the nontrivial leaf of F^i(H) (matrix JSON).
  nlohmann::json witness_leaf;
  std::size_t witness_leaf_index = 0;

  bool success() const { return trivial_above && nontrivial_at_i; }
  nlohmann::json to_json() const;
};

/// Throws std::invalid_argument unless J ⊂ J' and i ∈ J' \ J.
SeparationReport separation_witness(const OmegaWord& omega, std::vector<std::size_t> J, std::vector<std::size_t> Jp,
                                    std::size_t i);

/// True when the last component of x is trivial and some other one is not.
bool in_kernel_section(const ProductGroup& gamma, Elem x);

/// Elements of the radius-n ball of gamma that lie in the kernel of the
/// projection onto the last component.
std::vector<Elem> finite_kernel_section(const ProductGroup& gamma, std::size_t n);

}  // namespace grig
