#pragma once

// Marked groups: a group together with an ordered generating list. Elements
// are canonical 32-bit handles owned by the group that produced them, so
// element equality is handle equality and handles hash trivially.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "grig/interner.hpp"
#include "grig/matrix_h.hpp"
#include "grig/word.hpp"

namespace grig {

using Elem = std::uint32_t;
using GenIndex = std::uint8_t;
using GenWord = std::vector<GenIndex>;

GenWord to_gen_word(const Word& w);

class MarkedGroup {
 public:
  virtual ~MarkedGroup() = default;

  virtual std::size_t rank() const = 0;
  virtual std::string name() const = 0;
  virtual std::string generator_label(std::size_t j) const;

  /// Handle 0 is the identity in every group.
  Elem identity() const { return 0; }
  bool is_identity(Elem x) const { return x == 0; }

  virtual Elem generator(std::size_t j) const = 0;
  virtual Elem multiply(Elem x, Elem y) const = 0;
  virtual Elem inverse(Elem x) const = 0;

  /// x * s_j; groups override this when right multiplication by a generator
  /// has a cheaper path than a general product.
  virtual Elem step(Elem x, std::size_t j) const { return multiply(x, generator(j)); }

  virtual nlohmann::json element_json(Elem x) const = 0;

  /// Exact word length when the group knows it in closed form.
  virtual std::optional<std::size_t> word_length(Elem) const { return std::nullopt; }

  /// True when the Cayley graph is the rank()-regular tree.
  virtual bool cayley_graph_is_tree() const { return false; }

  /// Number of distinct elements materialized so far.
  virtual std::size_t interned_count() const = 0;

  Elem evaluate(std::span<const GenIndex> word) const;
  /// Requires rank() == 4 (generators a, b, c, d in that order).
  Elem evaluate(const Word& w) const;
};

using GroupPtr = std::shared_ptr<const MarkedGroup>;

/// The trivial group with k generators, all equal to the identity.
class TrivialGroup final : public MarkedGroup {
 public:
  explicit TrivialGroup(std::size_t k = 4) : k_(k) {}
  std::size_t rank() const override { return k_; }
  std::string name() const override { return "trivial"; }
  Elem generator(std::size_t) const override { return 0; }
  Elem multiply(Elem, Elem) const override { return 0; }
  Elem inverse(Elem) const override { return 0; }
  nlohmann::json element_json(Elem) const override { return "e"; }
  std::optional<std::size_t> word_length(Elem) const override { return 0; }
  std::size_t interned_count() const override { return 1; }

 private:
  std::size_t k_;
};

/// Free group of the given rank with generators x1, X1, x2, X2, ... where
/// Xi is the formal inverse of xi (so k = 2 * rank).
class FreeGroup final : public MarkedGroup {
 public:
  explicit FreeGroup(std::size_t rank);
  std::size_t rank() const override { return 2 * rank_; }
  std::string name() const override;
  std::string generator_label(std::size_t j) const override;
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  Elem step(Elem x, std::size_t j) const override;
  nlohmann::json element_json(Elem x) const override;
  std::optional<std::size_t> word_length(Elem x) const override { return table_.at(x).size(); }
  bool cayley_graph_is_tree() const override { return true; }
  std::size_t interned_count() const override { return table_.size(); }

 private:
  // Reduced words; letter j is generator index j, inverse of j is j ^ 1.
  std::size_t rank_;
  mutable Interner<std::string> table_;
  std::vector<Elem> gens_;
};

/// Z^dim with generators +e1, -e1, +e2, -e2, ...
class GridGroup final : public MarkedGroup {
 public:
  explicit GridGroup(std::size_t dim);
  std::size_t rank() const override { return 2 * dim_; }
  std::string name() const override { return "grid(" + std::to_string(dim_) + ")"; }
  std::string generator_label(std::size_t j) const override;
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  nlohmann::json element_json(Elem x) const override;
  std::optional<std::size_t> word_length(Elem x) const override;
  bool cayley_graph_is_tree() const override { return dim_ == 1; }
  std::size_t interned_count() const override { return table_.size(); }

  Elem from_coords(std::vector<std::int64_t> v) const;
  const std::vector<std::int64_t>& coords(Elem x) const { return table_.at(x); }

 private:
  struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const;
  };
  std::size_t dim_;
  mutable Interner<std::vector<std::int64_t>, VecHash> table_;
  std::vector<Elem> gens_;
};

/// Z/n with generators +1, -1.
class CycleGroup final : public MarkedGroup {
 public:
  explicit CycleGroup(std::uint64_t n);
  std::size_t rank() const override { return 2; }
  std::string name() const override { return "cycle(" + std::to_string(n_) + ")"; }
  std::string generator_label(std::size_t j) const override { return j == 0 ? "+1" : "-1"; }
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  nlohmann::json element_json(Elem x) const override { return table_.at(x); }
  std::optional<std::size_t> word_length(Elem x) const override;
  std::size_t interned_count() const override { return table_.size(); }

 private:
  std::uint64_t n_;
  mutable Interner<std::uint64_t> table_;
  std::vector<Elem> gens_;
};

/// The free Grigorchuk group Z2 * (Z2 x Z2) on a, b, c, d; elements are
/// normal-form words.
class GammaFreeGroup final : public MarkedGroup {
 public:
  GammaFreeGroup();
  std::size_t rank() const override { return 4; }
  std::string name() const override { return "gamma_free"; }
  std::string generator_label(std::size_t j) const override { return std::string(1, static_cast<char>('a' + j)); }
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  nlohmann::json element_json(Elem x) const override;
  std::optional<std::size_t> word_length(Elem x) const override { return table_.at(x).size(); }
  std::size_t interned_count() const override { return table_.size(); }

  Word normal_form(Elem x) const;

 private:
  mutable Interner<std::string> table_;
  std::vector<Elem> gens_;
};

/// The matrix group H = <a,b,c,d> inside PSL(2, Z[i,1/2]).
class MatrixHGroup final : public MarkedGroup {
 public:
  MatrixHGroup();
  explicit MatrixHGroup(HGroup generators);
  std::size_t rank() const override { return 4; }
  std::string name() const override { return "matrix_h"; }
  std::string generator_label(std::size_t j) const override { return std::string(1, static_cast<char>('a' + j)); }
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  nlohmann::json element_json(Elem x) const override { return table_.at(x).to_json(); }
  std::size_t interned_count() const override { return table_.size(); }

  const ProjectiveMat& matrix(Elem x) const { return table_.at(x); }
  Elem from_matrix(ProjectiveMat m) const { return table_.intern(std::move(m)); }

 private:
  mutable Interner<ProjectiveMat, ProjectiveMatHash> table_;
  std::vector<Elem> gens_;
};

/// Diagonal product of marked groups with equal rank: element j of the
/// generating list is the tuple of the components' j-th generators.
class ProductGroup final : public MarkedGroup {
 public:
  /// Throws std::invalid_argument on an empty list or mismatched ranks.
  explicit ProductGroup(std::vector<GroupPtr> components);

  std::size_t rank() const override { return k_; }
  std::string name() const override;
  std::string generator_label(std::size_t j) const override { return components_.front()->generator_label(j); }
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  Elem step(Elem x, std::size_t j) const override;
  nlohmann::json element_json(Elem x) const override;
  std::size_t interned_count() const override { return table_.size(); }

  const std::vector<GroupPtr>& components() const { return components_; }
  const std::vector<Elem>& parts(Elem x) const { return table_.at(x); }
  Elem from_parts(std::vector<Elem> parts) const;

 private:
  struct TupleHash {
    std::size_t operator()(const std::vector<Elem>& v) const;
  };
  std::vector<GroupPtr> components_;
  std::size_t k_;
  mutable Interner<std::vector<Elem>, TupleHash> table_;
  std::vector<Elem> gens_;
};

std::shared_ptr<const ProductGroup> product(std::vector<GroupPtr> groups);

}  // namespace grig
