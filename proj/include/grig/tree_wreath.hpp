#pragma once

// The functors F_x, their iterates F^k_omega(H), the finite quotients
// G_{omega,k} = F^k_omega(1), and decorated tree automorphisms.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "grig/marked_group.hpp"
#include "grig/word.hpp"

namespace grig {

/// Swap bits of a depth-d binary tree automorphism, one per internal node,
/// stored in heap (level) order: root is node 0, children of v are 2v+1 and
/// 2v+2. Leaves are numbered left to right; bit 0 means "left".
class Portrait {
 public:
  explicit Portrait(std::size_t depth = 0);

  static Portrait from_bit_string(std::string_view bits);

  std::size_t depth() const { return depth_; }
  std::size_t node_count() const { return (std::size_t{1} << depth_) - 1; }
  std::size_t leaf_count() const { return std::size_t{1} << depth_; }

  bool bit(std::size_t node) const { return (words_[node / 64] >> (node % 64)) & 1u; }
  void set_bit(std::size_t node, bool value);

  bool is_identity() const;

  /// Image of every node of the full tree (internal nodes and leaves, heap
  /// indices 0 .. 2^{d+1}-2).
  std::vector<std::uint32_t> node_images() const;
  std::vector<std::uint32_t> leaf_permutation() const;

  /// (this * h)(v) = this(h(v)).
  Portrait compose(const Portrait& h) const;
  Portrait inverse() const;

  /// Level-order bit string, e.g. "1" + "01" + "0000".
  std::string to_bit_string() const;

  /// Root bit `swap` over the two given subtrees of equal depth.
  static Portrait join(bool swap, const Portrait& left, const Portrait& right);

  bool operator==(const Portrait&) const = default;
  std::size_t hash() const;

 private:
  std::size_t depth_;
  std::vector<std::uint64_t> words_;
};

/// Depth-d portrait with 2^d leaf decorations in a base group H.
struct DecoratedElement {
  Portrait portrait;
  std::vector<Elem> leaves;

  std::size_t depth() const { return portrait.depth(); }
  bool operator==(const DecoratedElement&) const = default;
};

DecoratedElement identity_element(std::size_t depth);

/// Group law of the iterated permutational wreath product H wr Aut(T_d):
/// portraits compose and (x*y).leaf[l] = x.leaf[y(l)] * y.leaf[l].
/// Throws std::invalid_argument on depth mismatch.
DecoratedElement compose(const MarkedGroup& base, const DecoratedElement& x, const DecoratedElement& y);
DecoratedElement inverse(const MarkedGroup& base, const DecoratedElement& x);

std::vector<std::uint32_t> leaf_permutation(const DecoratedElement& e);

/// {"portrait": "<bits>", "leaves": [...]}; leaves use the base group's
/// serialization.
nlohmann::json to_json(const MarkedGroup& base, const DecoratedElement& e);

/// F_x(K) for one letter x in {0,1,2}, realized inside K wr Z2. Elements are
/// hash-consed triples (swap; left, right) of handles in K, so identical
/// subtrees share storage all the way down.
class WreathMarkedGroup final : public MarkedGroup {
 public:
  struct Node {
    bool swap = false;
    Elem left = 0;
    Elem right = 0;
    bool operator==(const Node&) const = default;
  };

  /// Throws std::invalid_argument if `inner` is not generated by four
  /// involutions with bcd = 1, or if x > 2.
  WreathMarkedGroup(std::uint8_t x, GroupPtr inner);

  std::size_t rank() const override { return 4; }
  std::string name() const override;
  std::string generator_label(std::size_t j) const override { return std::string(1, static_cast<char>('A' + j)); }
  Elem generator(std::size_t j) const override { return gens_[j]; }
  Elem multiply(Elem x, Elem y) const override;
  Elem inverse(Elem x) const override;
  nlohmann::json element_json(Elem x) const override;
  std::size_t interned_count() const override { return table_.size(); }

  std::uint8_t letter() const { return letter_; }
  std::size_t depth() const { return depth_; }
  /// x_1 ... x_d, outermost letter first.
  std::vector<std::uint8_t> omega_prefix() const;
  const GroupPtr& inner() const { return inner_; }
  /// The innermost (non-wreath) group H.
  const MarkedGroup& base() const;
  GroupPtr base_ptr() const;

  const Node& node(Elem x) const { return table_.at(x); }
  Elem make(Node n) const { return table_.intern(n); }

  /// Flat view: portrait of depth d and 2^d handles in base().
  DecoratedElement decorated(Elem x) const;
  Elem from_decorated(const DecoratedElement& e) const;

 private:
  struct NodeHash {
    std::size_t operator()(const Node& n) const;
  };

  std::uint8_t letter_;
  GroupPtr inner_;
  std::size_t depth_;
  mutable Interner<Node, NodeHash> table_;
  std::vector<Elem> gens_;
};

/// Index (1 = b, 2 = c, 3 = d) of the generator whose left decoration in
/// F_x is trivial: d for x = 0, c for x = 1, b for x = 2.
std::size_t trivial_left_generator(std::uint8_t x);

std::shared_ptr<const WreathMarkedGroup> apply_functor(std::uint8_t x, GroupPtr base);

/// F_{x_1}(F_{x_2}(... F_{x_k}(base))). k = 0 returns `base` itself.
GroupPtr iterate_functor(const OmegaWord& omega, std::size_t k, GroupPtr base);

/// G_{omega,k} = F^k_omega(1).
GroupPtr grigorchuk_quotient(const OmegaWord& omega, std::size_t k);

/// Depth of a group built by apply_functor (0 for anything else).
std::size_t wreath_depth(const MarkedGroup& g);

/// Flat decorated view of an element; for a non-wreath group this is the
/// depth-0 element with a single leaf.
DecoratedElement decorated_view(const MarkedGroup& g, Elem x);
const MarkedGroup& leaf_group(const MarkedGroup& g);

DecoratedElement evaluate(const MarkedGroup& group, const Word& w);

/// Order of a finite group by closure under the generators. Throws
/// ResourceError once more than `limit` elements are found.
std::size_t closure_order(const MarkedGroup& g, std::size_t limit = 20'000'000);

/// Largest r <= n_max such that words of length <= r have the same equality
/// pattern in g1 and g2 (i.e. the rooted labeled balls of radius r match).
/// Computed from the balls of g1, g2 and their diagonal product: the balls
/// agree at radius r iff all three have the same size. Returns n_max when no
/// disagreement is found.
std::size_t ball_agreement_radius(const GroupPtr& g1, const GroupPtr& g2, std::size_t n_max);

}  // namespace grig
