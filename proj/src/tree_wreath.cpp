#include "grig/tree_wreath.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "grig/cayley.hpp"
#include "grig/errors.hpp"

namespace grig {

// ------------------------------------------------------------------ Portrait

Portrait::Portrait(std::size_t depth) : depth_(depth) {
  if (depth > 30) throw std::invalid_argument("portrait depth too large");
  words_.assign((node_count() + 63) / 64, 0);
}

Portrait Portrait::from_bit_string(std::string_view bits) {
  std::size_t depth = 0;
  while (((std::size_t{1} << depth) - 1) < bits.size()) ++depth;
  if (((std::size_t{1} << depth) - 1) != bits.size()) {
    throw std::invalid_argument("portrait bit string length must be 2^d - 1");
  }
  Portrait p(depth);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1') throw std::invalid_argument("portrait bits must be 0/1");
    p.set_bit(i, bits[i] == '1');
  }
  return p;
}

void Portrait::set_bit(std::size_t node, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (node % 64);
  if (value) {
    words_[node / 64] |= mask;
  } else {
    words_[node / 64] &= ~mask;
  }
}

bool Portrait::is_identity() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::vector<std::uint32_t> Portrait::node_images() const {
  std::size_t total = 2 * leaf_count() - 1;
  std::vector<std::uint32_t> img(total);
  img[0] = 0;
  for (std::size_t v = 0; v < node_count(); ++v) {
    std::uint32_t u = img[v];
    bool b = bit(v);
    img[2 * v + 1] = 2 * u + 1 + (b ? 1 : 0);
    img[2 * v + 2] = 2 * u + 2 - (b ? 1 : 0);
  }
  return img;
}

std::vector<std::uint32_t> Portrait::leaf_permutation() const {
  auto img = node_images();
  std::size_t first = node_count();
  std::vector<std::uint32_t> perm(leaf_count());
  for (std::size_t l = 0; l < perm.size(); ++l) perm[l] = static_cast<std::uint32_t>(img[first + l] - first);
  return perm;
}

Portrait Portrait::compose(const Portrait& h) const {
  if (h.depth_ != depth_) throw std::invalid_argument("portrait depth mismatch");
  Portrait out(depth_);
  if (depth_ == 0) return out;
  auto img = h.node_images();
  for (std::size_t v = 0; v < node_count(); ++v) out.set_bit(v, h.bit(v) != bit(img[v]));
  return out;
}

Portrait Portrait::inverse() const {
  // bit_{g^-1}(v) = bit_g(g^-1(v)); walk g top-down and write at the image.
  Portrait out(depth_);
  auto img = node_images();
  for (std::size_t v = 0; v < node_count(); ++v) out.set_bit(img[v], bit(v));
  return out;
}

std::string Portrait::to_bit_string() const {
  std::string s(node_count(), '0');
  for (std::size_t v = 0; v < node_count(); ++v)
    if (bit(v)) s[v] = '1';
  return s;
}

Portrait Portrait::join(bool swap, const Portrait& left, const Portrait& right) {
  if (left.depth_ != right.depth_) throw std::invalid_argument("portrait join: depth mismatch");
  Portrait out(left.depth_ + 1);
  out.set_bit(0, swap);
  for (std::size_t level = 0; level < left.depth_; ++level) {
    std::size_t width = std::size_t{1} << level;
    std::size_t src = width - 1;
    std::size_t dst = 2 * width - 1;
    for (std::size_t i = 0; i < width; ++i) {
      out.set_bit(dst + i, left.bit(src + i));
      out.set_bit(dst + width + i, right.bit(src + i));
    }
  }
  return out;
}

std::size_t Portrait::hash() const {
  std::size_t seed = depth_;
  boost::hash_range(seed, words_.begin(), words_.end());
  return seed;
}

// ---------------------------------------------------------- DecoratedElement

DecoratedElement identity_element(std::size_t depth) {
  return {Portrait(depth), std::vector<Elem>(std::size_t{1} << depth, 0)};
}

DecoratedElement compose(const MarkedGroup& base, const DecoratedElement& x, const DecoratedElement& y) {
  if (x.depth() != y.depth()) throw std::invalid_argument("compose: depth mismatch");
  auto perm = y.portrait.leaf_permutation();
  DecoratedElement out{x.portrait.compose(y.portrait), std::vector<Elem>(y.leaves.size())};
  for (std::size_t l = 0; l < out.leaves.size(); ++l) {
    out.leaves[l] = base.multiply(x.leaves[perm[l]], y.leaves[l]);
  }
  return out;
}

DecoratedElement inverse(const MarkedGroup& base, const DecoratedElement& x) {
  auto perm = x.portrait.leaf_permutation();
  DecoratedElement out{x.portrait.inverse(), std::vector<Elem>(x.leaves.size())};
  // (x^-1).leaf[x(l)] = x.leaf[l]^-1
  for (std::size_t l = 0; l < x.leaves.size(); ++l) out.leaves[perm[l]] = base.inverse(x.leaves[l]);
  return out;
}

std::vector<std::uint32_t> leaf_permutation(const DecoratedElement& e) { return e.portrait.leaf_permutation(); }

nlohmann::json to_json(const MarkedGroup& base, const DecoratedElement& e) {
  nlohmann::json leaves = nlohmann::json::array();
  for (Elem l : e.leaves) leaves.push_back(base.element_json(l));
  return {{"portrait", e.portrait.to_bit_string()}, {"leaves", std::move(leaves)}};
}

// --------------------------------------------------------- WreathMarkedGroup

std::size_t WreathMarkedGroup::NodeHash::operator()(const Node& n) const {
  std::size_t seed = n.swap ? 1 : 0;
  boost::hash_combine(seed, n.left);
  boost::hash_combine(seed, n.right);
  return seed;
}

std::size_t trivial_left_generator(std::uint8_t x) { return 3u - x; }

namespace {

void require_grigorchuk_marking(const MarkedGroup& g) {
  if (g.rank() != 4) throw std::invalid_argument("F_x needs a 4-generated base, got " + g.name());
  for (std::size_t j = 0; j < 4; ++j) {
    if (!g.is_identity(g.multiply(g.generator(j), g.generator(j)))) {
      throw std::invalid_argument("F_x base " + g.name() + ": generator " + g.generator_label(j) +
                                  " is not an involution");
    }
  }
  if (!g.is_identity(g.multiply(g.multiply(g.generator(1), g.generator(2)), g.generator(3)))) {
    throw std::invalid_argument("F_x base " + g.name() + ": bcd != 1");
  }
}

}  // namespace

WreathMarkedGroup::WreathMarkedGroup(std::uint8_t x, GroupPtr inner) : letter_(x), inner_(std::move(inner)) {
  if (x > 2) throw std::invalid_argument("functor letter must be 0, 1 or 2");
  if (!inner_) throw std::invalid_argument("functor base is null");
  require_grigorchuk_marking(*inner_);
  depth_ = 1 + wreath_depth(*inner_);

  table_.intern(Node{false, 0, 0});
  const Elem a = inner_->generator(0);
  gens_.push_back(table_.intern(Node{true, 0, 0}));
  for (std::size_t j = 1; j < 4; ++j) {
    Elem left = (j == trivial_left_generator(x)) ? inner_->identity() : a;
    gens_.push_back(table_.intern(Node{false, left, inner_->generator(j)}));
  }
}

std::string WreathMarkedGroup::name() const {
  return "F_" + std::to_string(letter_) + "(" + inner_->name() + ")";
}

Elem WreathMarkedGroup::multiply(Elem x, Elem y) const {
  if (x == 0) return y;
  if (y == 0) return x;
  const Node g = table_.at(x);
  const Node h = table_.at(y);
  Elem gl = h.swap ? g.right : g.left;
  Elem gr = h.swap ? g.left : g.right;
  return table_.intern(Node{g.swap != h.swap, inner_->multiply(gl, h.left), inner_->multiply(gr, h.right)});
}

Elem WreathMarkedGroup::inverse(Elem x) const {
  const Node g = table_.at(x);
  Elem l = g.swap ? g.right : g.left;
  Elem r = g.swap ? g.left : g.right;
  return table_.intern(Node{g.swap, inner_->inverse(l), inner_->inverse(r)});
}

nlohmann::json WreathMarkedGroup::element_json(Elem x) const { return to_json(base(), decorated(x)); }

std::vector<std::uint8_t> WreathMarkedGroup::omega_prefix() const {
  std::vector<std::uint8_t> out{letter_};
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(inner_.get())) {
    auto rest = w->omega_prefix();
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

const MarkedGroup& WreathMarkedGroup::base() const {
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(inner_.get())) return w->base();
  return *inner_;
}

GroupPtr WreathMarkedGroup::base_ptr() const {
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(inner_.get())) return w->base_ptr();
  return inner_;
}

DecoratedElement WreathMarkedGroup::decorated(Elem x) const {
  const Node n = table_.at(x);
  DecoratedElement l = decorated_view(*inner_, n.left);
  DecoratedElement r = decorated_view(*inner_, n.right);
  DecoratedElement out{Portrait::join(n.swap, l.portrait, r.portrait), std::move(l.leaves)};
  out.leaves.insert(out.leaves.end(), r.leaves.begin(), r.leaves.end());
  return out;
}

Elem WreathMarkedGroup::from_decorated(const DecoratedElement& e) const {
  if (e.depth() != depth_) throw std::invalid_argument("from_decorated: depth mismatch");
  auto split = [&](bool right) {
    DecoratedElement sub{Portrait(depth_ - 1), {}};
    for (std::size_t level = 0; level + 1 < depth_; ++level) {
      std::size_t width = std::size_t{1} << level;
      std::size_t src = 2 * width - 1 + (right ? width : 0);
      for (std::size_t i = 0; i < width; ++i) sub.portrait.set_bit(width - 1 + i, e.portrait.bit(src + i));
    }
    std::size_t half = e.leaves.size() / 2;
    auto begin = e.leaves.begin() + static_cast<std::ptrdiff_t>(right ? half : 0);
    sub.leaves.assign(begin, begin + static_cast<std::ptrdiff_t>(half));
    return sub;
  };
  auto lower = [&](const DecoratedElement& sub) -> Elem {
    if (auto w = dynamic_cast<const WreathMarkedGroup*>(inner_.get())) return w->from_decorated(sub);
    return sub.leaves.front();
  };
  return table_.intern(Node{e.portrait.bit(0), lower(split(false)), lower(split(true))});
}

// -------------------------------------------------------------- free functions

std::shared_ptr<const WreathMarkedGroup> apply_functor(std::uint8_t x, GroupPtr base) {
  return std::make_shared<const WreathMarkedGroup>(x, std::move(base));
}

GroupPtr iterate_functor(const OmegaWord& omega, std::size_t k, GroupPtr base) {
  GroupPtr g = std::move(base);
  for (std::size_t i = k; i >= 1; --i) g = apply_functor(omega.letter_at(i), g);
  return g;
}

GroupPtr grigorchuk_quotient(const OmegaWord& omega, std::size_t k) {
  return iterate_functor(omega, k, std::make_shared<const TrivialGroup>(4));
}

std::size_t wreath_depth(const MarkedGroup& g) {
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(&g)) return w->depth();
  return 0;
}

DecoratedElement decorated_view(const MarkedGroup& g, Elem x) {
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(&g)) return w->decorated(x);
  return {Portrait(0), {x}};
}

const MarkedGroup& leaf_group(const MarkedGroup& g) {
  if (auto w = dynamic_cast<const WreathMarkedGroup*>(&g)) return w->base();
  return g;
}

DecoratedElement evaluate(const MarkedGroup& group, const Word& w) {
  return decorated_view(group, group.evaluate(w));
}

std::size_t closure_order(const MarkedGroup& g, std::size_t limit) {
  std::unordered_set<Elem> seen{g.identity()};
  std::deque<Elem> queue{g.identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < g.rank(); ++j) {
      Elem y = g.step(x, j);
      if (seen.insert(y).second) {
        if (seen.size() > limit) {
          throw ResourceError("closure of " + g.name() + " exceeds " + std::to_string(limit) + " elements",
                              seen.size());
        }
        queue.push_back(y);
      }
    }
  }
  return seen.size();
}

std::size_t ball_agreement_radius(const GroupPtr& g1, const GroupPtr& g2, std::size_t n_max) {
  if (g1->rank() != g2->rank()) throw std::invalid_argument("ball_agreement_radius: rank mismatch");
  auto both = product({g1, g2});
  CayleyBall b1 = bfs_ball(*g1, n_max);
  CayleyBall b2 = bfs_ball(*g2, n_max);
  CayleyBall bp = bfs_ball(*both, n_max);
  std::size_t r = 0;
  while (r < n_max) {
    std::size_t next = r + 1;
    std::size_t s = bp.ball_size(next);
    if (b1.ball_size(next) != s || b2.ball_size(next) != s) break;
    r = next;
  }
  return r;
}

}  // namespace grig
