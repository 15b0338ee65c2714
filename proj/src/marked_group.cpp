#include "grig/marked_group.hpp"

#include <cstdlib>
#include <stdexcept>

#include <boost/functional/hash.hpp>

namespace grig {

GenWord to_gen_word(const Word& w) {
  GenWord out;
  out.reserve(w.size());
  for (Gen g : w) out.push_back(index_of(g));
  return out;
}

std::string MarkedGroup::generator_label(std::size_t j) const { return "s" + std::to_string(j); }

Elem MarkedGroup::evaluate(std::span<const GenIndex> word) const {
  Elem x = identity();
  for (GenIndex j : word) {
    if (j >= rank()) throw std::out_of_range("generator index out of range for " + name());
    x = step(x, j);
  }
  return x;
}

Elem MarkedGroup::evaluate(const Word& w) const {
  if (rank() != 4) throw std::invalid_argument(name() + " is not 4-generated");
  Elem x = identity();
  for (Gen g : w) x = step(x, index_of(g));
  return x;
}

// ---------------------------------------------------------------- FreeGroup

FreeGroup::FreeGroup(std::size_t rank) : rank_(rank) {
  if (rank == 0) throw std::invalid_argument("free group rank must be positive");
  table_.intern(std::string());
  for (std::size_t j = 0; j < 2 * rank; ++j) gens_.push_back(table_.intern(std::string(1, static_cast<char>(j))));
}

std::string FreeGroup::name() const { return "free(" + std::to_string(rank_) + ")"; }

std::string FreeGroup::generator_label(std::size_t j) const {
  std::string s(1, static_cast<char>((j % 2 == 0 ? 'x' : 'X')));
  return s + std::to_string(j / 2 + 1);
}

Elem FreeGroup::multiply(Elem x, Elem y) const {
  std::string w = table_.at(x);
  for (char ch : table_.at(y)) {
    if (!w.empty() && w.back() == (ch ^ 1)) {
      w.pop_back();
    } else {
      w.push_back(ch);
    }
  }
  return table_.intern(std::move(w));
}

Elem FreeGroup::step(Elem x, std::size_t j) const {
  std::string w = table_.at(x);
  char ch = static_cast<char>(j);
  if (!w.empty() && w.back() == (ch ^ 1)) {
    w.pop_back();
  } else {
    w.push_back(ch);
  }
  return table_.intern(std::move(w));
}

Elem FreeGroup::inverse(Elem x) const {
  const std::string& w = table_.at(x);
  std::string inv(w.rbegin(), w.rend());
  for (char& ch : inv) ch ^= 1;
  return table_.intern(std::move(inv));
}

nlohmann::json FreeGroup::element_json(Elem x) const {
  const std::string& w = table_.at(x);
  if (w.empty()) return "e";
  std::string out;
  for (char ch : w) out += generator_label(static_cast<std::size_t>(ch));
  return out;
}

// ---------------------------------------------------------------- GridGroup

std::size_t GridGroup::VecHash::operator()(const std::vector<std::int64_t>& v) const {
  return boost::hash_range(v.begin(), v.end());
}

GridGroup::GridGroup(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("grid dimension must be positive");
  table_.intern(std::vector<std::int64_t>(dim, 0));
  for (std::size_t j = 0; j < 2 * dim; ++j) {
    std::vector<std::int64_t> v(dim, 0);
    v[j / 2] = (j % 2 == 0) ? 1 : -1;
    gens_.push_back(table_.intern(std::move(v)));
  }
}

std::string GridGroup::generator_label(std::size_t j) const {
  return std::string(j % 2 == 0 ? "+e" : "-e") + std::to_string(j / 2 + 1);
}

Elem GridGroup::from_coords(std::vector<std::int64_t> v) const {
  if (v.size() != dim_) throw std::invalid_argument("grid: coordinate dimension mismatch");
  return table_.intern(std::move(v));
}

Elem GridGroup::multiply(Elem x, Elem y) const {
  std::vector<std::int64_t> v = table_.at(x);
  const auto& w = table_.at(y);
  for (std::size_t i = 0; i < dim_; ++i) v[i] += w[i];
  return table_.intern(std::move(v));
}

Elem GridGroup::inverse(Elem x) const {
  std::vector<std::int64_t> v = table_.at(x);
  for (auto& c : v) c = -c;
  return table_.intern(std::move(v));
}

nlohmann::json GridGroup::element_json(Elem x) const { return table_.at(x); }

std::optional<std::size_t> GridGroup::word_length(Elem x) const {
  std::size_t n = 0;
  for (auto c : table_.at(x)) n += static_cast<std::size_t>(std::llabs(c));
  return n;
}

// --------------------------------------------------------------- CycleGroup

CycleGroup::CycleGroup(std::uint64_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("cycle order must be positive");
  table_.intern(0);
  gens_.push_back(table_.intern(1 % n));
  gens_.push_back(table_.intern((n - 1) % n));
}

Elem CycleGroup::multiply(Elem x, Elem y) const { return table_.intern((table_.at(x) + table_.at(y)) % n_); }

Elem CycleGroup::inverse(Elem x) const { return table_.intern((n_ - table_.at(x)) % n_); }

std::optional<std::size_t> CycleGroup::word_length(Elem x) const {
  std::uint64_t v = table_.at(x);
  return static_cast<std::size_t>(std::min(v, n_ - v));
}

// ----------------------------------------------------------- GammaFreeGroup

namespace {

std::string encode(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Gen g : w) s.push_back(static_cast<char>(index_of(g)));
  return s;
}

Word decode(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char ch : s) w.push_back(static_cast<Gen>(ch));
  return w;
}

}  // namespace

GammaFreeGroup::GammaFreeGroup() {
  table_.intern(std::string());
  for (int j = 0; j < 4; ++j) gens_.push_back(table_.intern(std::string(1, static_cast<char>(j))));
}

Elem GammaFreeGroup::multiply(Elem x, Elem y) const {
  return table_.intern(encode(reduce(concat(decode(table_.at(x)), decode(table_.at(y))))));
}

Elem GammaFreeGroup::inverse(Elem x) const {
  const std::string& s = table_.at(x);
  return table_.intern(std::string(s.rbegin(), s.rend()));
}

Word GammaFreeGroup::normal_form(Elem x) const { return decode(table_.at(x)); }

nlohmann::json GammaFreeGroup::element_json(Elem x) const { return to_string(normal_form(x)); }

// ------------------------------------------------------------- MatrixHGroup

MatrixHGroup::MatrixHGroup() : MatrixHGroup(generator_matrices()) {}

MatrixHGroup::MatrixHGroup(HGroup generators) {
  table_.intern(ProjectiveMat::identity());
  for (auto& m : generators.generators) gens_.push_back(table_.intern(m));
}

Elem MatrixHGroup::multiply(Elem x, Elem y) const {
  if (x == 0) return y;
  if (y == 0) return x;
  return table_.intern(mat_mul(table_.at(x), table_.at(y)));
}

Elem MatrixHGroup::inverse(Elem x) const { return table_.intern(mat_inverse(table_.at(x))); }

// ------------------------------------------------------------- ProductGroup

std::size_t ProductGroup::TupleHash::operator()(const std::vector<Elem>& v) const {
  return boost::hash_range(v.begin(), v.end());
}

ProductGroup::ProductGroup(std::vector<GroupPtr> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("product of an empty list");
  k_ = components_.front()->rank();
  for (const auto& g : components_) {
    if (g->rank() != k_) {
      throw std::invalid_argument("product: component " + g->name() + " has " + std::to_string(g->rank()) +
                                  " generators, expected " + std::to_string(k_));
    }
  }
  table_.intern(std::vector<Elem>(components_.size(), 0));
  for (std::size_t j = 0; j < k_; ++j) {
    std::vector<Elem> t;
    for (const auto& g : components_) t.push_back(g->generator(j));
    gens_.push_back(table_.intern(std::move(t)));
  }
}

std::string ProductGroup::name() const {
  std::string s = "product(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += ", ";
    s += components_[i]->name();
  }
  return s + ")";
}

Elem ProductGroup::from_parts(std::vector<Elem> parts) const {
  if (parts.size() != components_.size()) throw std::invalid_argument("product: tuple size mismatch");
  return table_.intern(std::move(parts));
}

Elem ProductGroup::multiply(Elem x, Elem y) const {
  const auto& a = table_.at(x);
  const auto& b = table_.at(y);
  std::vector<Elem> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = components_[i]->multiply(a[i], b[i]);
  return table_.intern(std::move(t));
}

Elem ProductGroup::step(Elem x, std::size_t j) const {
  const auto& a = table_.at(x);
  std::vector<Elem> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = components_[i]->step(a[i], j);
  return table_.intern(std::move(t));
}

Elem ProductGroup::inverse(Elem x) const {
  const auto& a = table_.at(x);
  std::vector<Elem> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = components_[i]->inverse(a[i]);
  return table_.intern(std::move(t));
}

nlohmann::json ProductGroup::element_json(Elem x) const {
  nlohmann::json out = nlohmann::json::array();
  const auto& a = table_.at(x);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(components_[i]->element_json(a[i]));
  return out;
}

std::shared_ptr<const ProductGroup> product(std::vector<GroupPtr> groups) {
  return std::make_shared<const ProductGroup>(std::move(groups));
}

}  // namespace grig
