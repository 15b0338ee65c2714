#include "grig/matrix_h.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/functional/hash.hpp>

namespace grig {

GaussianDyadic::GaussianDyadic(BigInt re, BigInt im, unsigned exp)
    : re_(std::move(re)), im_(std::move(im)), exp_(exp) {
  normalize();
}

void GaussianDyadic::normalize() {
  if (re_ == 0 && im_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && !bit_test(re_, 0) && !bit_test(im_, 0)) {
    re_ >>= 1;
    im_ >>= 1;
    --exp_;
  }
}

bool GaussianDyadic::is_normalized() const {
  if (exp_ == 0) return true;
  return bit_test(re_, 0) || bit_test(im_, 0);
}

GaussianDyadic GaussianDyadic::operator+(const GaussianDyadic& o) const {
  unsigned e = std::max(exp_, o.exp_);
  BigInt r = (re_ << (e - exp_)) + (o.re_ << (e - o.exp_));
  BigInt i = (im_ << (e - exp_)) + (o.im_ << (e - o.exp_));
  return {std::move(r), std::move(i), e};
}

GaussianDyadic GaussianDyadic::operator-(const GaussianDyadic& o) const { return *this + (-o); }

GaussianDyadic GaussianDyadic::operator*(const GaussianDyadic& o) const {
  if (is_zero() || o.is_zero()) return {};
  return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_, exp_ + o.exp_};
}

std::size_t GaussianDyadic::hash() const {
  std::size_t seed = std::hash<BigInt>{}(re_);
  boost::hash_combine(seed, std::hash<BigInt>{}(im_));
  boost::hash_combine(seed, exp_);
  return seed;
}

std::string GaussianDyadic::to_string() const {
  std::ostringstream os;
  auto part = [&](const BigInt& num, bool imaginary) {
    os << num;
    if (imaginary) os << "i";
    if (exp_ > 0) os << "/" << (BigInt(1) << exp_);
  };
  if (im_ == 0) {
    part(re_, false);
  } else if (re_ == 0) {
    part(im_, true);
  } else {
    os << "(";
    part(re_, false);
    os << (im_ < 0 ? " - " : " + ");
    part(im_ < 0 ? BigInt(-im_) : im_, true);
    os << ")";
  }
  return os.str();
}

ProjectiveMat::ProjectiveMat(Entries e) : m_(std::move(e)) {
  if (!(determinant() == GaussianDyadic::integer(1))) {
    throw std::domain_error("ProjectiveMat: determinant must be 1, got " + determinant().to_string());
  }
  canonicalize();
}

ProjectiveMat::ProjectiveMat(Entries e, Unchecked) : m_(std::move(e)) { canonicalize(); }

ProjectiveMat ProjectiveMat::identity() {
  return ProjectiveMat({GaussianDyadic::integer(1), {}, {}, GaussianDyadic::integer(1)}, Unchecked{});
}

void ProjectiveMat::canonicalize() {
  for (const auto& z : m_) {
    if (z.is_zero()) continue;
    bool positive = z.re_num() > 0 || (z.re_num() == 0 && z.im_num() > 0);
    if (!positive) {
      for (auto& w : m_) w = -w;
    }
    return;
  }
}

GaussianDyadic ProjectiveMat::determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

bool ProjectiveMat::is_identity() const { return *this == identity(); }

bool ProjectiveMat::is_real() const {
  for (const auto& z : m_)
    if (z.im_num() != 0) return false;
  return true;
}

std::size_t ProjectiveMat::hash() const {
  std::size_t seed = 0;
  for (const auto& z : m_) boost::hash_combine(seed, z.hash());
  return seed;
}

nlohmann::json ProjectiveMat::to_json() const {
  // Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
  // decimal strings.
  auto num = [](const BigInt& v) -> nlohmann::json {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
      return static_cast<long long>(v);
    return v.str();
  };
  auto entry = [&](const GaussianDyadic& z) {
    return nlohmann::json::array({num(z.re_num()), num(z.im_num()), z.exp()});
  };
  return {{"m", {{entry(m_[0]), entry(m_[1])}, {entry(m_[2]), entry(m_[3])}}}};
}

ProjectiveMat ProjectiveMat::from_json(const nlohmann::json& j) {
  const auto& m = j.at("m");
  Entries e;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const auto& z = m.at(r).at(c);
      auto num = [](const nlohmann::json& v) {
        return v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<long long>());
      };
      e[static_cast<std::size_t>(2 * r + c)] = GaussianDyadic(num(z.at(0)), num(z.at(1)), z.at(2).get<unsigned>());
    }
  }
  return ProjectiveMat(std::move(e));
}

std::string ProjectiveMat::to_string() const {
  return "((" + m_[0].to_string() + ", " + m_[1].to_string() + "), (" + m_[2].to_string() + ", " +
         m_[3].to_string() + "))";
}

ProjectiveMat mat_mul(const ProjectiveMat& x, const ProjectiveMat& y) {
  const auto& a = x.m_;
  const auto& b = y.m_;
  return ProjectiveMat({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                        a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]},
                       ProjectiveMat::Unchecked{});
}

ProjectiveMat mat_inverse(const ProjectiveMat& x) {
  const auto& a = x.m_;
  return ProjectiveMat({a[3], -a[1], -a[2], a[0]}, ProjectiveMat::Unchecked{});
}

HGroup generator_matrices() {
  using G = GaussianDyadic;
  const G zero;
  const G one = G::integer(1);
  const G i(0, 1);
  const G quarter_i(0, 1, 2);
  return HGroup{{
      ProjectiveMat({i, quarter_i, zero, -i}),
      ProjectiveMat({zero, i, i, zero}),
      ProjectiveMat({zero, one, -one, zero}),
      ProjectiveMat({i, zero, zero, -i}),
  }};
}

ProjectiveMat word_to_matrix(const HGroup& h, const Word& w) {
  ProjectiveMat m = ProjectiveMat::identity();
  for (Gen g : w) m = mat_mul(m, h.gen(g));
  return m;
}

std::vector<RelationCheck> verify_relations(const HGroup& h) {
  std::vector<RelationCheck> out;
  for (Gen g : {Gen::a, Gen::b, Gen::c, Gen::d}) {
    std::string name(2, to_char(g));
    out.push_back({name + " = 1", word_to_matrix(h, {g, g}).is_identity()});
  }
  out.push_back({"bcd = 1", word_to_matrix(h, {Gen::b, Gen::c, Gen::d}).is_identity()});
  return out;
}

}  // namespace grig
