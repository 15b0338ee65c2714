#pragma once

// Exact arithmetic in PSL(2, Z[i, 1/2]) and the marked group
// H = <a, b, c, d> generated by four explicit matrices.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "grig/word.hpp"

namespace grig {

using BigInt = boost::multiprecision::cpp_int;

/// (re + im * i) / 2^exp, kept normalized: exp == 0 or one of re, im is odd.
class GaussianDyadic {
 public:
  GaussianDyadic() = default;
  GaussianDyadic(BigInt re, BigInt im, unsigned exp = 0);

  static GaussianDyadic integer(long v) { return {BigInt(v), BigInt(0), 0}; }

  const BigInt& re_num() const { return re_; }
  const BigInt& im_num() const { return im_; }
  unsigned exp() const { return exp_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_normalized() const;

  GaussianDyadic operator+(const GaussianDyadic& o) const;
  GaussianDyadic operator-(const GaussianDyadic& o) const;
  GaussianDyadic operator*(const GaussianDyadic& o) const;
  GaussianDyadic operator-() const { return {-re_, -im_, exp_}; }

  bool operator==(const GaussianDyadic&) const = default;

  std::size_t hash() const;
  std::string to_string() const;

 private:
  void normalize();

  BigInt re_ = 0;
  BigInt im_ = 0;
  unsigned exp_ = 0;
};

/// 2x2 matrix of determinant 1 taken modulo +-I. The stored representative
/// has its first nonzero entry (row-major) with re > 0, or re == 0 and im > 0.
class ProjectiveMat {
 public:
  using Entries = std::array<GaussianDyadic, 4>;  // row-major

  /// Canonicalizes; throws std::domain_error unless det == 1.
  explicit ProjectiveMat(Entries e);

  static ProjectiveMat identity();

  const Entries& entries() const { return m_; }
  const GaussianDyadic& at(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }

  GaussianDyadic determinant() const;
  bool is_identity() const;
  bool is_real() const;

  bool operator==(const ProjectiveMat&) const = default;

  std::size_t hash() const;

  /// {"m": [[[re,im,exp],[re,im,exp]],[...]]}
  nlohmann::json to_json() const;
  static ProjectiveMat from_json(const nlohmann::json& j);

  std::string to_string() const;

 private:
  struct Unchecked {};
  ProjectiveMat(Entries e, Unchecked);
  void canonicalize();

  Entries m_;

  friend ProjectiveMat mat_mul(const ProjectiveMat& x, const ProjectiveMat& y);
  friend ProjectiveMat mat_inverse(const ProjectiveMat& x);
};

ProjectiveMat mat_mul(const ProjectiveMat& x, const ProjectiveMat& y);
ProjectiveMat mat_inverse(const ProjectiveMat& x);

struct ProjectiveMatHash {
  std::size_t operator()(const ProjectiveMat& m) const { return m.hash(); }
};

/// Images of a, b, c, d.
struct HGroup {
  std::array<ProjectiveMat, 4> generators;

  const ProjectiveMat& gen(Gen g) const { return generators[index_of(g)]; }
};

/// The four matrices
///   a = (i, i/4; 0, -i),  b = (0, i; i, 0),  c = (0, 1; -1, 0),  d = (i, 0; 0, -i).
HGroup generator_matrices();

ProjectiveMat word_to_matrix(const HGroup& h, const Word& w);
inline ProjectiveMat word_to_matrix(const Word& w) { return word_to_matrix(generator_matrices(), w); }

struct RelationCheck {
  std::string relation;
  bool holds = false;
};

/// a^2, b^2, c^2, d^2 and bcd, each checked against the identity.
std::vector<RelationCheck> verify_relations(const HGroup& h);

}  // namespace grig
