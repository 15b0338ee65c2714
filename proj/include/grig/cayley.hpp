#pragma once

// Balls in Cayley graphs and the exact counters built on them.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "grig/errors.hpp"
#include "grig/marked_group.hpp"

namespace grig {

inline constexpr std::size_t kDefaultMaxVertices = 20'000'000;

/// Vertex budget used when a call passes max_vertices = 0.
std::size_t default_max_vertices();
void set_default_max_vertices(std::size_t n);

struct CayleyBall {
  static constexpr std::int32_t kOutside = -1;

  std::size_t radius = 0;
  std::size_t rank = 0;
  /// Vertex 0 is the identity; vertices are in BFS order, so each layer is a
  /// contiguous index range.
  std::vector<Elem> vertices;
  std::vector<std::uint32_t> distance;
  /// layer_end[r] = number of vertices at distance <= r.
  std::vector<std::size_t> layer_end;
  /// adjacency[v * rank + j] = index of vertices[v] * s_j, or kOutside.
  std::vector<std::int32_t> adjacency;
  /// inverse_generator[j] = some j' with s_j' = s_j^{-1}.
  std::vector<std::uint8_t> inverse_generator;

  std::size_t size() const { return vertices.size(); }
  std::int32_t neighbor(std::size_t v, std::size_t j) const { return adjacency[v * rank + j]; }
  /// b(r) for r <= radius.
  std::size_t ball_size(std::size_t r) const;
  std::size_t sphere_size(std::size_t r) const;
  /// Vertex index of an element, or kOutside.
  std::int32_t index_of(Elem x) const;

  std::unordered_map<Elem, std::int32_t> index;
};

/// Complete radius-n ball. Throws ResourceError (achieved = last complete
/// radius) once more than `max_vertices` vertices would be needed, and
/// std::invalid_argument if the generating set is not closed under inverses.
CayleyBall bfs_ball(const MarkedGroup& g, std::size_t n, std::size_t max_vertices = 0);

struct CountSeries {
  enum class Kind { cogrowth, growth, saw };
  Kind kind;
  std::vector<BigInt> values;
  /// Parallel to values: c(n)^{1/n}/k, log b(n)/(n k), or v(n)^{1/n}; NaN at n = 0.
  std::vector<double> normalized;
};

std::string to_string(CountSeries::Kind kind);

/// Natural log of a nonnegative big integer (-inf for 0).
double log_big(const BigInt& v);

/// c(0..n_max): words of length n equal to the identity, by DP over the ball
/// of radius n_max / 2.
CountSeries cogrowth(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices = 0);

/// b(0..n_max) from the layer sizes of the radius-n_max ball.
CountSeries growth(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices = 0);
CountSeries growth(const CayleyBall& ball);

/// v(0..n_max): generator-labeled walks from the identity that never revisit
/// a vertex.
CountSeries saw_count(const MarkedGroup& g, std::size_t n_max, std::size_t max_vertices = 0);

using Rational = boost::rational<std::int64_t>;

/// |E(X, G \ X)| / (k |X|), counting (x, s) with xs outside X.
Rational boundary_ratio(const MarkedGroup& g, const std::vector<Elem>& set);

struct CheegerPoint {
  std::string candidate;
  std::size_t set_size = 0;
  std::size_t boundary = 0;
  Rational ratio;
  /// Running minimum over candidates so far; each entry bounds the Cheeger
  /// constant from above.
  Rational best;
};

enum class CheegerStrategy { balls, greedy };

/// Balls of radius 1..n_max; `greedy` additionally improves each ball by
/// single-vertex additions and removals that lower the ratio, staying inside
/// the radius n_max ball.
std::vector<CheegerPoint> cheeger_upper(const MarkedGroup& g, CheegerStrategy strategy, std::size_t n_max,
                                        std::size_t max_vertices = 0);

void write_csv(std::ostream& out, const CountSeries& s);
void write_edge_list(std::ostream& out, const CayleyBall& ball, const MarkedGroup& g);
void write_dot(std::ostream& out, const CayleyBall& ball, const MarkedGroup& g);

}  // namespace grig
