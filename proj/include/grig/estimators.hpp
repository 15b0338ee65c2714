#pragma once

// Estimators for rho, p_c, h, speed, mu, plus the Cheeger and growth
// wrappers. Certified bounds come only from exact counts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grig/cayley.hpp"
#include "grig/marked_group.hpp"

namespace grig {

inline constexpr int kReportSchemaVersion = 1;

struct CertifiedBound {
  double value;
  enum class Direction { lower, upper } direction;
};

struct EstimateReport {
  std::string parameter;
  std::string group;
  /// NaN when undefined (e.g. p_c of a finite group).
  double estimate = 0.0;
  std::optional<CertifiedBound> certified;
  /// Present iff sampling was used.
  std::optional<std::pair<double, double>> ci;
  nlohmann::json parameters = nlohmann::json::object();
  /// Per-n sequences backing the estimate.
  nlohmann::json series = nlohmann::json::object();
  std::vector<std::string> notes;
  double runtime_seconds = 0.0;

  /// Runtime is left out by default so reruns are byte-identical.
  nlohmann::json to_json(bool include_runtime = false) const;
};

// ------------------------------------------------------------- spectral radius

/// rho = limsup c(n)^{1/n} / k. Certified lower bound: running max of
/// c(n)^{1/n} / k (c is supermultiplicative). Point estimate: ratios
/// c(2m)/c(2m-2) corrected for an m^{-3/2} prefactor, then one Richardson
/// step in 1/m^2; clamped to 1.
EstimateReport spectral_radius(const MarkedGroup& g, std::size_t n_max);

/// Both pieces from a precomputed cogrowth series.
std::vector<double> spectral_lower_bounds(const CountSeries& c, std::size_t k);
double spectral_extrapolation(const CountSeries& c, std::size_t k);

// ------------------------------------------------------------------ percolation

enum class PercolationMode { site, bond };

/// The radius-R ball as a simple graph: loops dropped, parallel edges merged.
struct PercolationGraph {
  std::size_t radius = 0;
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  /// CSR: neighbors of v are nbr[offsets[v] .. offsets[v+1]), with edge ids.
  std::vector<std::uint32_t> offsets, nbr, edge;
  std::vector<char> on_sphere;
};

PercolationGraph percolation_graph(const CayleyBall& ball);

/// One uniform per vertex (site) or per edge (bond), from stream `trial`.
std::vector<double> percolation_variates(const PercolationGraph& graph, PercolationMode mode, std::uint64_t seed,
                                         std::uint64_t trial);

/// Smallest p at which the root reaches the radius-R sphere through variates
/// < p: the minimax path weight (site: includes the root). Returns +inf when
/// the sphere is empty.
double connection_threshold(const PercolationGraph& graph, PercolationMode mode, const std::vector<double>& u);

struct ThetaPoint {
  double p, theta, ci_lo, ci_hi;
};

struct PercolationResult {
  EstimateReport report;
  std::vector<ThetaPoint> curve;
  /// Per-trial connection thresholds, in trial order.
  std::vector<double> thresholds;
};

struct PercolationOptions {
  PercolationMode mode = PercolationMode::bond;
  std::size_t radius = 64;
  std::vector<double> p_grid;  // empty = 0, 0.01, ..., 1
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  std::size_t bootstrap = 400;
};

PercolationResult percolation(const MarkedGroup& g, const PercolationOptions& options);

/// Linear interpolation of the 0.5 crossing of a nondecreasing curve; NaN if
/// the curve never reaches 0.5.
double half_crossing(const std::vector<double>& p, const std::vector<double>& theta);

void write_theta_csv(std::ostream& out, const std::vector<ThetaPoint>& curve);

// ---------------------------------------------------------------------- entropy

struct EntropySeries {
  /// H(mu_n) for n = 0..n_max.
  std::vector<double> H;
  bool radial = false;
};

/// Exact distribution of the simple random walk; radial (distance-chain)
/// mode when the Cayley graph is a regular tree, ball convolution otherwise.
EntropySeries walk_entropy(const MarkedGroup& g, std::size_t n_max, bool allow_radial = true);

/// Each H(mu_n)/n is an upper bound on h (H is subadditive).
EstimateReport entropy(const MarkedGroup& g, std::size_t n_max, bool allow_radial = true);

// ------------------------------------------------------------------------ speed

/// E|x_n| / n by Monte Carlo with a normal-approximation CI.
EstimateReport speed(const MarkedGroup& g, std::size_t n, std::size_t samples, std::uint64_t seed);

/// E|x_n| exactly from the walk distribution (radial chain on trees).
double expected_distance_exact(const MarkedGroup& g, std::size_t n);

// --------------------------------------------------------- connective constant

EstimateReport connective_constant(const MarkedGroup& g, std::size_t n_max);

// ---------------------------------------------------------- Cheeger and growth

EstimateReport cheeger(const MarkedGroup& g, std::size_t n_max, CheegerStrategy strategy);
EstimateReport growth_rate(const MarkedGroup& g, std::size_t n_max);

}  // namespace grig
