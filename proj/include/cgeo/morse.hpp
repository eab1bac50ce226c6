#ifndef CGEO_MORSE_HPP
#define CGEO_MORSE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cgeo/space.hpp"
#include "cgeo/types.hpp"

namespace cgeo {

/// (K, C) grid a gauge estimate is evaluated on. (3, 0) is always present
/// because the stratum-hyperbolicity and product-drift bounds reference it.
struct GaugeGrid {
  std::vector<std::pair<Scalar, Scalar>> cells;
  static GaugeGrid default_grid();
  Index find(Scalar K, Scalar C) const;  // -1 if absent
};

/// Estimated Morse gauge over a (K, C) grid. `lower` holds the maximal
/// witnessed deviation of a validated quasi-geodesic; `upper`, when present,
/// is derived from a contraction constant via an affine conversion and is
/// certified only modulo that conversion.
struct GaugeTable {
  GaugeGrid grid;
  Vec lower;
  Vec upper;  // size 0 when absent
  bool certified = false;
  std::vector<bool> no_witness;
  std::vector<std::vector<SpacePoint>> witnesses;  // per cell, when kept

  bool has_upper() const { return upper.size() == lower.size(); }
  bool within(const GaugeTable& bound) const;  // lower <= bound entries
};

struct QuasiCheck {
  bool ok = false;
  std::pair<Index, Index> worst{-1, -1};
  Scalar violation = 0;  // positive = worst excess, <= 0 when ok
};

/// Two-sided (K, C) quasi-geodesic test over all O(L^2) index pairs of the
/// arc-length parameterized path.
QuasiCheck is_quasi_geodesic(const Space& s, const std::vector<SpacePoint>& path,
                             Scalar K, Scalar C);

struct WitnessSearchConfig {
  int budget = 2000;       // candidates per grid cell
  std::uint64_t seed = 1;
  int jobs = 0;
  int landmark_cap = 260;  // deterministic landmark subsample size
  bool keep_witnesses = false;  // retain the best witness path per cell
};

/// Certified lower bounds on the Morse gauge of g: for each grid cell,
/// searches candidate quasi-geodesics with endpoints on g (landmark detours,
/// alternate geodesics, seeded two-leg walks), validates each with
/// is_quasi_geodesic and keeps the maximal deviation from g.
GaugeTable morse_gauge_lower(const Space& s, const Geodesic& g,
                             const GaugeGrid& grid, const WitnessSearchConfig& cfg);

struct ContractionReport {
  Scalar constant = 0;
  long tested_balls = 0;
  Index witness_center = -1;
  Scalar witness_radius = 0;
  bool empty = true;
};

struct BallGridConfig {
  Scalar min_radius = 0.5;  // centers closer to g than this are skipped
  int center_cap = 1600;    // deterministic center subsample
};

/// Max diameter of the nearest-point projection onto g over metric balls
/// disjoint from it. Balls are centered at cloud points with the largest
/// disjoint radius; projections keep every minimizer within 1e-9.
ContractionReport contraction_constant(const Space& s, const Geodesic& g,
                                       const BallGridConfig& cfg = {});

/// Max over points of each side of the distance to the union of the other
/// two sides. Sides must close up into a triangle (shared interior endpoints
/// or shared boundary rays).
Scalar slim_constant(const Space& s, const Geodesic& ab, const Geodesic& bc,
                     const Geodesic& ca);

struct ConversionConfig {
  Scalar contraction_coef = 1.0;  // a in  N(K,C) = a*Ccontr*K^2 + b*C + a0
  Scalar additive_coef = 1.0;     // b
  Scalar offset = 1.0;            // a0
};

/// Upper gauge derived from a contraction constant; labeled
/// certified-modulo-conversion.
GaugeTable gauge_from_contraction(Scalar contraction, const GaugeGrid& grid,
                                  const ConversionConfig& conv = {});

struct StratifyConfig {
  int geodesic_budget = 4;   // representatives per point
  int witness_budget = 60;   // candidates per cell during refutation
  std::uint64_t seed = 1;
  int jobs = 0;
};

struct StratifyResult {
  std::vector<Index> members;
  std::vector<Index> inconclusive;  // enumeration budget exhausted; excluded
};

/// X^(N): points whose every enumerated geodesic to the basepoint has
/// witnessed gauge within `bound` ("not refuted" semantics). Candidates
/// default to the whole cloud.
StratifyResult stratify(const Space& s, Index basepoint, const GaugeTable& bound,
                        const StratifyConfig& cfg,
                        std::span<const Index> candidates = {});

}  // namespace cgeo

#endif
