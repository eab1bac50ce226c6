#ifndef CGEO_CENTERS_HPP
#define CGEO_CENTERS_HPP

#include <array>
#include <vector>

#include "cgeo/boundary.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

/// E_k(a,b,c) together with the fitted K(a,b,c).
struct CenterSet {
  std::array<int, 3> triple{-1, -1, -1};  // ray ordinals
  Scalar k = 0;
  std::vector<Index> points;
  Scalar diameter = 0;
  Scalar k_value = 0;  // K(a,b,c) = 1 + inf{k : E_k nonempty}
};

struct CenterConfig {
  int rep_budget = 8;  // geodesic representatives per side
};

/// Side representatives of the ideal triangle on (a, b, c): one list of
/// geodesics per side. Plane models have unique sides; graphs enumerate up
/// to rep_budget.
std::array<std::vector<Geodesic>, 3> triangle_sides(const Space& s, int a, int b,
                                                    int c, int rep_budget);

/// Points lying within k of all three sides of some triangle on (a, b, c).
CenterSet center_set(const Space& s, int a, int b, int c, Scalar k,
                     const CenterConfig& cfg = {});

struct CoarseCenter {
  Index point = -1;
  Scalar k_value = 0;
  CenterSet set;  // E_{K(a,b,c)}
};

/// Deterministic coarse center: the point of E_{K(a,b,c)} minimizing its max
/// distance to the sides, ties broken by smallest index.
CoarseCenter coarse_center(const Space& s, int a, int b, int c,
                           const CenterConfig& cfg = {});

struct CenterStability {
  Scalar displacement = 0;   // max distance between the two center sets
  bool within_lambda = true; // perturbation stayed inside the allowed radius
  Scalar perturbation = 0;   // largest vertex move in the stratum metric
};

/// Perturbation stability of centers: displacement between the center sets of a triple
/// and a perturbed triple whose vertices moved at most lambda in the stratum
/// metric. When the perturbation exceeds lambda the result is flagged and no
/// bound is asserted.
CenterStability center_stability(const Space& s, const BoundaryStratum& st,
                                 const std::array<int, 3>& triple,
                                 const std::array<int, 3>& perturbed,
                                 Scalar lambda, const CenterConfig& cfg = {});

}  // namespace cgeo

#endif
