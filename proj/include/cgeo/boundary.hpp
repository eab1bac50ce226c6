#ifndef CGEO_BOUNDARY_HPP
#define CGEO_BOUNDARY_HPP

#include <optional>
#include <string>
#include <vector>

#include "cgeo/hyperbolicity.hpp"
#include "cgeo/morse.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

/// Truncated product at infinity for two marked rays: min over tail sample
/// pairs beyond `inner_radius` of (x_n . y_m)_basepoint. Identical rays get
/// the +inf sentinel. Throws when truncation leaves no tail to sample.
Scalar boundary_product(const Space& s, Index basepoint, int ray_p, int ray_q,
                        Scalar inner_radius);

struct BoundaryStratum {
  Index basepoint = -1;
  std::string gauge_label;
  std::vector<int> members;       // ray ordinals admitted at the gauge bound
  MetricMatrix products;          // truncated products (diag = +inf)
  MetricMatrix metric;            // visual metric d_{x0, eps}
  Scalar epsilon = 1.0;
  Scalar delta = 0;               // four-point constant backing epsilon
  std::vector<Index> point_set;   // interior tail points the products used
  Scalar inner_radius = 0;

  int member_pos(int ray) const;  // position in `members`, -1 if absent
};

struct StratumConfig {
  Scalar inner_radius = -1;  // default: truncation / 2
  Scalar eps_max = 1.0;
  int tail_samples = 14;     // per-ray tail subsample for products
  StratifyConfig stratify;
};

/// Discretized boundary stratum: rays whose truncated geodesics to the
/// basepoint are not refuted at `bound`, with the visual metric built from
/// the truncated product table. Empty strata are valid results.
BoundaryStratum boundary_stratum(const Space& s, Index basepoint,
                                 const GaugeTable& bound,
                                 const StratumConfig& cfg = {});

/// Members q with a <= d(q, center) <= a r in the stratum metric.
std::vector<int> annulus(const BoundaryStratum& st, int center_ray, Scalar a,
                         Scalar r);

struct GaugeDrift {
  Scalar prod_n = 0;
  Scalar prod_n2 = 0;
};

/// Restricted products of (p, q) inside two strata for the nested-gauge
/// drift check. Throws if p or q is missing from either stratum.
GaugeDrift gauge_drift(const Space& s, const BoundaryStratum& coarse,
                       const BoundaryStratum& fine, int ray_p, int ray_q);

}  // namespace cgeo

#endif
