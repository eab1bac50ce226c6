#ifndef CGEO_HYPERBOLICITY_HPP
#define CGEO_HYPERBOLICITY_HPP

#include <array>
#include <span>
#include <vector>

#include "cgeo/space.hpp"
#include "cgeo/types.hpp"

namespace cgeo {

/// (x.y)_w = (d(w,x) + d(w,y) - d(x,y)) / 2; always >= 0.
Scalar gromov_product(const Space& s, Index x, Index y, Index w);

/// Table of pairwise products of `subset` with respect to basepoint w.
MetricMatrix gromov_product_table(const Space& s, std::span<const Index> subset,
                                  Index w);

struct DeltaResult {
  Scalar delta = 0;
  std::array<Index, 4> witness{-1, -1, -1, -1};  // (w, x, y, z), subset-relative
  bool degenerate = false;                       // fewer than 4 points
};

/// Exhaustive four-point hyperbolicity constant of a distance table:
/// max over (w,x,y,z) of min{(x.z)_w, (z.y)_w} - (x.y)_w, clamped at 0.
/// Works on any symmetric nonnegative matrix expression.
DeltaResult four_point_delta(const MetricMatrix& d, int jobs = 0);

DeltaResult four_point_delta(const Space& s, std::span<const Index> subset,
                             int jobs = 0);
DeltaResult four_point_delta(const Space& s, int jobs = 0);

/// Largest visibility parameter <= eps_max with e^{2 delta eps} <= sqrt(2).
Scalar choose_epsilon(Scalar delta, Scalar eps_max);

struct VisualMetricParams {
  Index basepoint = 0;
  Scalar epsilon = 1.0;
  Scalar delta = 0;
};

struct VisualMetricResult {
  MetricMatrix d;
  bool underflow_capped = false;  // some product exceeded the exp cap
};

/// Chain-infimum visual metric: d(x,y) = inf over chains x = x_1..x_n = y of
/// sum exp(-eps (x_{i-1}.x_i)). The infimum is attained by a simple chain,
/// so all-pairs shortest paths on the complete weight graph is exact.
/// +inf entries in `products` (identical boundary points) get weight 0.
VisualMetricResult visual_metric(const MetricMatrix& products, Scalar epsilon);

/// Validated form: requires e^{2 delta eps} <= sqrt(2) + 1e-12.
VisualMetricResult visual_metric(const MetricMatrix& products,
                                 const VisualMetricParams& params);

struct BEquivalence {
  Scalar k = 1;
  std::pair<Index, Index> worst{-1, -1};
  bool comparable = true;
};

/// Smallest k >= 1 with k^-1 m2^eps1 <= m1^eps2 <= k m2^eps1 entrywise.
BEquivalence b_equivalence(const MetricMatrix& m1, Scalar eps1,
                           const MetricMatrix& m2, Scalar eps2);

/// Verifies (3 - 2 e^{2 delta eps}) e^{-eps p} <= d <= e^{-eps p} on all
/// pairs; returns the largest signed violation (<= 0 means the sandwich
/// holds).
Scalar sandwich_violation(const MetricMatrix& visual, const MetricMatrix& products,
                          Scalar delta, Scalar epsilon);

}  // namespace cgeo

#endif
