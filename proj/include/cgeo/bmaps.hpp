#ifndef CGEO_BMAPS_HPP
#define CGEO_BMAPS_HPP

#include <map>
#include <string>
#include <vector>

#include "cgeo/boundary.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

/// Bijection between the marked ray sets of two spaces.
struct BoundaryMap {
  std::vector<int> image;          // source ray ordinal -> target ray ordinal
  std::vector<int> preimage;
  std::string label;

  int operator()(int ray) const { return image.at(ray); }
  BoundaryMap inverse() const;
};

/// Builds and validates a map from label pairs; unmatched labels or a
/// non-bijection throw ValidationError. Rays absent from `pairs` map by
/// identical label.
BoundaryMap make_boundary_map(const Space& src, const Space& dst,
                              const std::vector<std::pair<std::string, std::string>>& pairs,
                              const std::string& label = "f");

enum class ModulusKind { TwoStable, BasetriangleStable, Biholder, PowerQS, StronglyQC };

struct ModulusReport {
  ModulusKind kind = ModulusKind::Biholder;
  std::map<std::string, Scalar> constants;
  std::vector<std::array<Scalar, 4>> table;  // kind-specific rows
  std::string worst_witness;
  long sample_count = 0;
  bool flagged_empty = false;
  bool infeasible = false;
};

struct TwoStableConfig {
  Scalar contraction_in = 1.1;  // qualifying source pairs: contraction <= this
  int gauge_budget = 60;        // witnessed-gauge budget for the report rows
  std::uint64_t seed = 1;
};

/// For each source ray pair whose connecting geodesic is within the input
/// contraction bound, measures the image geodesic's contraction (and a
/// budgeted witnessed gauge). Scalar `growth` = max over pairs of
/// image - source contraction; its blowup across a truncation sweep is the
/// non-2-stability evidence. Rows: (src contraction, img contraction,
/// src (3,0) witnessed lower, img (3,0) witnessed lower).
ModulusReport check_two_stable(const Space& src, const Space& dst,
                               const BoundaryMap& f, const TwoStableConfig& cfg = {});

struct BasetriangleConfig {
  Scalar n0_contraction = 0.55;          // qualifying basetriangles
  std::vector<Scalar> gauge_grid{1, 2, 3, 4};  // stratum bounds, contraction units
  int center_samples = 1;  // 1 = the canonical coarse center of each triple
  int rep_budget = 8;
};

/// For every qualifying basetriangle, every sampled coarse center x0 and
/// every image-triangle center y0: the smallest contraction bound N' with
/// f(stratum(x0, C)) inside stratum(y0, N'). Rows: (C, achieved N', members,
/// image members).
ModulusReport check_basetriangle_stable(const Space& src, const Space& dst,
                                        const BoundaryMap& f,
                                        const BasetriangleConfig& cfg = {});

/// Minimal-C biholder fit: C^-1 d_X^{1/a1} <= d_Y^{a2} <= C d_X^{a1} over all
/// member pairs. Relaxing a1 toward 1 only loosens both constraints, so the
/// optimum sits at a1 = 1 and the fit reduces to a Chebyshev line through the
/// origin in log-log coordinates.
ModulusReport fit_biholder(const BoundaryStratum& src, const BoundaryStratum& dst,
                           const BoundaryMap& f);

/// Minimal power quasisymmetry modulus psi_{alpha,lambda} dominating all
/// ratio samples (t, s) over ordered distinct triples.
ModulusReport fit_quasisymmetry(const BoundaryStratum& src,
                                const BoundaryStratum& dst, const BoundaryMap& f);

/// Strong quasiconformality table: smallest r' such that the image of every
/// r-annulus A(x, a, ar) fits in a centered annulus A(f(x), a', a'r').
/// Annulus radii are taken from observed distances so the identity map fits
/// phi(r) = r exactly. Rows: (r, phi(r)).
ModulusReport fit_quasiconformal(const BoundaryStratum& src,
                                 const BoundaryStratum& dst, const BoundaryMap& f);

/// Evaluates the fitted power modulus at t.
Scalar psi_power(Scalar alpha, Scalar lambda, Scalar t);

}  // namespace cgeo

#endif
