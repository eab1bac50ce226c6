#ifndef CGEO_EXTENSION_HPP
#define CGEO_EXTENSION_HPP

#include <string>
#include <vector>

#include "cgeo/bmaps.hpp"
#include "cgeo/centers.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

/// An enumerated basetriangle with its deterministic coarse center.
struct TripleCenter {
  std::array<int, 3> triple{-1, -1, -1};
  Index center = -1;
  Scalar k_value = 0;
  Scalar diameter = 0;
};

struct TripleEnumConfig {
  Scalar n0_contraction = 2.2;  // qualifying pairs for N0-triples
  int rep_budget = 8;
};

/// All triples of marked rays that are pairwise within the N0 contraction
/// bound, with coarse centers.
std::vector<TripleCenter> enumerate_triples(const Space& s,
                                            const TripleEnumConfig& cfg = {});

/// Max over sample points of the distance to the nearest enumerated center,
/// plus a unit safety margin. Throws PreconditionError when no qualifying
/// triple exists.
Scalar cover_radius(const Space& s, const std::vector<TripleCenter>& triples,
                    std::span<const Index> sample = {});

struct ExtensionConfig {
  TripleEnumConfig triples;
  int sample_cap = 420;  // interior points the extension is evaluated on
};

struct ExtensionMap {
  std::vector<Index> sample;        // source cloud indices
  std::vector<Index> values;        // image cloud indices (in the target)
  std::vector<int> chosen_triple;   // per sample: index into `triples`
  Scalar R = 0;
  Scalar center_diameter = 0;       // max diameter of enumerated center sets
  std::vector<TripleCenter> triples;        // source triples
  std::vector<TripleCenter> image_triples;  // their images under f
  std::string n0_label, n1_label;

  Index value_at(Index source_point) const;  // -1 when outside the sample
};

/// Boundary-to-interior extension: each sampled x maps to the coarse center
/// of the image of the qualifying triple whose center lies nearest to x.
ExtensionMap extend(const Space& src, const Space& dst, const BoundaryMap& f,
                    const ExtensionConfig& cfg = {});

struct QiFit {
  Scalar K = 1;
  Scalar C = 0;
  Scalar D = 0;         // max image displacement over unit-separated pairs
  Scalar c_cap = 0;     // additive cap the minimal K was fitted under
  long pairs = 0;
};

/// Minimal K >= 1 whose required additive constant C(K) stays within the cap
/// (default 2(R + center diameter) + 2); C(K) is monotone in K, so the
/// minimal (K, C) pair under the cap is found by bisection on K.
QiFit fit_qi_constants(const Space& src, const Space& dst, const ExtensionMap& ext,
                       Scalar c_cap = -1);

struct DefectReport {
  Scalar defect = 0;  // max over sampled y of d(y, f_ext(finv_ext(y)))
  long skipped = 0;   // sample points outside the composable domain
  long used = 0;
};

DefectReport quasi_inverse_defect(const Space& src, const Space& dst,
                                  const ExtensionMap& ext_f,
                                  const ExtensionMap& ext_finv);

struct EtaTable {
  std::vector<Scalar> theta;
  std::vector<Scalar> eta;  // monotone regularized

  Scalar at(Scalar t) const;  // lookup with clamp to the last entry
};

/// Empirical center-tracking modulus: for pairs of qualifying triples
/// with source center distance <= theta, the max image center distance.
EtaTable eta_modulus(const Space& src, const Space& dst, const ExtensionMap& ext,
                     std::span<const Scalar> theta_grid = {});

struct AgreementReport {
  bool all_pass = false;
  std::vector<int> classified;  // per source ray: target ray or -1
  std::vector<int> expected;
  std::vector<bool> supported;  // ray base realizes some triple center
  long inconclusive = 0;        // ambiguous tail classifications
  long unsupported = 0;         // truncation-edge rays, excluded from the pass
};

/// Pushes tail samples of every marked ray through the extension and
/// classifies the image tail against target rays; passes when every
/// supported ray classifies to f(ray). A ray is supported when some
/// enumerated triple's center lies at its base (within half a unit); rays at
/// the edge of the truncated lattice cannot be middled by any triple and are
/// reported rather than judged.
AgreementReport boundary_agreement(const Space& src, const Space& dst,
                                   const ExtensionMap& ext, const BoundaryMap& f);

}  // namespace cgeo

#endif
