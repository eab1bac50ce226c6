#ifndef CGEO_REPRO_HPP
#define CGEO_REPRO_HPP

#include <string>
#include <vector>

#include "cgeo/bmaps.hpp"
#include "cgeo/space.hpp"

namespace cgeo {

/// One step of the truncation sweep behind the stability verdicts.
struct SweepStep {
  Scalar truncation = 0;
  Scalar contraction_in = 0;
  ModulusReport two_stable;
  ModulusReport basetriangle;
};

struct GrowthFit {
  std::vector<Scalar> n;       // family index
  std::vector<Scalar> value;   // measured contraction of (r_-2n, r_2n+1)
  Scalar slope = 0;            // least-squares slope
  Scalar intercept = 0;
};

struct ReproResult {
  char example = 'A';
  std::vector<SweepStep> sweep;
  Scalar two_stable_growth = 1;    // (max_excess+1) ratio across the doubling
  bool not_two_stable = false;
  Scalar basetriangle_growth = 1;  // max_achieved ratio across the doubling
  bool basetriangle_stable = false;
  GrowthFit growth_law;            // example A only
};

struct ReproConfig {
  Scalar base_truncation = 20;
  std::uint64_t seed = 1;
  int jobs = 0;
};

Space build_example_space(char example, Scalar truncation, int m_max = -1);

/// f(r_2n) = r_-2n with everything else fixed (both counterexamples use it).
BoundaryMap even_flip_map(const Space& src, const Space& dst);

/// Full counterexample pipeline: contraction growth law (example A), the
/// two-stable truncation sweep, and the basetriangle-stability table.
ReproResult run_example_repro(char example, const ReproConfig& cfg = {});

}  // namespace cgeo

#endif
