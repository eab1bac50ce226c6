#include "cgeo/repro.hpp"

#include <cmath>

namespace cgeo {

Space build_example_space(char example, Scalar truncation, int m_max) {
  PlaneDesc d;
  d.preset = example;
  d.truncation = truncation;
  d.m_max = m_max;
  SpaceDescription sd{d, std::string("plane") + example};
  return build_space(sd);
}

BoundaryMap even_flip_map(const Space& src, const Space& dst) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& r : src.rays) {
    if (r.label.rfind("r_", 0) != 0) continue;
    const std::string tail = r.label.substr(2);
    if (tail.empty() || (!std::isdigit(static_cast<unsigned char>(tail[0])) &&
                         tail[0] != '-'))
      continue;  // the primed rays stay fixed
    long m = std::stol(tail);
    if (m != 0 && m % 2 == 0)
      pairs.emplace_back(r.label, "r_" + std::to_string(-m));
  }
  return make_boundary_map(src, dst, pairs, "even_flip");
}

namespace {

GrowthFit fit_growth_law(const ReproConfig& cfg) {
  // contraction of (r_-2n, r_2n+1) for n = 1..3 needs rays out to |m| = 7
  Space s = build_example_space('A', cfg.base_truncation, 7);
  GrowthFit fit;
  for (int n = 1; n <= 3; ++n) {
    int a = s.ray_by_label("r_" + std::to_string(-2 * n));
    int b = s.ray_by_label("r_" + std::to_string(2 * n + 1));
    fit.n.push_back(n);
    fit.value.push_back(contraction_constant(s, s.ray_geodesic(a, b)).constant);
  }
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  const Scalar m = static_cast<Scalar>(fit.n.size());
  for (size_t i = 0; i < fit.n.size(); ++i) {
    sx += fit.n[i];
    sy += fit.value[i];
    sxx += fit.n[i] * fit.n[i];
    sxy += fit.n[i] * fit.value[i];
  }
  fit.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / m;
  return fit;
}

int default_m_max(char example, Scalar trunc) {
  if (example == 'A') return std::max(2, static_cast<int>(std::floor(trunc / 4)));
  int mm = 0;
  auto base_of = [](long m) { return 0.5 * m * (m + 1); };
  while (base_of(mm + 1) <= trunc - 2) ++mm;
  return mm;
}

}  // namespace

ReproResult run_example_repro(char example, const ReproConfig& cfg) {
  if (example != 'A' && example != 'B')
    throw ValidationError("unknown example id; use exampleA or exampleB");
  ReproResult res;
  res.example = example;
  if (example == 'A') res.growth_law = fit_growth_law(cfg);

  for (Scalar trunc : {cfg.base_truncation, 2 * cfg.base_truncation}) {
    SweepStep step;
    step.truncation = trunc;
    // The qualifying gauge tracks the truncation so the sweep can see deeper
    // pairs; an honest map keeps image/source excess flat anyway.
    step.contraction_in = trunc / 4;
    Space s = build_example_space(example, trunc, default_m_max(example, trunc));
    BoundaryMap f = even_flip_map(s, s);
    TwoStableConfig ts;
    ts.contraction_in = step.contraction_in;
    ts.gauge_budget = 24;
    ts.seed = cfg.seed;
    step.two_stable = check_two_stable(s, s, f, ts);
    BasetriangleConfig bt;
    bt.n0_contraction = example == 'A' ? 0.55 : 2.2;
    step.basetriangle = check_basetriangle_stable(s, s, f, bt);
    res.sweep.push_back(std::move(step));
  }

  const auto& lo = res.sweep.front();
  const auto& hi = res.sweep.back();
  res.two_stable_growth = (hi.two_stable.constants.at("max_excess") + 1.0) /
                          (lo.two_stable.constants.at("max_excess") + 1.0);
  res.not_two_stable = res.two_stable_growth >= 1.5;
  res.basetriangle_growth = (hi.basetriangle.constants.at("max_achieved") + 1.0) /
                            (lo.basetriangle.constants.at("max_achieved") + 1.0);
  bool within_plus_one = true;
  for (const auto& row : hi.basetriangle.table) {
    if (row[2] == 0) continue;
    if (row[1] > (row[0] + 1.0) * 1.15) within_plus_one = false;
  }
  res.basetriangle_stable = res.basetriangle_growth < 1.5 && within_plus_one;
  return res;
}

}  // namespace cgeo
