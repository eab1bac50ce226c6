#include "cgeo/morse.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include "cgeo/parallel.hpp"

namespace cgeo {

GaugeGrid GaugeGrid::default_grid() {
  GaugeGrid g;
  for (Scalar K : {1.0, 1.5, 2.0, 3.0})
    for (Scalar C : {0.0, 1.0, 2.0, 4.0}) g.cells.emplace_back(K, C);
  return g;
}

Index GaugeGrid::find(Scalar K, Scalar C) const {
  for (size_t i = 0; i < cells.size(); ++i)
    if (std::abs(cells[i].first - K) < 1e-12 && std::abs(cells[i].second - C) < 1e-12)
      return static_cast<Index>(i);
  return -1;
}

bool GaugeTable::within(const GaugeTable& bound) const {
  if (grid.cells.size() != bound.grid.cells.size())
    throw ValidationError("gauge tables on different grids");
  const Vec& b = bound.has_upper() ? bound.upper : bound.lower;
  for (Index i = 0; i < lower.size(); ++i)
    if (lower[i] > b[i] + 1e-9) return false;
  return true;
}

QuasiCheck is_quasi_geodesic(const Space& s, const std::vector<SpacePoint>& path,
                             Scalar K, Scalar C) {
  if (path.empty()) throw ValidationError("is_quasi_geodesic: empty path");
  if (K < 1 || C < 0) throw ValidationError("is_quasi_geodesic: need K >= 1, C >= 0");
  const Index L = static_cast<Index>(path.size());
  Vec params(L);
  params[0] = 0;
  for (Index i = 1; i < L; ++i)
    params[i] = params[i - 1] + s.dist(path[i - 1], path[i]);
  QuasiCheck res;
  res.violation = -kInf;
  for (Index i = 0; i < L; ++i)
    for (Index j = i + 1; j < L; ++j) {
      const Scalar gap = params[j] - params[i];
      const Scalar d = s.dist(path[i], path[j]);
      const Scalar v = std::max(d - (K * gap + C), gap / K - C - d);
      if (v > res.violation) {
        res.violation = v;
        res.worst = {i, j};
      }
    }
  if (L == 1) {
    res.violation = 0;
    res.worst = {0, 0};
  }
  res.ok = res.violation <= 1e-9;
  return res;
}

namespace {

// One witness candidate evaluated against every grid cell at once:
// requiredC[k] is the smallest C making the path a (K_k, C)-quasi-geodesic.
struct CandidateEval {
  bool usable = false;
  Vec required_c;
  Scalar deviation = 0;
};

CandidateEval evaluate_candidate(const Space& s, const Geodesic& g,
                                 const std::vector<SpacePoint>& path,
                                 const std::vector<Scalar>& ks, Scalar max_c) {
  CandidateEval ev;
  const Index L = static_cast<Index>(path.size());
  if (L < 2) return ev;
  Vec params(L);
  params[0] = 0;
  for (Index i = 1; i < L; ++i)
    params[i] = params[i - 1] + s.dist(path[i - 1], path[i]);
  const Index nk = static_cast<Index>(ks.size());
  ev.required_c.setZero(nk);
  const Scalar k_max = *std::max_element(ks.begin(), ks.end());
  // Coarse pass first so hopeless candidates die in O(L).
  const Index stride = std::max<Index>(1, L / 12);
  for (int pass = 0; pass < 2; ++pass) {
    const Index st = pass == 0 ? stride : 1;
    for (Index i = 0; i < L; i += st)
      for (Index j = i + st; j < L; j += st) {
        const Scalar gap = params[j] - params[i];
        const Scalar d = s.dist(path[i], path[j]);
        for (Index k = 0; k < nk; ++k) {
          const Scalar need = std::max(d - ks[k] * gap, gap / ks[k] - d);
          if (need > ev.required_c[k]) ev.required_c[k] = need;
        }
      }
    if (ev.required_c.minCoeff() > max_c + 1e-9) return ev;  // invalid everywhere
    // The loose lower-bound requirement at k_max decides fastest.
    if (pass == 0 && params[L - 1] / k_max - s.dist(path[0], path[L - 1]) > max_c + 1e-9)
      return ev;
  }
  ev.usable = true;
  Scalar dev = 0;
  for (const auto& p : path) dev = std::max(dev, dist_to_geodesic(s, p, g));
  ev.deviation = dev;
  return ev;
}

std::vector<SpacePoint> concat_paths(std::vector<SpacePoint> a,
                                     const std::vector<SpacePoint>& b) {
  if (!b.empty()) a.insert(a.end(), b.begin() + 1, b.end());
  return a;
}

std::vector<Index> landmark_subsample(const Space& s, int cap) {
  std::vector<Index> lm;
  const Index n = s.size();
  const Index stride = std::max<Index>(1, n / std::max(cap, 1));
  for (Index i = 0; i < n; i += stride) lm.push_back(i);
  // Deterministic shuffle so small budgets still sample the whole cloud
  // rather than a prefix of it.
  std::sort(lm.begin(), lm.end(), [](Index a, Index b) {
    auto ka = mix_seed(0x9E3779B9, static_cast<std::uint64_t>(a));
    auto kb = mix_seed(0x9E3779B9, static_cast<std::uint64_t>(b));
    return ka != kb ? ka < kb : a < b;
  });
  return lm;
}

}  // namespace

GaugeTable morse_gauge_lower(const Space& s, const Geodesic& g,
                             const GaugeGrid& grid, const WitnessSearchConfig& cfg) {
  if (g.pts.empty()) throw ValidationError("morse_gauge_lower: empty geodesic");
  GaugeTable out;
  out.grid = grid;
  const Index ncell = static_cast<Index>(grid.cells.size());
  out.lower.setZero(ncell);
  out.no_witness.assign(ncell, true);
  if (g.pts.size() < 2 || cfg.budget <= 0) return out;

  std::vector<Scalar> ks;
  for (auto& [K, C] : grid.cells)
    if (std::find(ks.begin(), ks.end(), K) == ks.end()) ks.push_back(K);
  Scalar max_c = 0;
  for (auto& [K, C] : grid.cells) max_c = std::max(max_c, C);

  const Index L = static_cast<Index>(g.pts.size());
  const std::vector<Index> anchors = {0, L / 4, L / 2, (3 * L) / 4, L - 1};
  const std::vector<Index> landmarks = landmark_subsample(s, cfg.landmark_cap);
  const size_t max_path = 3 * g.pts.size() + 120;

  // Candidate 0 block: alternate geodesics between the endpoints (these are
  // exact geodesics, so they witness every cell). Then deterministic
  // full-span landmark detours, then seeded two-leg detours.
  std::vector<std::vector<SpacePoint>> structured;
  if (s.kind != SpaceKind::PlaneWithRays && g.pts.front().id >= 0 &&
      g.pts.back().id >= 0) {
    auto alts = s.geodesics_all(g.pts.front().id, g.pts.back().id, 6);
    for (auto& a : alts) structured.push_back(a.pts);
  }

  const long n_struct = static_cast<long>(structured.size());
  const long n_lm = static_cast<long>(landmarks.size());
  const long total = std::min<long>(cfg.budget, n_struct + n_lm + cfg.budget);

  std::mutex mu;
  Vec best = Vec::Zero(ncell);
  std::vector<bool> witnessed(ncell, false);
  std::vector<long> best_ord(ncell, -1);
  std::vector<std::vector<SpacePoint>> best_path(cfg.keep_witnesses ? ncell : 0);

  parallel_blocks(total, cfg.jobs, [&](Index b, Index e) {
    Vec local = Vec::Zero(ncell);
    std::vector<bool> lw(ncell, false);
    std::vector<long> lord(ncell, -1);
    std::vector<std::vector<SpacePoint>> lpath(cfg.keep_witnesses ? ncell : 0);
    for (Index c = b; c < e; ++c) {
      std::vector<SpacePoint> path;
      if (c < n_struct) {
        path = structured[c];
      } else if (c < n_struct + n_lm) {
        const SpacePoint lm = s.point(landmarks[c - n_struct]);
        path = concat_paths(s.geodesic_points(g.pts.front(), lm),
                            s.geodesic_points(lm, g.pts.back()));
      } else {
        std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(c)));
        Index i = static_cast<Index>(rng() % static_cast<std::uint64_t>(anchors.size()));
        Index j = static_cast<Index>(rng() % static_cast<std::uint64_t>(anchors.size()));
        Index ai = anchors[std::min(i, j)], aj = anchors[std::max(i, j)];
        if (ai == aj) continue;
        const SpacePoint lm1 =
            s.point(landmarks[rng() % static_cast<std::uint64_t>(n_lm)]);
        path = s.geodesic_points(g.pts[ai], lm1);
        if (rng() % 2 == 0) {
          const SpacePoint lm2 =
              s.point(landmarks[rng() % static_cast<std::uint64_t>(n_lm)]);
          path = concat_paths(std::move(path), s.geodesic_points(lm1, lm2));
          path = concat_paths(std::move(path), s.geodesic_points(lm2, g.pts[aj]));
        } else {
          path = concat_paths(std::move(path), s.geodesic_points(lm1, g.pts[aj]));
        }
      }
      if (path.size() < 2 || path.size() > max_path) continue;
      CandidateEval ev = evaluate_candidate(s, g, path, ks, max_c);
      if (!ev.usable) continue;
      for (Index cell = 0; cell < ncell; ++cell) {
        auto [K, C] = grid.cells[cell];
        const Index ki = static_cast<Index>(
            std::find(ks.begin(), ks.end(), K) - ks.begin());
        if (ev.required_c[ki] <= C + 1e-9) {
          lw[cell] = true;
          if (ev.deviation > local[cell] ||
              (ev.deviation == local[cell] && (lord[cell] < 0 || c < lord[cell]))) {
            local[cell] = ev.deviation;
            lord[cell] = c;
            if (cfg.keep_witnesses) lpath[cell] = path;
          }
        }
      }
    }
    std::lock_guard<std::mutex> lk(mu);
    for (Index cell = 0; cell < ncell; ++cell) {
      if (lw[cell]) witnessed[cell] = true;
      // Merge by deviation, ties by candidate ordinal: schedule-independent.
      if (local[cell] > best[cell] ||
          (lord[cell] >= 0 && local[cell] == best[cell] &&
           (best_ord[cell] < 0 || lord[cell] < best_ord[cell]))) {
        best[cell] = local[cell];
        best_ord[cell] = lord[cell];
        if (cfg.keep_witnesses) best_path[cell] = std::move(lpath[cell]);
      }
    }
  });

  out.lower = best;
  out.no_witness.assign(witnessed.size(), false);
  for (Index cell = 0; cell < ncell; ++cell) out.no_witness[cell] = !witnessed[cell];
  if (cfg.keep_witnesses) out.witnesses = std::move(best_path);
  return out;
}

ContractionReport contraction_constant(const Space& s, const Geodesic& g,
                                       const BallGridConfig& cfg) {
  if (g.pts.empty()) throw ValidationError("contraction_constant: empty geodesic");
  ContractionReport rep;
  const Index n = s.size();
  const Index gl = static_cast<Index>(g.pts.size());

  // Per cloud point: distance to g and the param range of its projection
  // (every minimizer within 1e-9). Projection diameters are param gaps
  // because g is a geodesic.
  Vec dist_g(n), pmin(n), pmax(n);
  parallel_blocks(n, 0, [&](Index b, Index e) {
    for (Index q = b; q < e; ++q) {
      const SpacePoint qp = s.point(q);
      Scalar best = kInf;
      for (Index k = 0; k < gl; ++k) best = std::min(best, s.dist(qp, g.pts[k]));
      Scalar lo = kInf, hi = -kInf;
      for (Index k = 0; k < gl; ++k) {
        if (s.dist(qp, g.pts[k]) <= best + 1e-9) {
          lo = std::min(lo, g.params[k]);
          hi = std::max(hi, g.params[k]);
        }
      }
      dist_g[q] = best;
      pmin[q] = lo;
      pmax[q] = hi;
    }
  });

  std::vector<Index> centers;
  const Index stride = std::max<Index>(1, n / cfg.center_cap);
  for (Index c = 0; c < n; c += stride)
    if (dist_g[c] > cfg.min_radius) centers.push_back(c);
  rep.tested_balls = static_cast<long>(centers.size());
  if (centers.empty()) return rep;
  rep.empty = false;

  std::mutex mu;
  parallel_blocks(static_cast<Index>(centers.size()), 0, [&](Index b, Index e) {
    Scalar best = -1;
    Index best_c = -1;
    Scalar best_r = 0;
    for (Index ci = b; ci < e; ++ci) {
      const Index c = centers[ci];
      const Scalar r = dist_g[c] - 1e-6;
      const SpacePoint cp = s.point(c);
      Scalar lo = kInf, hi = -kInf;
      for (Index q = 0; q < n; ++q) {
        if (s.dist(cp, s.point(q)) > r) continue;
        lo = std::min(lo, pmin[q]);
        hi = std::max(hi, pmax[q]);
      }
      const Scalar diam = hi >= lo ? hi - lo : 0;
      if (diam > best || (diam == best && c < best_c)) {
        best = diam;
        best_c = c;
        best_r = r;
      }
    }
    std::lock_guard<std::mutex> lk(mu);
    if (best > rep.constant ||
        (best == rep.constant && best_c >= 0 &&
         (rep.witness_center < 0 || best_c < rep.witness_center))) {
      rep.constant = std::max(best, 0.0);
      rep.witness_center = best_c;
      rep.witness_radius = best_r;
    }
  });
  return rep;
}

namespace {

void require_closed(const Space& s, const Geodesic& a, const Geodesic& b,
                    const char* which) {
  // Consecutive sides share either the boundary ray or the interior endpoint.
  if (a.ray_to >= 0 || b.ray_from >= 0) {
    if (a.ray_to != b.ray_from)
      throw ValidationError(std::string("slim_constant: sides do not close at ") + which);
    return;
  }
  if (s.dist(a.pts.back(), b.pts.front()) > 1e-6)
    throw ValidationError(std::string("slim_constant: sides do not close at ") + which);
}

Scalar side_excess(const Space& s, const Geodesic& side, const Geodesic& o1,
                   const Geodesic& o2) {
  Scalar worst = 0;
  for (const auto& p : side.pts) {
    Scalar d = std::min(dist_to_geodesic(s, p, o1), dist_to_geodesic(s, p, o2));
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

Scalar slim_constant(const Space& s, const Geodesic& ab, const Geodesic& bc,
                     const Geodesic& ca) {
  require_closed(s, ab, bc, "b");
  require_closed(s, bc, ca, "c");
  require_closed(s, ca, ab, "a");
  return std::max({side_excess(s, ab, bc, ca), side_excess(s, bc, ca, ab),
                   side_excess(s, ca, ab, bc)});
}

GaugeTable gauge_from_contraction(Scalar contraction, const GaugeGrid& grid,
                                  const ConversionConfig& conv) {
  if (contraction < 0) throw ValidationError("negative contraction constant");
  GaugeTable t;
  t.grid = grid;
  const Index ncell = static_cast<Index>(grid.cells.size());
  t.lower.setZero(ncell);
  t.upper.resize(ncell);
  for (Index i = 0; i < ncell; ++i) {
    auto [K, C] = grid.cells[i];
    t.upper[i] = conv.contraction_coef * contraction * K * K +
                 conv.additive_coef * C + conv.offset;
  }
  t.certified = true;  // modulo the documented conversion
  t.no_witness.assign(ncell, true);
  return t;
}

StratifyResult stratify(const Space& s, Index basepoint, const GaugeTable& bound,
                        const StratifyConfig& cfg,
                        std::span<const Index> candidates) {
  std::vector<Index> all;
  if (candidates.empty()) {
    all.resize(s.size());
    std::iota(all.begin(), all.end(), Index{0});
    candidates = all;
  }
  StratifyResult res;
  std::mutex mu;
  WitnessSearchConfig wcfg;
  wcfg.budget = cfg.witness_budget;
  wcfg.seed = cfg.seed;
  wcfg.jobs = 1;
  parallel_blocks(static_cast<Index>(candidates.size()), cfg.jobs,
                  [&](Index b, Index e) {
    std::vector<Index> members, inconclusive;
    for (Index ci = b; ci < e; ++ci) {
      const Index x = candidates[ci];
      if (x == basepoint) {
        members.push_back(x);
        continue;
      }
      bool exhaustive = true;
      auto geos = s.geodesics_all(x, basepoint, cfg.geodesic_budget, &exhaustive);
      if (!exhaustive) {
        inconclusive.push_back(x);
        continue;
      }
      bool ok = true;
      for (const auto& g : geos) {
        GaugeTable witnessed = morse_gauge_lower(s, g, bound.grid, wcfg);
        if (!witnessed.within(bound)) {
          ok = false;
          break;
        }
      }
      if (ok) members.push_back(x);
    }
    std::lock_guard<std::mutex> lk(mu);
    res.members.insert(res.members.end(), members.begin(), members.end());
    res.inconclusive.insert(res.inconclusive.end(), inconclusive.begin(),
                            inconclusive.end());
  });
  std::sort(res.members.begin(), res.members.end());
  std::sort(res.inconclusive.begin(), res.inconclusive.end());
  return res;
}

}  // namespace cgeo
