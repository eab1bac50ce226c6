#include "cgeo/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "cgeo/parallel.hpp"

namespace cgeo {

std::vector<TripleCenter> enumerate_triples(const Space& s,
                                            const TripleEnumConfig& cfg) {
  const int nr = static_cast<int>(s.rays.size());
  MetricMatrix pc = MetricMatrix::Zero(nr, nr);
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b) {
      Scalar v = contraction_constant(s, s.ray_geodesic(a, b)).constant;
      pc(a, b) = v;
      pc(b, a) = v;
    }
  CenterConfig ccfg;
  ccfg.rep_budget = cfg.rep_budget;
  std::vector<TripleCenter> out;
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b) {
      if (pc(a, b) > cfg.n0_contraction + 1e-9) continue;
      for (int c = b + 1; c < nr; ++c) {
        if (pc(a, c) > cfg.n0_contraction + 1e-9 ||
            pc(b, c) > cfg.n0_contraction + 1e-9)
          continue;
        CoarseCenter cc = coarse_center(s, a, b, c, ccfg);
        TripleCenter tc;
        tc.triple = {a, b, c};
        tc.center = cc.point;
        tc.k_value = cc.k_value;
        tc.diameter = cc.set.diameter;
        out.push_back(tc);
      }
    }
  return out;
}

Scalar cover_radius(const Space& s, const std::vector<TripleCenter>& triples,
                    std::span<const Index> sample) {
  if (triples.empty())
    throw PreconditionError(
        "cover_radius: the boundary has fewer than three points at this gauge");
  std::vector<Index> all;
  if (sample.empty()) {
    const Index stride = std::max<Index>(1, s.size() / 500);
    for (Index i = 0; i < s.size(); i += stride) all.push_back(i);
    sample = all;
  }
  Scalar worst = 0;
  for (Index x : sample) {
    Scalar best = kInf;
    for (const auto& t : triples) best = std::min(best, s.dist(x, t.center));
    worst = std::max(worst, best);
  }
  return worst + 1.0;
}

Index ExtensionMap::value_at(Index source_point) const {
  auto it = std::lower_bound(sample.begin(), sample.end(), source_point);
  if (it == sample.end() || *it != source_point) return -1;
  return values[static_cast<size_t>(it - sample.begin())];
}

ExtensionMap extend(const Space& src, const Space& dst, const BoundaryMap& f,
                    const ExtensionConfig& cfg) {
  ExtensionMap ext;
  ext.triples = enumerate_triples(src, cfg.triples);
  if (ext.triples.empty())
    throw PreconditionError("extend: no qualifying triple in the source");
  CenterConfig ccfg;
  ccfg.rep_budget = cfg.triples.rep_budget;
  Scalar diam = 0;
  for (const auto& t : ext.triples) {
    CoarseCenter cc = coarse_center(dst, f(t.triple[0]), f(t.triple[1]),
                                    f(t.triple[2]), ccfg);
    TripleCenter img;
    img.triple = {f(t.triple[0]), f(t.triple[1]), f(t.triple[2])};
    img.center = cc.point;
    img.k_value = cc.k_value;
    img.diameter = cc.set.diameter;
    ext.image_triples.push_back(img);
    diam = std::max({diam, t.diameter, img.diameter});
  }
  ext.center_diameter = diam;
  {
    std::ostringstream os;
    os << "contraction<=" << cfg.triples.n0_contraction;
    ext.n0_label = os.str();
    ext.n1_label = ext.n0_label + " (image)";
  }

  // Sample: stride subsample, every enumerated center, and the marked ray
  // tails (boundary agreement probes them).
  std::set<Index> sample_set;
  const Index stride = std::max<Index>(1, src.size() / cfg.sample_cap);
  for (Index i = 0; i < src.size(); i += stride) sample_set.insert(i);
  for (const auto& t : ext.triples) sample_set.insert(t.center);
  for (const auto& r : src.rays)
    for (size_t k = 0; k < r.points.size(); ++k)
      if (src.dist(r.base, r.points[k]) >= src.truncation_radius / 2)
        sample_set.insert(r.points[k]);
  ext.sample.assign(sample_set.begin(), sample_set.end());

  ext.R = cover_radius(src, ext.triples, ext.sample);
  ext.values.reserve(ext.sample.size());
  ext.chosen_triple.reserve(ext.sample.size());
  for (Index x : ext.sample) {
    int best = -1;
    Scalar best_d = kInf;
    for (size_t t = 0; t < ext.triples.size(); ++t) {
      Scalar d = src.dist(x, ext.triples[t].center);
      if (d < best_d - 1e-12) {
        best_d = d;
        best = static_cast<int>(t);
      }
    }
    if (best < 0 || best_d > ext.R) {
      std::ostringstream os;
      os << "extend: no qualifying triple within R of point " << x;
      throw PreconditionError(os.str());
    }
    ext.chosen_triple.push_back(best);
    ext.values.push_back(ext.image_triples[best].center);
  }
  return ext;
}

QiFit fit_qi_constants(const Space& src, const Space& dst, const ExtensionMap& ext,
                       Scalar c_cap) {
  if (ext.sample.size() < 2)
    throw ValidationError("fit_qi_constants: need at least two mapped points");
  QiFit fit;
  fit.c_cap = c_cap > 0 ? c_cap : 2.0 * (ext.R + ext.center_diameter) + 2.0;
  const Index n = static_cast<Index>(ext.sample.size());
  std::vector<std::pair<Scalar, Scalar>> cloud;  // (d_X, d_Y)
  cloud.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  Scalar d_unit = 0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Scalar dx = src.dist(ext.sample[i], ext.sample[j]);
      Scalar dy = dst.dist(ext.values[i], ext.values[j]);
      cloud.emplace_back(dx, dy);
      if (dx <= 1.0 + 1e-9) d_unit = std::max(d_unit, dy);
    }
  fit.pairs = static_cast<long>(cloud.size());
  fit.D = d_unit;
  // Required additive constant at a given K; decreasing in K, and pairs with
  // d_X = 0 only constrain the additive side.
  auto c_of = [&](Scalar K) {
    Scalar c = 0;
    for (auto& [dx, dy] : cloud)
      c = std::max({c, dy - K * dx, dx / K - dy});
    return c;
  };
  Scalar k_hi = 1;
  while (c_of(k_hi) > fit.c_cap && k_hi < 1e6) k_hi *= 2;
  if (c_of(k_hi) > fit.c_cap) {
    fit.K = k_hi;
    fit.C = c_of(k_hi);
    return fit;
  }
  Scalar k_lo = 1;
  if (c_of(k_lo) <= fit.c_cap) {
    fit.K = 1;
    fit.C = c_of(1);
    return fit;
  }
  for (int it = 0; it < 60; ++it) {
    Scalar mid = 0.5 * (k_lo + k_hi);
    if (c_of(mid) <= fit.c_cap)
      k_hi = mid;
    else
      k_lo = mid;
  }
  fit.K = k_hi;
  fit.C = c_of(k_hi);
  return fit;
}

DefectReport quasi_inverse_defect(const Space& src, const Space& dst,
                                  const ExtensionMap& ext_f,
                                  const ExtensionMap& ext_finv) {
  DefectReport rep;
  for (size_t i = 0; i < ext_finv.sample.size(); ++i) {
    const Index y = ext_finv.sample[i];
    const Index x = ext_finv.values[i];   // in the source space
    const Index y1 = ext_f.value_at(x);
    if (y1 < 0) {
      ++rep.skipped;
      continue;
    }
    ++rep.used;
    rep.defect = std::max(rep.defect, dst.dist(y, y1));
    (void)src;
  }
  return rep;
}

Scalar EtaTable::at(Scalar t) const {
  for (size_t i = 0; i < theta.size(); ++i)
    if (theta[i] >= t - 1e-12) return eta[i];
  return eta.empty() ? 0 : eta.back();
}

EtaTable eta_modulus(const Space& src, const Space& dst, const ExtensionMap& ext,
                     std::span<const Scalar> theta_grid) {
  static const std::vector<Scalar> kDefault{0.5, 1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<Scalar> grid(theta_grid.begin(), theta_grid.end());
  if (grid.empty()) grid = kDefault;
  EtaTable table;
  for (Scalar theta : grid) {
    Scalar worst = -1;
    for (size_t i = 0; i < ext.triples.size(); ++i)
      for (size_t j = i + 1; j < ext.triples.size(); ++j) {
        Scalar ds = src.dist(ext.triples[i].center, ext.triples[j].center);
        if (ds > theta) continue;
        Scalar di = dst.dist(ext.image_triples[i].center,
                             ext.image_triples[j].center);
        worst = std::max(worst, di);
      }
    if (worst >= 0) {
      table.theta.push_back(theta);
      table.eta.push_back(worst);
    }
  }
  for (size_t i = 1; i < table.eta.size(); ++i)
    table.eta[i] = std::max(table.eta[i], table.eta[i - 1]);
  return table;
}

AgreementReport boundary_agreement(const Space& src, const Space& dst,
                                   const ExtensionMap& ext, const BoundaryMap& f) {
  AgreementReport rep;
  rep.all_pass = true;
  const Scalar ambiguity_margin = 0.2;
  const Scalar support_radius = 0.5;
  for (int r = 0; r < static_cast<int>(src.rays.size()); ++r) {
    rep.expected.push_back(f(r));
    Scalar base_gap = kInf;
    for (const auto& t : ext.triples)
      base_gap = std::min(base_gap, src.dist(t.center, src.rays[r].base));
    const bool sup = base_gap <= support_radius;
    rep.supported.push_back(sup);
    if (!sup) ++rep.unsupported;
    // Image of the tail probes of this ray.
    std::vector<Index> images;
    for (Index p : src.rays[r].points) {
      if (src.dist(src.rays[r].base, p) < src.truncation_radius / 2) continue;
      Index v = ext.value_at(p);
      if (v >= 0) images.push_back(v);
    }
    if (images.empty()) {
      rep.classified.push_back(-1);
      ++rep.inconclusive;
      if (sup) rep.all_pass = false;
      continue;
    }
    // Directed Hausdorff score of the image tail against each target ray.
    int best_ray = -1;
    Scalar best = kInf, second = kInf;
    for (int tr = 0; tr < static_cast<int>(dst.rays.size()); ++tr) {
      Scalar score = 0;
      for (Index img : images) {
        Scalar d = kInf;
        for (Index q : dst.rays[tr].points) d = std::min(d, dst.dist(img, q));
        score = std::max(score, d);
      }
      if (score < best) {
        second = best;
        best = score;
        best_ray = tr;
      } else if (score < second) {
        second = score;
      }
    }
    if (second - best < ambiguity_margin) {
      rep.classified.push_back(-1);
      ++rep.inconclusive;
      if (sup) rep.all_pass = false;
      continue;
    }
    rep.classified.push_back(best_ray);
    if (sup && best_ray != f(r)) rep.all_pass = false;
  }
  return rep;
}

}  // namespace cgeo
