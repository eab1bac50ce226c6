#include "cgeo/bmaps.hpp"

#include "cgeo/centers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "cgeo/parallel.hpp"

namespace cgeo {

BoundaryMap BoundaryMap::inverse() const {
  BoundaryMap inv;
  inv.image = preimage;
  inv.preimage = image;
  inv.label = label + "_inv";
  return inv;
}

BoundaryMap make_boundary_map(
    const Space& src, const Space& dst,
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const std::string& label) {
  const int ns = static_cast<int>(src.rays.size());
  const int nt = static_cast<int>(dst.rays.size());
  if (ns != nt)
    throw ValidationError("boundary map: ray sets have different sizes");
  BoundaryMap f;
  f.label = label;
  f.image.assign(ns, -1);
  f.preimage.assign(nt, -1);
  auto assign = [&](int s_ord, int t_ord, const std::string& what) {
    if (f.image[s_ord] >= 0 || f.preimage[t_ord] >= 0)
      throw ValidationError("boundary map: not a bijection at " + what);
    f.image[s_ord] = t_ord;
    f.preimage[t_ord] = s_ord;
  };
  for (const auto& [from, to] : pairs) {
    int s_ord = src.ray_by_label(from);
    int t_ord = dst.ray_by_label(to);
    if (s_ord < 0) throw ValidationError("boundary map: unknown source ray " + from);
    if (t_ord < 0) throw ValidationError("boundary map: unknown target ray " + to);
    assign(s_ord, t_ord, from);
  }
  for (int r = 0; r < ns; ++r) {
    if (f.image[r] >= 0) continue;
    int t_ord = dst.ray_by_label(src.rays[r].label);
    if (t_ord < 0)
      throw ValidationError("boundary map: no default image for ray " +
                            src.rays[r].label);
    assign(r, t_ord, src.rays[r].label);
  }
  return f;
}

namespace {

std::string pair_label(const Space& s, int a, int b) {
  return "(" + s.rays[a].label + "," + s.rays[b].label + ")";
}

}  // namespace

ModulusReport check_two_stable(const Space& src, const Space& dst,
                               const BoundaryMap& f, const TwoStableConfig& cfg) {
  ModulusReport rep;
  rep.kind = ModulusKind::TwoStable;
  GaugeGrid g30;
  g30.cells.emplace_back(3.0, 0.0);
  WitnessSearchConfig wcfg;
  wcfg.budget = cfg.gauge_budget;
  wcfg.seed = cfg.seed;

  Scalar max_excess = 0, growth_factor = 1, max_image = 0;
  const int nr = static_cast<int>(src.rays.size());
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b) {
      Geodesic g = src.ray_geodesic(a, b);
      ContractionReport sc = contraction_constant(src, g);
      if (sc.constant > cfg.contraction_in + 1e-9) continue;
      Geodesic img = dst.ray_geodesic(f(a), f(b));
      ContractionReport ic = contraction_constant(dst, img);
      Scalar sg = morse_gauge_lower(src, g, g30, wcfg).lower[0];
      Scalar ig = morse_gauge_lower(dst, img, g30, wcfg).lower[0];
      rep.table.push_back({sc.constant, ic.constant, sg, ig});
      ++rep.sample_count;
      Scalar excess = ic.constant - sc.constant;
      Scalar factor = sc.constant > 1e-9 ? ic.constant / sc.constant
                                         : (ic.constant + 1) / (sc.constant + 1);
      if (excess > max_excess ||
          (excess == max_excess && rep.worst_witness.empty())) {
        rep.worst_witness = pair_label(src, a, b);
      }
      max_excess = std::max(max_excess, excess);
      growth_factor = std::max(growth_factor, factor);
      max_image = std::max(max_image, ic.constant);
    }
  rep.flagged_empty = rep.sample_count == 0;
  rep.constants["contraction_in"] = cfg.contraction_in;
  rep.constants["max_excess"] = max_excess;
  rep.constants["growth_factor"] = growth_factor;
  rep.constants["max_image_contraction"] = max_image;
  return rep;
}

ModulusReport check_basetriangle_stable(const Space& src, const Space& dst,
                                        const BoundaryMap& f,
                                        const BasetriangleConfig& cfg) {
  ModulusReport rep;
  rep.kind = ModulusKind::BasetriangleStable;
  const int nr = static_cast<int>(src.rays.size());

  // Pairwise contraction of bi-infinite ray geodesics, reused for both the
  // triple filter and the stratum membership scans.
  auto pair_contraction = [](const Space& s) {
    const int n = static_cast<int>(s.rays.size());
    MetricMatrix c = MetricMatrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        Scalar v = contraction_constant(s, s.ray_geodesic(a, b)).constant;
        c(a, b) = v;
        c(b, a) = v;
      }
    return c;
  };
  MetricMatrix src_pc = pair_contraction(src);

  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a < nr; ++a)
    for (int b = a + 1; b < nr; ++b) {
      if (src_pc(a, b) > cfg.n0_contraction + 1e-9) continue;
      for (int c = b + 1; c < nr; ++c)
        if (src_pc(a, c) <= cfg.n0_contraction + 1e-9 &&
            src_pc(b, c) <= cfg.n0_contraction + 1e-9)
          triples.push_back({a, b, c});
    }
  if (triples.empty()) {
    rep.flagged_empty = true;
    rep.constants["n0_contraction"] = cfg.n0_contraction;
    return rep;
  }

  CenterConfig ccfg;
  ccfg.rep_budget = cfg.rep_budget;
  auto center_samples = [&](const Space& s, const std::array<int, 3>& t) {
    CoarseCenter cc = coarse_center(s, t[0], t[1], t[2], ccfg);
    std::vector<Index> picks{cc.point};
    const auto& pts = cc.set.points;
    const size_t extra = std::min<size_t>(cfg.center_samples - 1, pts.size());
    for (size_t i = 0; i < extra; ++i) {
      Index q = pts[i * pts.size() / std::max<size_t>(extra, 1)];
      if (std::find(picks.begin(), picks.end(), q) == picks.end())
        picks.push_back(q);
    }
    return picks;
  };

  std::map<std::pair<Index, int>, Scalar> src_cache, dst_cache;
  auto point_ray_contraction = [](const Space& s, Index x0, int ray,
                                  std::map<std::pair<Index, int>, Scalar>& cache) {
    auto key = std::make_pair(x0, ray);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Scalar v = contraction_constant(s, s.point_to_ray_geodesic(x0, ray)).constant;
    cache.emplace(key, v);
    return v;
  };

  Scalar worst_ratio = 0;
  for (const auto& t : triples) {
    std::array<int, 3> it{f(t[0]), f(t[1]), f(t[2])};
    auto x0s = center_samples(src, t);
    auto y0s = center_samples(dst, it);
    for (Scalar c_in : cfg.gauge_grid) {
      Scalar achieved = 0;
      long n_members = 0;
      for (Index x0 : x0s) {
        std::vector<int> members;
        for (int r = 0; r < nr; ++r)
          if (point_ray_contraction(src, x0, r, src_cache) <= c_in + 1e-9)
            members.push_back(r);
        n_members = std::max<long>(n_members, static_cast<long>(members.size()));
        for (Index y0 : y0s)
          for (int r : members)
            achieved = std::max(
                achieved, point_ray_contraction(dst, y0, f(r), dst_cache));
      }
      rep.table.push_back({c_in, achieved, static_cast<Scalar>(n_members),
                           static_cast<Scalar>(n_members)});
      ++rep.sample_count;
      if (n_members > 0) {
        Scalar ratio = achieved / c_in;
        if (ratio > worst_ratio) {
          worst_ratio = ratio;
          std::ostringstream os;
          os << pair_label(src, t[0], t[1]) << "+" << src.rays[t[2]].label
             << " C=" << c_in;
          rep.worst_witness = os.str();
        }
      }
    }
  }
  rep.constants["n0_contraction"] = cfg.n0_contraction;
  rep.constants["triples"] = static_cast<Scalar>(triples.size());
  Scalar max_achieved = 0;
  for (auto& row : rep.table) max_achieved = std::max(max_achieved, row[1]);
  rep.constants["max_achieved"] = max_achieved;
  return rep;
}

namespace {

struct LogPairs {
  std::vector<Scalar> u, v;  // -log distances, source/target
  std::vector<std::pair<int, int>> who;
  bool collapsed = false;
};

LogPairs gather_log_pairs(const BoundaryStratum& src, const BoundaryStratum& dst,
                          const BoundaryMap& f, bool* missing) {
  LogPairs lp;
  *missing = false;
  const Index m = static_cast<Index>(src.members.size());
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      int fi = dst.member_pos(f(src.members[i]));
      int fj = dst.member_pos(f(src.members[j]));
      if (fi < 0 || fj < 0) {
        *missing = true;
        continue;
      }
      Scalar dx = src.metric(i, j);
      Scalar dy = dst.metric(fi, fj);
      if (dx <= 0 || dy <= 0) {
        lp.collapsed = true;
        continue;
      }
      lp.u.push_back(-std::log(dx));
      lp.v.push_back(-std::log(dy));
      lp.who.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return lp;
}

}  // namespace

ModulusReport fit_biholder(const BoundaryStratum& src, const BoundaryStratum& dst,
                           const BoundaryMap& f) {
  ModulusReport rep;
  rep.kind = ModulusKind::Biholder;
  bool missing = false;
  LogPairs lp = gather_log_pairs(src, dst, f, &missing);
  rep.infeasible = lp.collapsed || missing;
  rep.sample_count = static_cast<long>(lp.u.size());
  if (lp.u.empty()) {
    rep.flagged_empty = true;
    return rep;
  }
  // With distances <= 1 both constraints only loosen as alpha1 decreases, so
  // alpha1 = 1 is optimal and c(alpha2) = max |U - alpha2 V| is convex.
  auto cost = [&](Scalar a2) {
    Scalar c = 0;
    for (size_t p = 0; p < lp.u.size(); ++p)
      c = std::max(c, std::abs(lp.u[p] - a2 * lp.v[p]));
    return c;
  };
  Scalar lo = 1e-3, hi = 1e3;
  for (int it = 0; it < 240; ++it) {
    Scalar m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (cost(m1) <= cost(m2))
      hi = m2;
    else
      lo = m1;
  }
  Scalar a2 = 0.5 * (lo + hi);
  Scalar c = cost(a2);
  size_t worst = 0;
  for (size_t p = 0; p < lp.u.size(); ++p)
    if (std::abs(lp.u[p] - a2 * lp.v[p]) >= c - 1e-12) worst = p;
  rep.constants["C"] = std::exp(c);
  rep.constants["alpha1"] = 1.0;
  rep.constants["alpha2"] = a2;
  std::ostringstream os;
  os << "members " << lp.who[worst].first << "," << lp.who[worst].second;
  rep.worst_witness = os.str();
  return rep;
}

Scalar psi_power(Scalar alpha, Scalar lambda, Scalar t) {
  if (t <= 0) throw ValidationError("psi_power: t must be positive");
  return t < 1 ? lambda * std::pow(t, 1.0 / alpha) : lambda * std::pow(t, alpha);
}

ModulusReport fit_quasisymmetry(const BoundaryStratum& src,
                                const BoundaryStratum& dst, const BoundaryMap& f) {
  ModulusReport rep;
  rep.kind = ModulusKind::PowerQS;
  const Index m = static_cast<Index>(src.members.size());
  if (m < 3) throw ValidationError("fit_quasisymmetry: need at least 3 members");
  std::vector<std::pair<Scalar, Scalar>> samples;
  std::vector<std::array<int, 3>> who;
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      for (Index c = 0; c < m; ++c) {
        if (a == b || b == c || a == c) continue;
        int fa = dst.member_pos(f(src.members[a]));
        int fb = dst.member_pos(f(src.members[b]));
        int fc = dst.member_pos(f(src.members[c]));
        if (fa < 0 || fb < 0 || fc < 0) {
          rep.infeasible = true;
          continue;
        }
        Scalar dab = src.metric(a, b), dac = src.metric(a, c);
        Scalar iab = dst.metric(fa, fb), iac = dst.metric(fa, fc);
        if (dac <= 0 || iac <= 0 || dab <= 0 || iab <= 0)
          throw ValidationError("fit_quasisymmetry: coincident members");
        samples.emplace_back(dab / dac, iab / iac);
        who.push_back({static_cast<int>(a), static_cast<int>(b),
                       static_cast<int>(c)});
      }
  rep.sample_count = static_cast<long>(samples.size());
  if (samples.empty()) {
    rep.flagged_empty = true;
    return rep;
  }
  auto lambda_for = [&](Scalar alpha) {
    Scalar lam = 0;
    for (auto& [t, sv] : samples) lam = std::max(lam, sv / psi_power(alpha, 1.0, t));
    return lam;
  };
  // Smallest exponent on a fixed grid whose residual coefficient matches the
  // asymptotic floor; keeps the identity at (alpha, lambda) = (1, 1).
  std::vector<Scalar> alphas;
  for (int k = 0; k <= 96; ++k) alphas.push_back(std::pow(2.0, k / 16.0));
  Scalar floor_lambda = std::max(1.0, lambda_for(alphas.back()));
  Scalar alpha = alphas.back(), lambda = floor_lambda;
  for (Scalar a : alphas) {
    Scalar lam = lambda_for(a);
    if (lam <= floor_lambda * 1.001) {
      alpha = a;
      lambda = lam;
      break;
    }
  }
  size_t worst = 0;
  Scalar slack = kInf;
  for (size_t p = 0; p < samples.size(); ++p) {
    Scalar s = psi_power(alpha, lambda, samples[p].first) - samples[p].second;
    if (s < slack) {
      slack = s;
      worst = p;
    }
  }
  rep.constants["alpha"] = alpha;
  rep.constants["lambda"] = lambda;
  std::ostringstream os;
  os << "triple " << who[worst][0] << "," << who[worst][1] << "," << who[worst][2];
  rep.worst_witness = os.str();
  return rep;
}

ModulusReport fit_quasiconformal(const BoundaryStratum& src,
                                 const BoundaryStratum& dst, const BoundaryMap& f) {
  ModulusReport rep;
  rep.kind = ModulusKind::StronglyQC;
  const Index m = static_cast<Index>(src.members.size());
  long skipped_empty = 0;
  std::vector<std::pair<Scalar, Scalar>> samples;  // (r, r')
  Scalar worst_ratio = 0;
  for (Index x = 0; x < m; ++x) {
    int fx = dst.member_pos(f(src.members[x]));
    if (fx < 0) {
      rep.infeasible = true;
      continue;
    }
    std::vector<Scalar> dists;
    for (Index j = 0; j < m; ++j)
      if (j != x && src.metric(x, j) > 0) dists.push_back(src.metric(x, j));
    std::sort(dists.begin(), dists.end());
    dists.erase(std::unique(dists.begin(), dists.end(),
                            [](Scalar a, Scalar b) { return std::abs(a - b) < 1e-12; }),
                dists.end());
    for (size_t i = 0; i < dists.size(); ++i)
      for (size_t j = i; j < dists.size(); ++j) {
        const Scalar a = dists[i], outer = dists[j];
        Scalar lo = kInf, hi = 0;
        for (Index q = 0; q < m; ++q) {
          if (q == x) continue;
          Scalar d = src.metric(x, q);
          if (d < a - 1e-12 || d > outer + 1e-12) continue;
          int fq = dst.member_pos(f(src.members[q]));
          if (fq < 0) continue;
          Scalar id = dst.metric(fx, fq);
          lo = std::min(lo, id);
          hi = std::max(hi, id);
        }
        if (hi <= 0) {
          ++skipped_empty;
          continue;
        }
        Scalar r = outer / a;
        Scalar rp = hi / lo;
        samples.emplace_back(r, rp);
        if (rp / r > worst_ratio) {
          worst_ratio = rp / r;
          std::ostringstream os;
          os << "center " << src.members[x] << " a=" << a << " r=" << r;
          rep.worst_witness = os.str();
        }
      }
  }
  rep.sample_count = static_cast<long>(samples.size());
  rep.constants["skipped_empty"] = static_cast<Scalar>(skipped_empty);
  if (samples.empty()) {
    rep.flagged_empty = true;
    return rep;
  }
  std::sort(samples.begin(), samples.end());
  // phi(r): max image ratio among annuli with ratio <= r (monotone envelope).
  Scalar run = 0;
  for (size_t i = 0; i < samples.size(); ++i) {
    run = std::max(run, samples[i].second);
    if (i + 1 == samples.size() ||
        std::abs(samples[i + 1].first - samples[i].first) > 1e-12)
      rep.table.push_back({samples[i].first, run, 0, 0});
  }
  rep.constants["phi_max"] = run;
  return rep;
}

}  // namespace cgeo
