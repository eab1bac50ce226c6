#include "cgeo/centers.hpp"

#include <algorithm>
#include <cmath>

#include "cgeo/parallel.hpp"

namespace cgeo {

namespace {

// min over side representatives of the distance to that side ("some
// triangle" reading: a point qualifies if it is close to any representative).
Vec side_distances(const Space& s, const std::vector<Geodesic>& reps) {
  const Index n = s.size();
  Vec out = Vec::Constant(n, kInf);
  parallel_blocks(n, 0, [&](Index b, Index e) {
    for (Index q = b; q < e; ++q) {
      const SpacePoint qp = s.point(q);
      Scalar best = kInf;
      for (const auto& g : reps) best = std::min(best, dist_to_geodesic(s, qp, g));
      out[q] = best;
    }
  });
  return out;
}

void require_triple(const Space& s, int a, int b, int c) {
  const int nr = static_cast<int>(s.rays.size());
  if (a < 0 || b < 0 || c < 0 || a >= nr || b >= nr || c >= nr)
    throw ValidationError("triple: unknown ray");
  if (a == b || b == c || a == c)
    throw ValidationError("triple: rays must be pairwise distinct");
}

}  // namespace

std::array<std::vector<Geodesic>, 3> triangle_sides(const Space& s, int a, int b,
                                                    int c, int rep_budget) {
  require_triple(s, a, b, c);
  if (rep_budget < 1) throw ValidationError("rep_budget must be >= 1");
  auto side = [&](int u, int v) {
    std::vector<Geodesic> reps;
    if (s.is_plane()) {
      reps.push_back(s.ray_geodesic(u, v));
      return reps;
    }
    const Ray& ru = s.rays[u];
    const Ray& rv = s.rays[v];
    for (auto& g : s.geodesics_all(ru.points.back(), rv.points.back(), rep_budget)) {
      g.ray_from = u;
      g.ray_to = v;
      reps.push_back(std::move(g));
    }
    return reps;
  };
  return {side(a, b), side(b, c), side(c, a)};
}

namespace {

struct TripleScan {
  Vec max_side_dist;  // per cloud point: max over the three sides
};

TripleScan scan_triple(const Space& s, int a, int b, int c, int rep_budget) {
  auto sides = triangle_sides(s, a, b, c, rep_budget);
  // Truncation must let every side come near the basepoint region; a side
  // entirely beyond the truncation radius cannot be represented.
  for (const auto& reps : sides)
    if (reps.empty()) throw PreconditionError("triple: side not representable");
  TripleScan ts;
  Vec d0 = side_distances(s, sides[0]);
  Vec d1 = side_distances(s, sides[1]);
  Vec d2 = side_distances(s, sides[2]);
  ts.max_side_dist = d0.cwiseMax(d1).cwiseMax(d2);
  Scalar reach = ts.max_side_dist.minCoeff();
  if (!std::isfinite(reach) || reach > s.truncation_radius / 2)
    throw PreconditionError("triple: truncation too small to see all sides");
  return ts;
}

CenterSet make_set(const Space& s, const TripleScan& ts, int a, int b, int c,
                   Scalar k, Scalar k_value) {
  CenterSet cs;
  cs.triple = {a, b, c};
  cs.k = k;
  cs.k_value = k_value;
  for (Index q = 0; q < s.size(); ++q)
    if (ts.max_side_dist[q] <= k + 1e-9) cs.points.push_back(q);
  Scalar diam = 0;
  for (size_t i = 0; i < cs.points.size(); ++i)
    for (size_t j = i + 1; j < cs.points.size(); ++j)
      diam = std::max(diam, s.dist(cs.points[i], cs.points[j]));
  cs.diameter = diam;
  return cs;
}

}  // namespace

CenterSet center_set(const Space& s, int a, int b, int c, Scalar k,
                     const CenterConfig& cfg) {
  if (k < 0) throw ValidationError("center_set: k must be >= 0");
  TripleScan ts = scan_triple(s, a, b, c, cfg.rep_budget);
  Scalar k_inf = ts.max_side_dist.minCoeff();
  return make_set(s, ts, a, b, c, k, 1.0 + k_inf);
}

CoarseCenter coarse_center(const Space& s, int a, int b, int c,
                           const CenterConfig& cfg) {
  TripleScan ts = scan_triple(s, a, b, c, cfg.rep_budget);
  // inf{k : E_k nonempty} is attained on the finite cloud as a min-max; no
  // bisection needed at desk scale.
  Scalar k_inf = ts.max_side_dist.minCoeff();
  Scalar k_value = 1.0 + k_inf;
  CoarseCenter cc;
  cc.k_value = k_value;
  cc.set = make_set(s, ts, a, b, c, k_value, k_value);
  Index best = -1;
  Scalar best_d = kInf;
  for (Index q : cc.set.points) {
    if (ts.max_side_dist[q] < best_d - 1e-12) {
      best_d = ts.max_side_dist[q];
      best = q;
    }
  }
  cc.point = best;
  return cc;
}

CenterStability center_stability(const Space& s, const BoundaryStratum& st,
                                 const std::array<int, 3>& triple,
                                 const std::array<int, 3>& perturbed,
                                 Scalar lambda, const CenterConfig& cfg) {
  CenterStability out;
  Scalar move = 0;
  for (int i = 0; i < 3; ++i) {
    int p0 = st.member_pos(triple[i]);
    int p1 = st.member_pos(perturbed[i]);
    if (p0 < 0 || p1 < 0)
      throw ValidationError("center_stability: triple not in the stratum");
    if (p0 != p1) move = std::max(move, st.metric(p0, p1));
  }
  out.perturbation = move;
  out.within_lambda = move <= lambda + 1e-12;
  CenterSet e0 = center_set(s, triple[0], triple[1], triple[2],
                            coarse_center(s, triple[0], triple[1], triple[2], cfg).k_value,
                            cfg);
  CenterSet e1 = center_set(s, perturbed[0], perturbed[1], perturbed[2],
                            coarse_center(s, perturbed[0], perturbed[1], perturbed[2], cfg).k_value,
                            cfg);
  // Symmetric Hausdorff distance between the center sets; identical triples
  // give 0 by construction.
  auto directed = [&s](const std::vector<Index>& from, const std::vector<Index>& to) {
    Scalar worst = 0;
    for (Index p : from) {
      Scalar best = kInf;
      for (Index q : to) best = std::min(best, s.dist(p, q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  out.displacement = std::max(directed(e0.points, e1.points),
                              directed(e1.points, e0.points));
  return out;
}

}  // namespace cgeo
