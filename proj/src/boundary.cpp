#include "cgeo/boundary.hpp"

#include <algorithm>
#include <sstream>
#include <cmath>

#include "cgeo/parallel.hpp"

namespace cgeo {

namespace {

// Tail subsample of a ray past the inner radius (distances measured from the
// basepoint), at most `cap` points, deterministic stride, always keeping the
// outermost point.
std::vector<Index> ray_tail(const Space& s, Index basepoint, const Ray& r,
                            Scalar inner_radius, int cap) {
  std::vector<Index> tail;
  for (Index p : r.points)
    if (s.dist(basepoint, p) >= inner_radius) tail.push_back(p);
  if (tail.empty()) return tail;
  if (cap > 0 && static_cast<int>(tail.size()) > cap) {
    std::vector<Index> sub;
    const size_t stride = (tail.size() + cap - 1) / cap;
    for (size_t i = 0; i < tail.size(); i += stride) sub.push_back(tail[i]);
    if (sub.back() != tail.back()) sub.push_back(tail.back());
    tail = std::move(sub);
  }
  return tail;
}

Scalar tail_product(const Space& s, Index basepoint,
                    const std::vector<Index>& ta, const std::vector<Index>& tb) {
  Scalar best = kInf;
  for (Index x : ta) {
    const Scalar dx = s.dist(basepoint, x);
    for (Index y : tb) {
      const Scalar p = 0.5 * (dx + s.dist(basepoint, y) - s.dist(x, y));
      best = std::min(best, p);
    }
  }
  return best;
}

}  // namespace

Scalar boundary_product(const Space& s, Index basepoint, int ray_p, int ray_q,
                        Scalar inner_radius) {
  if (ray_p == ray_q) return kInf;  // identical classes get the sentinel
  const Ray& rp = s.rays.at(ray_p);
  const Ray& rq = s.rays.at(ray_q);
  auto ta = ray_tail(s, basepoint, rp, inner_radius, 0);
  auto tb = ray_tail(s, basepoint, rq, inner_radius, 0);
  if (ta.empty() || tb.empty())
    throw PreconditionError(
        "boundary_product: rays too short beyond the inner radius; increase "
        "truncation");
  return tail_product(s, basepoint, ta, tb);
}

int BoundaryStratum::member_pos(int ray) const {
  for (size_t i = 0; i < members.size(); ++i)
    if (members[i] == ray) return static_cast<int>(i);
  return -1;
}

BoundaryStratum boundary_stratum(const Space& s, Index basepoint,
                                 const GaugeTable& bound,
                                 const StratumConfig& cfg) {
  BoundaryStratum st;
  st.basepoint = basepoint;
  st.inner_radius =
      cfg.inner_radius >= 0 ? cfg.inner_radius : s.truncation_radius / 2;
  {
    Index i30 = bound.grid.find(3.0, 0.0);
    const Vec& b = bound.has_upper() ? bound.upper : bound.lower;
    std::ostringstream label;
    label << "N(3,0)<=" << (i30 >= 0 ? b[i30] : b.maxCoeff());
    st.gauge_label = label.str();
  }

  // Members: rays whose truncated geodesics to the basepoint are not refuted
  // (every enumerated representative must stay within the bound).
  for (int r = 0; r < static_cast<int>(s.rays.size()); ++r) {
    const Index tip = s.rays[r].points.back();
    std::vector<Index> cand{tip};
    StratifyResult sr = stratify(s, basepoint, bound, cfg.stratify, cand);
    if (!sr.members.empty()) st.members.push_back(r);
  }
  if (st.members.empty()) return st;  // valid: stratum may be empty

  // Interior tail point set backing the products.
  std::vector<std::vector<Index>> tails;
  for (int r : st.members) {
    auto t = ray_tail(s, basepoint, s.rays[r], st.inner_radius, cfg.tail_samples);
    if (t.empty())
      throw PreconditionError("boundary_stratum: truncation too small for tails");
    tails.push_back(std::move(t));
    st.point_set.insert(st.point_set.end(), tails.back().begin(),
                        tails.back().end());
  }

  const Index m = static_cast<Index>(st.members.size());
  st.products.setConstant(m, m, kInf);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      Scalar p = tail_product(s, basepoint, tails[i], tails[j]);
      st.products(i, j) = p;
      st.products(j, i) = p;
    }

  // Marked rays must represent distinct boundary classes: truncated tail
  // Hausdorff distance above the divergence threshold.
  auto hausdorff = [&s](const std::vector<Index>& ta, const std::vector<Index>& tb) {
    Scalar worst = 0;
    for (const auto* from : {&ta, &tb}) {
      const auto& to = from == &ta ? tb : ta;
      for (Index x : *from) {
        Scalar best = kInf;
        for (Index y : to) best = std::min(best, s.dist(x, y));
        worst = std::max(worst, best);
      }
    }
    return worst;
  };

  // Visibility parameter from the four-point constant of the product table
  // itself (with the basepoint as the implicit w); this is exactly the
  // four-point hypothesis the sandwich bound needs.
  Scalar delta_table = 0;
  for (Index x = 0; x < m; ++x)
    for (Index z = 0; z < m; ++z)
      for (Index y = 0; y < m; ++y) {
        if (x == y || x == z || y == z) continue;
        delta_table = std::max(
            delta_table, std::min(st.products(x, z), st.products(z, y)) -
                             st.products(x, y));
      }
  st.delta = delta_table;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j)
      if (hausdorff(tails[i], tails[j]) <= 2 * delta_table + 1)
        throw ValidationError("boundary_stratum: rays " +
                              s.rays[st.members[i]].label + " and " +
                              s.rays[st.members[j]].label +
                              " do not diverge; same boundary class?");
  st.epsilon = choose_epsilon(delta_table, cfg.eps_max);
  st.metric = visual_metric(st.products, st.epsilon).d;
  return st;
}

std::vector<int> annulus(const BoundaryStratum& st, int center_ray, Scalar a,
                         Scalar r) {
  if (a <= 0 || r < 1) throw ValidationError("annulus: need a > 0, r >= 1");
  int pos = st.member_pos(center_ray);
  if (pos < 0) throw ValidationError("annulus: center not in stratum");
  std::vector<int> out;
  for (Index j = 0; j < static_cast<Index>(st.members.size()); ++j) {
    if (j == pos) continue;
    Scalar d = st.metric(pos, j);
    if (d >= a - 1e-12 && d <= a * r + 1e-12) out.push_back(st.members[j]);
  }
  return out;
}

GaugeDrift gauge_drift([[maybe_unused]] const Space& s,
                       const BoundaryStratum& coarse, const BoundaryStratum& fine,
                       int ray_p, int ray_q) {
  GaugeDrift out;
  for (const BoundaryStratum* st : {&coarse, &fine}) {
    if (st->member_pos(ray_p) < 0 || st->member_pos(ray_q) < 0)
      throw ValidationError("gauge_drift: ray missing from a stratum");
  }
  out.prod_n = coarse.products(coarse.member_pos(ray_p), coarse.member_pos(ray_q));
  out.prod_n2 = fine.products(fine.member_pos(ray_p), fine.member_pos(ray_q));
  return out;
}

}  // namespace cgeo
