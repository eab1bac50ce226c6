#include "doctest.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "cgeo/hyperbolicity.hpp"
#include "cgeo/space.hpp"

using namespace cgeo;

namespace {

Space line_graph(Index n) {
  GraphDesc g;
  g.n = n;
  for (Index i = 0; i + 1 < n; ++i) {
    g.edges.push_back({i, i + 1});
    g.weights.push_back(1.0);
  }
  return build_space({g, "line"});
}

Space cycle4() {
  GraphDesc g;
  g.n = 4;
  for (Index i = 0; i < 4; ++i) {
    g.edges.push_back({i, (i + 1) % 4});
    g.weights.push_back(1.0);
  }
  return build_space({g, "C4"});
}

// Tripod: center 0, three legs of the given length.
Space tripod(Index leg) {
  GraphDesc g;
  g.n = 3 * leg + 1;
  Index v = 1;
  for (int arm = 0; arm < 3; ++arm) {
    Index prev = 0;
    for (Index k = 0; k < leg; ++k) {
      g.edges.push_back({prev, v});
      g.weights.push_back(1.0);
      prev = v++;
    }
  }
  return build_space({g, "tripod"});
}

// Independent oracle: literal quadruple scan straight off the definition.
Scalar naive_delta(const Space& s) {
  const Index n = s.size();
  Scalar best = 0;
  for (Index w = 0; w < n; ++w)
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z) {
          Scalar pxz = gromov_product(s, x, z, w);
          Scalar pzy = gromov_product(s, z, y, w);
          Scalar pxy = gromov_product(s, x, y, w);
          best = std::max(best, std::min(pxz, pzy) - pxy);
        }
  return best;
}

std::vector<Index> all_points(const Space& s) {
  std::vector<Index> v(s.size());
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

}  // namespace

TEST_CASE("gromov product basics on a line") {
  Space s = line_graph(6);
  CHECK(gromov_product(s, 3, 5, 0) == doctest::Approx(3.0));
  CHECK(gromov_product(s, 4, 4, 0) == doctest::Approx(4.0));
}

TEST_CASE("tree: product equals distance to the geodesic") {
  Space s = tripod(4);
  for (Index x = 0; x < s.size(); ++x)
    for (Index y = 0; y < s.size(); ++y) {
      Geodesic g = s.geodesic(x, y);
      for (Index w = 0; w < s.size(); w += 3) {
        Scalar d = kInf;
        for (const auto& p : g.pts) d = std::min(d, s.dist(s.point(w), p));
        CHECK(gromov_product(s, x, y, w) == doctest::Approx(d).epsilon(1e-12));
      }
    }
}

TEST_CASE("four point delta: trees are 0, C4 is 1, oracle agreement") {
  Space t = tripod(5);
  CHECK(four_point_delta(t).delta == doctest::Approx(0.0));

  Space c = cycle4();
  DeltaResult r = four_point_delta(c);
  CHECK(r.delta == doctest::Approx(1.0));
  CHECK(naive_delta(c) == doctest::Approx(1.0));

  // 5x5 grid patch vs the naive reimplementation
  CayleyDesc d;
  d.preset = CayleyDesc::Preset::Z2;
  d.radius = 3;
  Space z = build_space({d, "z2"});
  CHECK(four_point_delta(z).delta == doctest::Approx(naive_delta(z)));
}

TEST_CASE("delta witness achieves the maximum") {
  Space c = cycle4();
  DeltaResult r = four_point_delta(c);
  auto [w, x, y, z] = r.witness;
  Scalar v = std::min(gromov_product(c, x, z, w), gromov_product(c, z, y, w)) -
             gromov_product(c, x, y, w);
  CHECK(v == doctest::Approx(r.delta));
}

TEST_CASE("product bounds: 0 <= (x.y)_w <= min(d(w,x), d(w,y))") {
  Space c = cycle4();
  for (Index w = 0; w < 4; ++w)
    for (Index x = 0; x < 4; ++x)
      for (Index y = 0; y < 4; ++y) {
        Scalar p = gromov_product(c, x, y, w);
        CHECK(p >= -1e-12);
        CHECK(p <= std::min(c.dist(w, x), c.dist(w, y)) + 1e-12);
      }
}

TEST_CASE("choose_epsilon") {
  CHECK(choose_epsilon(0.0, 1.0) == 1.0);
  CHECK(choose_epsilon(std::log(2.0), 1.0) == doctest::Approx(0.25));
  CHECK(choose_epsilon(0.5, 1.0) == doctest::Approx(std::log(std::sqrt(2.0))));
  CHECK_THROWS_AS(choose_epsilon(-1.0, 1.0), ValidationError);
}

TEST_CASE("visual metric on a tree equals exp(-eps product) exactly") {
  Space t = tripod(4);
  auto pts = all_points(t);
  MetricMatrix prod = gromov_product_table(t, pts, 0);
  auto vm = visual_metric(prod, 1.0);
  for (Index i = 0; i < vm.d.rows(); ++i) {
    CHECK(vm.d(i, i) == 0.0);
    for (Index j = 0; j < vm.d.cols(); ++j) {
      if (i == j) continue;
      CHECK(vm.d(i, j) == doctest::Approx(std::exp(-prod(i, j))).epsilon(1e-12));
    }
  }
  CHECK(sandwich_violation(vm.d, prod, 0.0, 1.0) <= 1e-9);
}

TEST_CASE("tripod leaves: visual distance e^-4 via chain brute force") {
  Space t = tripod(4);
  // leaves: ends of the three legs; basepoint = leaf of leg 3
  Index leafA = 4, leafB = 8, leafW = 12;
  CHECK(t.dist(leafA, leafB) == doctest::Approx(8.0));
  std::vector<Index> leaves{leafA, leafB, leafW};
  MetricMatrix prod = gromov_product_table(t, leaves, leafW);
  auto vm = visual_metric(prod, 1.0);

  // oracle: enumerate all chains over the 3-leaf set (length <= 3 suffices
  // for 3 points; longer chains repeat a point and cannot be shorter)
  auto wgt = [&](Index i, Index j) { return std::exp(-prod(i, j)); };
  Scalar direct = wgt(0, 1);
  Scalar via = wgt(0, 2) + wgt(2, 1);
  Scalar oracle = std::min(direct, via);
  CHECK(oracle == doctest::Approx(std::exp(-4.0)));
  CHECK(vm.d(0, 1) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("sandwich holds on C4 with admissible epsilon") {
  Space c = cycle4();
  DeltaResult r = four_point_delta(c);
  Scalar eps = choose_epsilon(r.delta, 1.0);
  CHECK(std::exp(2 * r.delta * eps) <= std::sqrt(2.0) + 1e-12);
  auto pts = all_points(c);
  MetricMatrix prod = gromov_product_table(c, pts, 0);
  auto vm = visual_metric(prod, eps);
  CHECK(sandwich_violation(vm.d, prod, r.delta, eps) <= 1e-9);
}

TEST_CASE("degenerate delta on fewer than four points") {
  Space s = line_graph(3);
  DeltaResult r = four_point_delta(s);
  CHECK(r.degenerate);
  CHECK(r.delta == 0.0);
}

TEST_CASE("computed delta re-verified on random quadruples") {
  CayleyDesc d;
  d.preset = CayleyDesc::Preset::Z2;
  d.radius = 4;
  Space z = build_space({d, "z2"});
  Scalar delta = four_point_delta(z).delta;
  std::uint64_t st = 424242;
  auto rnd = [&st](Index n) {
    st = st * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<Index>((st >> 33) % static_cast<std::uint64_t>(n));
  };
  for (int t = 0; t < 10000; ++t) {
    Index w = rnd(z.size()), x = rnd(z.size()), y = rnd(z.size()), q = rnd(z.size());
    Scalar v = std::min(gromov_product(z, x, q, w), gromov_product(z, q, y, w)) -
               gromov_product(z, x, y, w);
    CHECK(v <= delta + 1e-12);
  }
}

TEST_CASE("underflow guard caps huge products and flags the result") {
  MetricMatrix prod(2, 2);
  prod << 0.0, 1e6, 1e6, 0.0;
  auto vm = visual_metric(prod, 1.0);
  CHECK(vm.underflow_capped);
  CHECK(vm.d(0, 1) == 0.0);  // capped weight, flagged rather than denormal

  MetricMatrix tame(2, 2);
  tame << 0.0, 3.0, 3.0, 0.0;
  CHECK_FALSE(visual_metric(tame, 1.0).underflow_capped);
}

TEST_CASE("visual metric params overload validates the visibility bound") {
  MetricMatrix prod(2, 2);
  prod << 0.0, 2.0, 2.0, 0.0;
  VisualMetricParams good{0, 0.25, 0.5};  // e^{2*0.5*0.25} < sqrt(2)
  CHECK(visual_metric(prod, good).d(0, 1) > 0);
  VisualMetricParams bad{0, 1.0, 1.0};
  CHECK_THROWS_AS(visual_metric(prod, bad), ValidationError);
}

TEST_CASE("b-equivalence") {
  Space t = tripod(3);
  auto pts = all_points(t);
  MetricMatrix prod = gromov_product_table(t, pts, 0);
  MetricMatrix m1 = visual_metric(prod, 1.0).d;

  BEquivalence same = b_equivalence(m1, 1.0, m1, 1.0);
  CHECK(same.k == doctest::Approx(1.0));
  CHECK(same.comparable);

  MetricMatrix m2 = 2.0 * m1;
  BEquivalence twice = b_equivalence(m1, 1.0, m2, 1.0);
  CHECK(twice.k == doctest::Approx(2.0));

  // two basepoints on a tripod, per-basepoint epsilon: finite k
  MetricMatrix prod2 = gromov_product_table(t, pts, 1);
  MetricMatrix m3 = visual_metric(prod2, 0.5).d;
  BEquivalence cross = b_equivalence(m1, 1.0, m3, 0.5);
  CHECK(cross.comparable);
  CHECK(cross.k >= 1.0);
  CHECK(std::isfinite(cross.k));

  MetricMatrix z = m1;
  z(0, 1) = z(1, 0) = 0.0;
  CHECK_FALSE(b_equivalence(m1, 1.0, z, 1.0).comparable);
}
