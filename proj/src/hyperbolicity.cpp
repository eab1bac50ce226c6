#include "cgeo/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "cgeo/parallel.hpp"

namespace cgeo {

namespace {
constexpr Scalar kExpCap = 700.0;  // exp(-x) underflows past ~745
}

Scalar gromov_product(const Space& s, Index x, Index y, Index w) {
  return 0.5 * (s.dist(w, x) + s.dist(w, y) - s.dist(x, y));
}

MetricMatrix gromov_product_table(const Space& s, std::span<const Index> subset,
                                  Index w) {
  const Index n = static_cast<Index>(subset.size());
  MetricMatrix p(n, n);
  Vec dw(n);
  for (Index i = 0; i < n; ++i) dw[i] = s.dist(w, subset[i]);
  for (Index i = 0; i < n; ++i) {
    p(i, i) = dw[i];
    for (Index j = i + 1; j < n; ++j) {
      Scalar v = 0.5 * (dw[i] + dw[j] - s.dist(subset[i], subset[j]));
      p(i, j) = v;
      p(j, i) = v;
    }
  }
  return p;
}

DeltaResult four_point_delta(const MetricMatrix& d, int jobs) {
  const Index n = d.rows();
  DeltaResult res;
  if (n < 4) {
    res.degenerate = true;
    return res;
  }
  // Pass 1: value only, vectorized over the innermost index.
  std::mutex mu;
  Scalar best = 0;
  parallel_blocks(n, jobs, [&](Index wb, Index we) {
    MetricMatrix p(n, n);
    Vec tmp(n);
    Scalar local = 0;
    for (Index w = wb; w < we; ++w) {
      for (Index i = 0; i < n; ++i)
        p.row(i) = 0.5 * (d(w, i) + d.row(w).array() - d.row(i).array()).matrix();
      for (Index x = 0; x < n; ++x) {
        const auto px = p.row(x);
        for (Index z = 0; z < n; ++z) {
          const Scalar pxz = p(x, z);
          tmp = (p.row(z).cwiseMin(pxz) - px).transpose();
          local = std::max(local, tmp.maxCoeff());
        }
      }
    }
    std::lock_guard<std::mutex> lk(mu);
    best = std::max(best, local);
  });
  res.delta = std::max(best, 0.0);
  // Pass 2: first witness in scan order (deterministic regardless of jobs).
  MetricMatrix p(n, n);
  for (Index w = 0; w < n && res.witness[0] < 0; ++w) {
    for (Index i = 0; i < n; ++i)
      p.row(i) = 0.5 * (d(w, i) + d.row(w).array() - d.row(i).array()).matrix();
    for (Index x = 0; x < n && res.witness[0] < 0; ++x)
      for (Index z = 0; z < n && res.witness[0] < 0; ++z) {
        const Scalar pxz = p(x, z);
        for (Index y = 0; y < n; ++y) {
          if (std::min(pxz, p(z, y)) - p(x, y) >= res.delta) {
            res.witness = {w, x, y, z};
            break;
          }
        }
      }
  }
  return res;
}

DeltaResult four_point_delta(const Space& s, std::span<const Index> subset,
                             int jobs) {
  const Index n = static_cast<Index>(subset.size());
  if (n < 4) {
    DeltaResult r;
    r.degenerate = true;
    return r;
  }
  MetricMatrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    d(i, i) = 0;
    for (Index j = i + 1; j < n; ++j) {
      Scalar v = s.dist(subset[i], subset[j]);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  DeltaResult r = four_point_delta(d, jobs);
  for (auto& w : r.witness)
    if (w >= 0) w = subset[w];
  return r;
}

DeltaResult four_point_delta(const Space& s, int jobs) {
  std::vector<Index> all(s.size());
  std::iota(all.begin(), all.end(), Index{0});
  return four_point_delta(s, all, jobs);
}

Scalar choose_epsilon(Scalar delta, Scalar eps_max) {
  if (delta < 0) throw ValidationError("choose_epsilon: delta must be >= 0");
  if (delta == 0) return eps_max;
  return std::min(eps_max, std::log(std::sqrt(2.0)) / (2.0 * delta));
}

VisualMetricResult visual_metric(const MetricMatrix& products, Scalar epsilon) {
  const Index n = products.rows();
  VisualMetricResult res;
  MetricMatrix w(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      Scalar p = products(i, j);
      if (p > kExpCap / epsilon) {
        res.underflow_capped = std::isfinite(p);
        w(i, j) = 0;
      } else {
        w(i, j) = std::exp(-epsilon * p);
      }
    }
  w.diagonal().setZero();
  // Floyd-Warshall; weights are nonnegative so this is the exact chain infimum.
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < n; ++i) {
      const Scalar wik = w(i, k);
      for (Index j = 0; j < n; ++j)
        w(i, j) = std::min(w(i, j), wik + w(k, j));
    }
  res.d = std::move(w);
  return res;
}

VisualMetricResult visual_metric(const MetricMatrix& products,
                                 const VisualMetricParams& params) {
  if (params.epsilon <= 0)
    throw ValidationError("visual_metric: epsilon must be positive");
  if (std::exp(2.0 * params.delta * params.epsilon) > std::sqrt(2.0) + 1e-12)
    throw ValidationError("visual_metric: e^{2 delta eps} exceeds sqrt(2)");
  return visual_metric(products, params.epsilon);
}

BEquivalence b_equivalence(const MetricMatrix& m1, Scalar eps1,
                           const MetricMatrix& m2, Scalar eps2) {
  if (m1.rows() != m2.rows())
    throw ValidationError("b_equivalence: point sets differ");
  BEquivalence out;
  const Index n = m1.rows();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Scalar a = std::pow(m1(i, j), eps2);
      Scalar b = std::pow(m2(i, j), eps1);
      if (a == 0 && b == 0) continue;
      if (a == 0 || b == 0) {
        out.comparable = false;
        out.worst = {i, j};
        return out;
      }
      Scalar k = std::max(a / b, b / a);
      if (k > out.k) {
        out.k = k;
        out.worst = {i, j};
      }
    }
  return out;
}

Scalar sandwich_violation(const MetricMatrix& visual, const MetricMatrix& products,
                          Scalar delta, Scalar epsilon) {
  const Index n = visual.rows();
  const Scalar lo_coef = 3.0 - 2.0 * std::exp(2.0 * delta * epsilon);
  Scalar worst = -kInf;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      Scalar e = std::exp(-epsilon * std::min(products(i, j), kExpCap / epsilon));
      if (!std::isfinite(products(i, j))) e = 0;
      worst = std::max(worst, visual(i, j) - e);          // upper bound
      worst = std::max(worst, lo_coef * e - visual(i, j));  // lower bound
    }
  return worst;
}

}  // namespace cgeo
