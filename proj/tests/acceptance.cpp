// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances in code; runtime budgets are
// part of the criteria and enforced.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include "cgeo/boundary.hpp"
#include "cgeo/extension.hpp"
#include "cgeo/hyperbolicity.hpp"
#include "cgeo/json_io.hpp"
#include "cgeo/repro.hpp"

using namespace cgeo;

namespace {

// ---------------------------------------------------------------- helpers

Space path_graph(Index n) {
  GraphDesc g;
  g.n = n;
  for (Index i = 0; i + 1 < n; ++i) {
    g.edges.push_back({i, i + 1});
    g.weights.push_back(1.0);
  }
  return build_space({g, "path"});
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

Space tripod(Index leg) {
  GraphDesc g;
  g.n = 3 * leg + 1;
  Index v = 1;
  for (int arm = 0; arm < 3; ++arm) {
    Index prev = 0;
    std::vector<Index> ray{0};
    for (Index k = 0; k < leg; ++k) {
      g.edges.push_back({prev, v});
      g.weights.push_back(1.0);
      ray.push_back(v);
      prev = v++;
    }
    g.rays.push_back(ray);
    g.ray_labels.push_back(std::string(1, static_cast<char>('a' + arm)));
  }
  return build_space({g, "tripod"});
}

Space branching_tree() {
  GraphDesc g;
  g.n = 16;
  auto edge = [&](Index u, Index v) {
    g.edges.push_back({u, v});
    g.weights.push_back(1.0);
  };
  for (Index i = 0; i < 5; ++i) edge(i, i + 1);
  edge(5, 6);
  for (Index i = 6; i < 10; ++i) edge(i, i + 1);
  edge(5, 11);
  for (Index i = 11; i < 15; ++i) edge(i, i + 1);
  g.rays = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10},
            {0, 1, 2, 3, 4, 5, 11, 12, 13, 14, 15}};
  g.ray_labels = {"up", "down"};
  return build_space({g, "btree"});
}

Space cayley(CayleyDesc::Preset p, int radius, const char* name) {
  CayleyDesc d;
  d.preset = p;
  d.radius = radius;
  return build_space({d, name});
}

Space plane(char preset, Scalar trunc, int m_max = -1) {
  PlaneDesc d;
  d.preset = preset;
  d.truncation = trunc;
  d.m_max = m_max;
  return build_space({d, std::string("plane") + preset});
}

std::vector<Index> subset_of(const Space& s, Index cap) {
  std::vector<Index> subset;
  const Index stride = std::max<Index>(1, (s.size() + cap - 1) / cap);
  for (Index i = 0; i < s.size(); i += stride) subset.push_back(i);
  return subset;
}

struct Lcg {
  std::uint64_t state;
  explicit Lcg(std::uint64_t seed) : state(seed) {}
  Index next(Index m) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<Index>((state >> 33) % static_cast<std::uint64_t>(m));
  }
};

Space random_graph(std::uint64_t seed) {
  Lcg rng(seed);
  GraphDesc g;
  g.n = 8 + rng.next(33);  // n in [8, 40]
  for (Index v = 1; v < g.n; ++v) {
    g.edges.push_back({rng.next(v), v});
    g.weights.push_back(rng.next(4) == 0 ? 2.0 : 1.0);
  }
  const Index extra = g.n / 2;
  for (Index e = 0; e < extra; ++e) {
    Index u = rng.next(g.n), v = rng.next(g.n);
    if (u == v) continue;
    g.edges.push_back({u, v});
    g.weights.push_back(1.0);
  }
  return build_space({g, "rand" + std::to_string(seed)});
}

// Independent oracle: the four-point definition, verbatim.
Scalar naive_delta(const Space& s) {
  const Index n = s.size();
  Scalar best = 0;
  for (Index w = 0; w < n; ++w)
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y)
        for (Index z = 0; z < n; ++z) {
          Scalar v = std::min(gromov_product(s, x, z, w), gromov_product(s, z, y, w)) -
                     gromov_product(s, x, y, w);
          best = std::max(best, v);
        }
  return best;
}

std::vector<std::pair<std::string, std::string>> reflection_pairs(int m_max) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int m = 1; m <= m_max; ++m) {
    pairs.emplace_back("r_" + std::to_string(m), "r_" + std::to_string(-m));
    pairs.emplace_back("r_" + std::to_string(-m), "r_" + std::to_string(m));
  }
  pairs.emplace_back("r_prime", "r_dprime");
  pairs.emplace_back("r_dprime", "r_prime");
  return pairs;
}

SpacePoint reflect_point(const Space& s, Index i) {
  SpacePoint p = s.point(i);
  SpacePoint g = p;
  g.id = -1;
  g.pos = Vec2(-p.pos.x(), p.pos.y());
  if (p.ray >= 0) {
    g.ray = -1;
    for (int r = 0; r < static_cast<int>(s.rays.size()); ++r)
      if (std::abs(s.ray_base_x(r) + p.pos.x()) < 1e-9) {
        g.ray = r;
        break;
      }
    g.height = p.height;
  }
  return g;
}

bool integer_ray(const std::string& label, long* m = nullptr) {
  if (label.rfind("r_", 0) != 0) return false;
  const std::string tail = label.substr(2);
  if (tail.empty() ||
      (!std::isdigit(static_cast<unsigned char>(tail[0])) && tail[0] != '-'))
    return false;
  if (m) *m = std::stol(tail);
  return true;
}

// ---------------------------------------------------------------- criteria

bool criterion_sandwich(std::ostream& log) {
  struct Case {
    Space space;
    bool tree;
  };
  std::vector<Case> cases;
  cases.push_back({cycle4(), false});
  cases.push_back({path_graph(6), true});
  cases.push_back({tripod(4), true});
  cases.push_back({cayley(CayleyDesc::Preset::F2, 4, "F2"), true});
  cases.push_back({cayley(CayleyDesc::Preset::Z2, 4, "Z2"), false});
  cases.push_back({cayley(CayleyDesc::Preset::Z2starZ, 3, "Z2*Z"), false});
  cases.push_back({plane('A', 12, 2), false});
  cases.push_back({plane('B', 12), false});
  for (std::uint64_t seed : {11u, 12u, 13u}) cases.push_back({random_graph(seed), false});

  bool ok = true;
  for (const auto& c : cases) {
    auto subset = subset_of(c.space, 150);
    DeltaResult delta = four_point_delta(c.space, subset);
    Scalar eps = choose_epsilon(delta.delta, 1.0);
    if (std::exp(2 * delta.delta * eps) > std::sqrt(2.0) + 1e-12) {
      log << c.space.name << ": epsilon violates e^{2de} <= sqrt(2); ";
      ok = false;
      continue;
    }
    MetricMatrix prod = gromov_product_table(c.space, subset, subset[0]);
    MetricMatrix vis = visual_metric(prod, eps).d;
    Scalar viol = sandwich_violation(vis, prod, delta.delta, eps);
    if (viol > 1e-9) {
      log << c.space.name << ": sandwich violated by " << viol << "; ";
      ok = false;
    }
    if (c.tree) {
      for (Index i = 0; i < vis.rows() && ok; ++i)
        for (Index j = 0; j < vis.cols(); ++j) {
          if (i == j) continue;
          if (std::abs(vis(i, j) - std::exp(-eps * prod(i, j))) > 1e-9) {
            log << c.space.name << ": tree equality fails; ";
            ok = false;
            break;
          }
        }
    }
  }
  log << cases.size() << " spaces";
  return ok;
}

bool criterion_delta_oracle(std::ostream& log) {
  bool ok = true;
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    Space s = random_graph(seed);
    Scalar fast = four_point_delta(s).delta;
    Scalar slow = naive_delta(s);
    if (fast != slow) {
      log << "seed " << seed << ": " << fast << " != " << slow << "; ";
      ok = false;
    }
  }
  Space t = tripod(6);
  if (four_point_delta(t).delta != 0.0) {
    log << "tree delta not exactly 0; ";
    ok = false;
  }
  log << "20 graphs exact";
  return ok;
}

bool criterion_example_a_table(std::ostream& log) {
  Space s = plane('A', 20, 4);
  const int nr = static_cast<int>(s.rays.size());
  int special = 0;
  bool ok = true;
  std::ostringstream mixed;
  for (int i = 0; i < nr; ++i)
    for (int j = i + 1; j < nr; ++j) {
      Scalar c = contraction_constant(s, s.ray_geodesic(i, j)).constant;
      const std::string& a = s.rays[i].label;
      const std::string& b = s.rays[j].label;
      const bool is_special =
          (a == "r_0" && (b == "r_prime" || b == "r_dprime")) ||
          (a == "r_prime" && b == "r_dprime");
      long ma, mb;
      const bool both_int = integer_ray(a, &ma) && integer_ray(b, &mb);
      if (is_special) {
        ++special;
        if (c > 0.5 * 1.15) {
          log << "(" << a << "," << b << ") = " << c << " above 0.575; ";
          ok = false;
        }
      } else {
        if (c <= 0.5 * 1.15) {
          log << "(" << a << "," << b << ") = " << c << " breaks exactly-three; ";
          ok = false;
        }
        if (both_int && c <= 0.9) {
          log << "(" << a << "," << b << ") = " << c << " not above 0.9; ";
          ok = false;
        }
        if (!both_int) mixed << " (" << a << "," << b << ")=" << c;
      }
    }
  if (special != 3) {
    log << "expected 3 special pairs, saw " << special << "; ";
    ok = false;
  }
  log << "epsilon-mixed pairs:" << mixed.str();
  return ok;
}

bool criterion_growth_law(std::ostream& log) {
  ReproConfig cfg;
  cfg.base_truncation = 20;
  Space s = build_example_space('A', 20, 7);
  bool ok = true;
  std::vector<Scalar> xs, ys;
  for (int n = 1; n <= 3; ++n) {
    int a = s.ray_by_label("r_" + std::to_string(-2 * n));
    int b = s.ray_by_label("r_" + std::to_string(2 * n + 1));
    Scalar c = contraction_constant(s, s.ray_geodesic(a, b)).constant;
    Scalar expect = 4.0 * n + 1.0;
    if (std::abs(c - expect) > 0.15 * expect) {
      log << "n=" << n << ": " << c << " vs " << expect << "; ";
      ok = false;
    }
    xs.push_back(n);
    ys.push_back(c);
    log << "c(" << n << ")=" << c << " ";
  }
  Scalar sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  Scalar slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  log << "slope=" << slope;
  if (std::abs(slope - 4.0) > 0.6) {
    log << " outside 4 +- 0.6; ";
    ok = false;
  }
  return ok;
}

bool criterion_verdicts(std::ostream& log) {
  bool ok = true;
  ReproConfig cfg;
  cfg.base_truncation = 20;
  ReproResult a = run_example_repro('A', cfg);
  log << "A: growth=" << a.two_stable_growth;
  if (!a.not_two_stable) {
    log << " (< 1.5, FAIL)";
    ok = false;
  }
  for (const auto& step : a.sweep)
    for (const auto& row : step.basetriangle.table) {
      if (row[2] == 0) continue;
      if (row[1] > (row[0] + 1.0) * 1.15) {
        log << " A basetriangle C=" << row[0] << " achieved " << row[1]
            << " above (C+1)*1.15;";
        ok = false;
      }
    }
  ReproResult b = run_example_repro('B', cfg);
  log << "; B: growth=" << b.two_stable_growth
      << " bt_growth=" << b.basetriangle_growth;
  if (!b.not_two_stable) {
    log << " (B two-stable growth < 1.5, FAIL)";
    ok = false;
  }
  if (!b.basetriangle_stable) {
    log << " (B not basetriangle stable, FAIL)";
    ok = false;
  }
  return ok;
}

bool criterion_dist_gp(std::ostream& log) {
  bool ok = true;
  GaugeTable generous = gauge_from_contraction(4.0, GaugeGrid::default_grid(), {});

  // trees: exact equality
  for (Space s : {tripod(5), branching_tree(), cayley(CayleyDesc::Preset::F2, 5, "F2")}) {
    const Index base = 0;
    for (int i = 0; i < static_cast<int>(s.rays.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(s.rays.size()); ++j) {
        Scalar prod = boundary_product(s, base, i, j, s.truncation_radius / 2);
        Scalar d = dist_to_geodesic(s, s.point(base), s.ray_geodesic(i, j));
        if (std::abs(prod - d) > 1e-9) {
          log << s.name << "(" << i << "," << j << "): |" << prod << "-" << d
              << "| > 0; ";
          ok = false;
        }
      }
  }

  // preset A and Cayley balls: |prod - d| <= 8 delta + 2
  for (Space s : {plane('A', 12, 3), cayley(CayleyDesc::Preset::Z2starZ, 4, "Z2*Z")}) {
    Index base = s.is_plane() ? s.rays[s.ray_by_label("r_0")].base : 0;
    BoundaryStratum st = boundary_stratum(s, base, generous);
    std::vector<Index> pts = st.point_set;
    pts.push_back(base);
    Scalar delta = four_point_delta(s, pts).delta;
    Scalar bound = 8 * delta + 2;
    for (size_t i = 0; i < st.members.size(); ++i)
      for (size_t j = i + 1; j < st.members.size(); ++j) {
        Scalar prod = st.products(i, j);
        Scalar d = dist_to_geodesic(s, s.point(base),
                                    s.ray_geodesic(st.members[i], st.members[j]));
        if (std::abs(prod - d) > bound) {
          log << s.name << ": |" << prod << "-" << d << "| > " << bound << "; ";
          ok = false;
        }
      }
    log << s.name << " bound=" << bound << " ";
  }
  return ok;
}

bool criterion_triple_slack(std::ostream& log) {
  bool ok = true;
  GaugeTable generous = gauge_from_contraction(4.0, GaugeGrid::default_grid(), {});
  std::vector<Space> spaces;
  spaces.push_back(branching_tree());
  spaces.push_back(plane('A', 12, 3));
  spaces.push_back(plane('B', 12));
  spaces.push_back(cayley(CayleyDesc::Preset::F2, 5, "F2"));
  spaces.push_back(cayley(CayleyDesc::Preset::Z2starZ, 4, "Z2*Z"));
  long triples = 0;
  for (const Space& s : spaces) {
    Index base = s.is_plane() ? s.rays[s.ray_by_label("r_0")].base : 0;
    BoundaryStratum st = boundary_stratum(s, base, generous);
    if (st.members.size() < 3) continue;
    std::vector<Index> pts = st.point_set;
    pts.push_back(base);
    Scalar delta = four_point_delta(s, pts).delta;
    const Index m = static_cast<Index>(st.members.size());
    for (Index x = 0; x < m; ++x)
      for (Index y = 0; y < m; ++y)
        for (Index z = 0; z < m; ++z) {
          if (x == y || y == z || x == z) continue;
          ++triples;
          if (st.products(x, y) <
              std::min(st.products(x, z), st.products(z, y)) - 2 * delta - 1e-9) {
            log << s.name << ": triple slack violated; ";
            ok = false;
          }
        }
  }
  log << triples << " boundary triples";
  return ok;
}

bool criterion_extension(std::ostream& log) {
  Space s = plane('A', 12, 3);
  BoundaryMap refl = make_boundary_map(s, s, reflection_pairs(3), "reflection");
  ExtensionMap ext = extend(s, s, refl);
  EtaTable eta = eta_modulus(s, s, ext);
  bool ok = true;

  QiFit fit = fit_qi_constants(s, s, ext);
  log << "K=" << fit.K << " R=" << ext.R;
  if (fit.K < 1.0 || fit.K > 1.2) {
    log << " K outside [1, 1.2]; ";
    ok = false;
  }

  Scalar sup = 0;
  for (size_t i = 0; i < ext.sample.size(); ++i)
    sup = std::max(sup, s.dist(s.point(ext.values[i]), reflect_point(s, ext.sample[i])));
  Scalar sup_bound = ext.R + ext.center_diameter + eta.at(ext.R);
  log << " sup|Phi-g|=" << sup << "<=" << sup_bound;
  if (sup > sup_bound + 1e-9) {
    log << " FAIL; ";
    ok = false;
  }

  ExtensionMap back = extend(s, s, refl.inverse());
  DefectReport defect = quasi_inverse_defect(s, s, ext, back);
  Scalar defect_bound = ext.R + 1.25 * eta.at(ext.R);
  log << " defect=" << defect.defect << "<=" << defect_bound;
  if (defect.used == 0 || defect.defect > defect_bound + 1e-9) {
    log << " FAIL; ";
    ok = false;
  }

  AgreementReport agree = boundary_agreement(s, s, ext, refl);
  log << " agreement=" << (agree.all_pass ? "pass" : "fail")
      << " unsupported_edge_rays=" << agree.unsupported;
  if (!agree.all_pass) ok = false;
  // the two lattice-edge rays are the only ones the truncated model cannot judge
  if (agree.unsupported != 2) {
    log << " unexpected unsupported count; ";
    ok = false;
  }
  return ok;
}

bool criterion_shadows(std::ostream& log) {
  bool ok = true;

  // modulus-composition domination on a real stratum
  Space s = plane('A', 12, 3);
  Index base = s.rays[s.ray_by_label("r_0")].base;
  GaugeTable generous = gauge_from_contraction(4.0, GaugeGrid::default_grid(), {});
  BoundaryStratum st = boundary_stratum(s, base, generous);
  BoundaryMap f = make_boundary_map(s, s, reflection_pairs(3), "refl");
  BoundaryMap g = even_flip_map(s, s);
  BoundaryMap gf;
  gf.image.resize(f.image.size());
  gf.preimage.assign(f.image.size(), -1);
  for (size_t r = 0; r < f.image.size(); ++r) gf.image[r] = g(f(static_cast<int>(r)));
  for (size_t r = 0; r < gf.image.size(); ++r) gf.preimage[gf.image[r]] = static_cast<int>(r);
  gf.label = "flip_after_refl";

  ModulusReport qf = fit_quasisymmetry(st, st, f);
  ModulusReport qg = fit_quasisymmetry(st, st, g);
  const Index m = static_cast<Index>(st.members.size());
  for (Index x = 0; x < m && ok; ++x)
    for (Index y = 0; y < m && ok; ++y)
      for (Index z = 0; z < m; ++z) {
        if (x == y || y == z || x == z) continue;
        int cx = st.member_pos(gf(st.members[x])), cy = st.member_pos(gf(st.members[y])),
            cz = st.member_pos(gf(st.members[z]));
        Scalar t = st.metric(x, y) / st.metric(x, z);
        Scalar sv = st.metric(cx, cy) / st.metric(cx, cz);
        Scalar via = psi_power(qg.constants.at("alpha"), qg.constants.at("lambda"),
                               psi_power(qf.constants.at("alpha"),
                                         qf.constants.at("lambda"), t));
        if (sv > via + 1e-9) {
          log << "QS composition domination fails; ";
          ok = false;
          break;
        }
      }

  ModulusReport bf = fit_biholder(st, st, f);
  ModulusReport bg = fit_biholder(st, st, g);
  ModulusReport bgf = fit_biholder(st, st, gf);
  Scalar comp_bound = bf.constants.at("C") *
                      std::pow(bg.constants.at("C"), bf.constants.at("alpha2"));
  log << "C_gf=" << bgf.constants.at("C") << "<=" << comp_bound;
  if (bgf.constants.at("C") > comp_bound * (1 + 1e-6) + 1e-9) {
    log << " biholder composition fails; ";
    ok = false;
  }

  // 32 N(3,0) stratum hyperbolicity on certified-gauge strata
  GaugeTable cert = gauge_from_contraction(1.0, GaugeGrid::default_grid(), {});
  Scalar n30 = cert.upper[cert.grid.find(3.0, 0.0)];
  for (Space sp : {plane('A', 12, 3), cayley(CayleyDesc::Preset::F2, 5, "F2"),
                   cayley(CayleyDesc::Preset::Z2starZ, 4, "Z2*Z")}) {
    Index b = sp.is_plane() ? sp.rays[sp.ray_by_label("r_0")].base : 0;
    BoundaryStratum stc = boundary_stratum(sp, b, cert);
    if (stc.point_set.empty()) continue;
    std::vector<Index> pts = stc.point_set;
    pts.push_back(b);
    Scalar delta = four_point_delta(sp, pts).delta;
    log << " " << sp.name << ": delta=" << delta << "<=" << 32 * n30;
    if (delta > 32 * n30) {
      log << " FAIL; ";
      ok = false;
    }
  }
  return ok;
}

bool criterion_determinism(std::ostream& log) {
  auto pipeline = [](int jobs) {
    Space s = plane('A', 10, 2);
    json out;
    auto subset = subset_of(s, 120);
    DeltaResult delta = four_point_delta(s, subset, jobs);
    out["delta"] = to_json(delta, choose_epsilon(delta.delta, 1.0));
    GaugeGrid grid = GaugeGrid::default_grid();
    WitnessSearchConfig wcfg;
    wcfg.budget = 150;
    wcfg.seed = 42;
    wcfg.jobs = jobs;
    Index base = s.rays[s.ray_by_label("r_0")].base;
    json gauges = json::array();
    for (int r = 0; r < static_cast<int>(s.rays.size()); ++r)
      gauges.push_back(to_json(
          morse_gauge_lower(s, s.point_to_ray_geodesic(base, r), grid, wcfg)));
    out["gauges"] = gauges;
    StratumConfig scfg;
    scfg.stratify.seed = 42;
    scfg.stratify.jobs = jobs;
    BoundaryStratum st =
        boundary_stratum(s, base, gauge_from_contraction(4.0, grid, {}), scfg);
    out["stratum"] = to_json(st, s);
    BoundaryMap id = make_boundary_map(s, s, {});
    ExtensionMap ext = extend(s, s, id);
    out["extension"] = to_json(ext, s, s);
    return out.dump();
  };
  std::string a = pipeline(2);
  std::string b = pipeline(1);
  std::string c = pipeline(2);
  bool ok = (a == b) && (b == c);
  log << "3 repetitions, " << a.size() << " bytes"
      << (ok ? ", byte-identical" : ", MISMATCH");
  return ok;
}

struct Criterion {
  int id;
  const char* label;
  double budget_s;
  std::function<bool(std::ostream&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "visual-metric sandwich on every constructed space", 5.0,
       criterion_sandwich},
      {2, "four-point delta matches the naive oracle exactly", 30.0,
       criterion_delta_oracle},
      {3, "example A: exactly three 2eps-contracting geodesics", 60.0,
       criterion_example_a_table},
      {4, "example A: 4n+1 contraction growth law", 60.0, criterion_growth_law},
      {5, "example A/B stability verdicts", 300.0, criterion_verdicts},
      {6, "boundary product vs distance to the connecting geodesic", 60.0,
       criterion_dist_gp},
      {7, "boundary product slack on all stratum triples", 120.0, criterion_triple_slack},
      {8, "extension round-trip for the reflection", 300.0, criterion_extension},
      {9, "composition domination and 32N(3,0) strata", 120.0, criterion_shadows},
      {10, "byte-identical reports under fixed seeds", 120.0,
       criterion_determinism},
  };

  int failures = 0;
  for (auto& c : criteria) {
    std::ostringstream log;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& e) {
      log << "exception: " << e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    if (secs > c.budget_s) {
      log << " [runtime " << secs << "s exceeds budget " << c.budget_s << "s]";
      ok = false;
    }
    std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", ok ? "PASS" : "FAIL", c.id,
                c.label, secs, log.str().c_str());
    if (!ok) ++failures;
  }
  return failures;
}
