#include "cgeo/space.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "cgeo/parallel.hpp"

namespace cgeo {

namespace {

constexpr Scalar kTieTol = 1e-12;

std::string int_ray_label(long m) {
  std::ostringstream os;
  os << "r_" << m;
  return os.str();
}

struct CloudBuilder {
  std::vector<SpacePoint> cloud;
  std::map<std::pair<long long, long long>, Index> seen;  // plane points only

  Index add_plane(Scalar x, Scalar y) {
    auto key = std::make_pair(std::llround(x * 1e7), std::llround(y * 1e7));
    auto it = seen.find(key);
    if (it != seen.end()) return it->second;
    SpacePoint p;
    p.id = static_cast<Index>(cloud.size());
    p.pos = Vec2(x, y);
    cloud.push_back(p);
    seen.emplace(key, p.id);
    return p.id;
  }

  Index add_ray_point(int ray, Scalar height, const Vec2& base) {
    SpacePoint p;
    p.id = static_cast<Index>(cloud.size());
    p.ray = ray;
    p.height = height;
    p.pos = base;
    cloud.push_back(p);
    return p.id;
  }
};

// Dijkstra from one source over an adjacency list.
void dijkstra(const std::vector<std::vector<std::pair<Index, Scalar>>>& adj,
              Index src, Vec& out) {
  const Index n = static_cast<Index>(adj.size());
  out.setConstant(n, kInf);
  out[src] = 0;
  using QE = std::pair<Scalar, Index>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> q;
  q.emplace(0.0, src);
  while (!q.empty()) {
    auto [d, u] = q.top();
    q.pop();
    if (d > out[u] + kTieTol) continue;
    for (auto [v, w] : adj[u]) {
      Scalar nd = d + w;
      if (nd < out[v] - kTieTol) {
        out[v] = nd;
        q.emplace(nd, v);
      }
    }
  }
}

void check_ray_invariants(const Space& s, const Ray& ray) {
  if (ray.points.empty()) throw ValidationError("ray with no points: " + ray.label);
  Scalar prev = -1;
  Scalar acc = 0;
  for (size_t k = 0; k < ray.points.size(); ++k) {
    Scalar d0 = s.dist(ray.points.front(), ray.points[k]);
    if (k > 0) {
      Scalar gap = s.dist(ray.points[k - 1], ray.points[k]);
      acc += gap;
      if (std::abs(acc - d0) > 1e-6)
        throw ValidationError("ray " + ray.label + " is not a geodesic");
    }
    Scalar db = s.dist(ray.base, ray.points[k]);
    if (k > 0 && db <= prev + kTieTol)
      throw ValidationError("ray " + ray.label +
                            " distances from base are not strictly increasing");
    prev = db;
  }
}

void check_metric_axioms(const Space& s) {
  const Index n = s.size();
  if (n == 0) throw ValidationError("empty space");
  // Full check is O(n^3); sample deterministically past desk scale.
  std::uint64_t state = 0x2545F4914F6CDD1DULL;
  auto next = [&state](Index m) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<Index>((state >> 33) % static_cast<std::uint64_t>(m));
  };
  const bool full = n <= 120;
  const long samples = full ? 0 : 20000;
  auto check_triple = [&s](Index a, Index b, Index c) {
    Scalar ab = s.dist(a, b), bc = s.dist(b, c), ac = s.dist(a, c);
    if (ab < 0 || ac < 0 || bc < 0) throw ValidationError("negative distance");
    if (ab > ac + bc + kMetricTol)
      throw ValidationError("triangle inequality violated");
  };
  for (Index a = 0; a < n; ++a) {
    if (s.dist(a, a) != 0) throw ValidationError("d(x,x) != 0");
  }
  if (full) {
    for (Index a = 0; a < n; ++a)
      for (Index b = a + 1; b < n; ++b) {
        if (std::abs(s.dist(a, b) - s.dist(b, a)) > kMetricTol)
          throw ValidationError("metric not symmetric");
        for (Index c = 0; c < n; ++c) check_triple(a, b, c);
      }
  } else {
    for (long i = 0; i < samples; ++i) check_triple(next(n), next(n), next(n));
  }
}

GraphDesc cayley_f2(int radius) {
  GraphDesc g;
  // Words over a,A,b,B without inverse backtracking form the 4-regular tree.
  std::vector<std::string> words{""};
  std::unordered_map<std::string, Index> idx{{"", 0}};
  const std::string gens = "aAbB";
  auto inv = [](char c) -> char {
    switch (c) {
      case 'a': return 'A';
      case 'A': return 'a';
      case 'b': return 'B';
      default: return 'b';
    }
  };
  std::queue<Index> q;
  q.push(0);
  while (!q.empty()) {
    Index u = q.front();
    q.pop();
    std::string w = words[u];
    if (static_cast<int>(w.size()) >= radius) continue;
    for (char c : gens) {
      if (!w.empty() && c == inv(w.back())) continue;
      std::string nw = w + c;
      Index v = static_cast<Index>(words.size());
      words.push_back(nw);
      idx.emplace(nw, v);
      g.edges.push_back({u, v});
      g.weights.push_back(1.0);
      q.push(v);
    }
  }
  g.n = static_cast<Index>(words.size());
  for (char c : gens) {
    std::vector<Index> ray{0};
    std::string w;
    for (int k = 1; k <= radius; ++k) {
      w += c;
      ray.push_back(idx.at(w));
    }
    g.rays.push_back(ray);
    g.ray_labels.push_back(std::string(1, c));
  }
  return g;
}

GraphDesc cayley_z2(int radius) {
  GraphDesc g;
  std::map<std::pair<int, int>, Index> idx;
  std::vector<std::pair<int, int>> pts;
  for (int x = -radius; x <= radius; ++x)
    for (int y = -radius; y <= radius; ++y)
      if (std::abs(x) + std::abs(y) <= radius) {
        idx.emplace(std::make_pair(x, y), static_cast<Index>(pts.size()));
        pts.emplace_back(x, y);
      }
  g.n = static_cast<Index>(pts.size());
  for (Index u = 0; u < g.n; ++u) {
    auto [x, y] = pts[u];
    for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}}) {
      auto it = idx.find({x + dx, y + dy});
      if (it != idx.end()) {
        g.edges.push_back({u, it->second});
        g.weights.push_back(1.0);
      }
    }
  }
  // The +x axis is a geodesic ray but not a Morse one; marked so gauge
  // refutation has something to chew on.
  std::vector<Index> axis;
  for (int x = 0; x <= radius; ++x) axis.push_back(idx.at({x, 0}));
  g.rays.push_back(axis);
  g.ray_labels.push_back("x");
  return g;
}

// Z^2 * Z in alternating-syllable normal form. Syllables are (tag, a, b):
// tag 0 holds a Z^2 element (a, b), tag 1 holds a Z power (a, 0).
GraphDesc cayley_z2_star_z(int radius) {
  using Syl = std::array<int, 3>;
  using Word = std::vector<Syl>;
  auto key_of = [](const Word& w) {
    std::string k;
    for (auto& s : w) {
      k += std::to_string(s[0]) + ':' + std::to_string(s[1]) + ':' +
           std::to_string(s[2]) + '|';
    }
    return k;
  };
  auto apply = [](Word w, int tag, int da, int db) {
    if (!w.empty() && w.back()[0] == tag) {
      w.back()[1] += da;
      w.back()[2] += db;
      if (w.back()[1] == 0 && w.back()[2] == 0) w.pop_back();
    } else {
      w.push_back({tag, da, db});
    }
    return w;
  };
  std::vector<Word> words{{}};
  std::unordered_map<std::string, Index> idx{{"", 0}};
  GraphDesc g;
  std::queue<std::pair<Index, int>> q;
  q.emplace(0, 0);
  const std::array<std::tuple<int, int, int>, 6> gens{
      std::tuple{0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {1, 1, 0}, {1, -1, 0}};
  while (!q.empty()) {
    auto [u, d] = q.front();
    q.pop();
    if (d >= radius) continue;
    for (auto [tag, da, db] : gens) {
      Word nw = apply(words[u], tag, da, db);
      std::string k = key_of(nw);
      auto it = idx.find(k);
      Index v;
      if (it == idx.end()) {
        v = static_cast<Index>(words.size());
        if (v >= kMaxPoints)
          throw ValidationError("Z2*Z ball exceeds the point budget; reduce radius");
        words.push_back(nw);
        idx.emplace(k, v);
        q.emplace(v, d + 1);
      } else {
        v = it->second;
      }
      if (u < v) {
        g.edges.push_back({u, v});
        g.weights.push_back(1.0);
      }
    }
  }
  g.n = static_cast<Index>(words.size());
  auto prefix_ray = [&](const std::vector<std::tuple<int, int, int>>& steps,
                        const std::string& label) {
    std::vector<Index> ray{0};
    Word w;
    for (int k = 0; k < radius; ++k) {
      auto [tag, da, db] = steps[k % steps.size()];
      w = apply(w, tag, da, db);
      auto it = idx.find(key_of(w));
      if (it == idx.end()) break;
      ray.push_back(it->second);
    }
    g.rays.push_back(ray);
    g.ray_labels.push_back(label);
  };
  prefix_ray({{1, 1, 0}}, "t");
  prefix_ray({{1, -1, 0}}, "t_inv");
  prefix_ray({{0, 1, 0}}, "x");
  prefix_ray({std::tuple{0, 1, 0}, std::tuple{1, 1, 0}}, "xt");
  return g;
}

}  // namespace

SpacePoint Space::point(Index i) const {
  if (i < 0 || i >= n_) throw ValidationError("point index out of range");
  if (kind == SpaceKind::PlaneWithRays) return cloud_[i];
  SpacePoint p;
  p.id = i;
  return p;
}

Scalar Space::dist(Index a, Index b) const {
  if (kind == SpaceKind::PlaneWithRays) return dist(cloud_[a], cloud_[b]);
  return table_(a, b);
}

Scalar Space::dist(const SpacePoint& a, const SpacePoint& b) const {
  if (kind != SpaceKind::PlaneWithRays) {
    if (a.id < 0 || b.id < 0)
      throw ValidationError("free points are only meaningful in plane models");
    return table_(a.id, b.id);
  }
  if (a.ray >= 0 && b.ray >= 0) {
    if (a.ray == b.ray) return std::abs(a.height - b.height);
    return a.height + (a.pos - b.pos).norm() + b.height;
  }
  if (a.ray >= 0) return a.height + (a.pos - b.pos).norm();
  if (b.ray >= 0) return b.height + (a.pos - b.pos).norm();
  return (a.pos - b.pos).norm();
}

int Space::ray_by_label(const std::string& label) const {
  for (size_t i = 0; i < rays.size(); ++i)
    if (rays[i].label == label) return static_cast<int>(i);
  return -1;
}

Scalar Space::ray_base_x(int ray) const {
  return cloud_[rays.at(ray).base].pos.x();
}

Geodesic make_geodesic(const Space& s, std::vector<SpacePoint> pts, int ray_from,
                       int ray_to) {
  Geodesic g;
  g.pts = std::move(pts);
  g.params.resize(static_cast<Index>(g.pts.size()));
  Scalar acc = 0;
  for (size_t i = 0; i < g.pts.size(); ++i) {
    if (i > 0) acc += s.dist(g.pts[i - 1], g.pts[i]);
    g.params[static_cast<Index>(i)] = acc;
  }
  g.length = acc;
  g.ray_from = ray_from;
  g.ray_to = ray_to;
  return g;
}

Scalar dist_to_geodesic(const Space& s, const SpacePoint& p, const Geodesic& g) {
  Scalar best = kInf;
  for (const auto& q : g.pts) best = std::min(best, s.dist(p, q));
  return best;
}

std::vector<SpacePoint> Space::plane_polyline(const SpacePoint& a,
                                              const SpacePoint& b) const {
  std::vector<SpacePoint> out;
  auto push_ray_descent = [&](const SpacePoint& p, bool include_top) {
    // heights p.height, p.height - pitch, ..., pitch, 0
    Scalar h = p.height;
    if (include_top) out.push_back(p);
    long steps = static_cast<long>(std::ceil(h / pitch)) - 1;
    for (long k = steps; k >= 1; --k) {
      SpacePoint q;
      q.ray = p.ray;
      q.height = static_cast<Scalar>(k) * pitch;
      q.pos = p.pos;
      out.push_back(q);
    }
    SpacePoint base;
    base.pos = p.pos;
    out.push_back(base);
  };
  auto push_segment = [&](const Vec2& from, const Vec2& to, bool include_from) {
    Scalar len = (to - from).norm();
    long steps = std::max<long>(1, static_cast<long>(std::ceil(len / pitch)));
    for (long k = include_from ? 0 : 1; k <= steps; ++k) {
      SpacePoint q;
      Scalar t = static_cast<Scalar>(k) / static_cast<Scalar>(steps);
      q.pos = from + t * (to - from);
      out.push_back(q);
    }
  };
  auto push_ray_ascent = [&](const SpacePoint& p) {
    long steps = static_cast<long>(std::ceil(p.height / pitch)) - 1;
    for (long k = 1; k <= steps; ++k) {
      SpacePoint q;
      q.ray = p.ray;
      q.height = static_cast<Scalar>(k) * pitch;
      q.pos = p.pos;
      out.push_back(q);
    }
    out.push_back(p);
  };

  if (a.ray >= 0 && b.ray >= 0 && a.ray == b.ray) {
    Scalar lo = std::min(a.height, b.height), hi = std::max(a.height, b.height);
    out.push_back(a);
    long steps = static_cast<long>(std::ceil((hi - lo) / pitch));
    bool up = b.height > a.height;
    for (long k = 1; k < steps; ++k) {
      SpacePoint q;
      q.ray = a.ray;
      q.height = up ? lo + k * pitch : hi - k * pitch;
      q.pos = a.pos;
      out.push_back(q);
    }
    if (std::abs(b.height - a.height) > kTieTol) out.push_back(b);
    return out;
  }
  if (a.ray >= 0 && b.ray >= 0) {
    push_ray_descent(a, true);
    push_segment(a.pos, b.pos, false);
    push_ray_ascent(b);
    return out;
  }
  if (a.ray >= 0) {
    push_ray_descent(a, true);
    push_segment(a.pos, b.pos, false);
    return out;
  }
  if (b.ray >= 0) {
    push_segment(a.pos, b.pos, true);
    push_ray_ascent(b);
    return out;
  }
  push_segment(a.pos, b.pos, true);
  return out;
}

Geodesic Space::plane_geodesic(const SpacePoint& a, const SpacePoint& b) const {
  if (dist(a, b) <= kTieTol) return make_geodesic(*this, {a});
  return make_geodesic(*this, plane_polyline(a, b));
}

std::vector<SpacePoint> Space::geodesic_points(const SpacePoint& a,
                                               const SpacePoint& b) const {
  if (kind == SpaceKind::PlaneWithRays) {
    if (dist(a, b) <= kTieTol) return {a};
    return plane_polyline(a, b);
  }
  if (a.id < 0 || b.id < 0)
    throw ValidationError("graph geodesics need cloud points");
  return geodesic(a.id, b.id).pts;
}

Geodesic Space::geodesic(Index a, Index b) const {
  if (a == b) return make_geodesic(*this, {point(a)});
  if (kind == SpaceKind::PlaneWithRays) return plane_geodesic(cloud_[a], cloud_[b]);
  // Lexicographically smallest vertex sequence among shortest paths.
  Vec da(n_), db(n_);
  dijkstra(adj_, a, da);
  dijkstra(adj_, b, db);
  const Scalar D = da[b];
  std::vector<SpacePoint> pts{point(a)};
  Index cur = a;
  while (cur != b) {
    Index next = -1;
    for (auto [v, w] : adj_[cur]) {
      if (std::abs(da[cur] + w - da[v]) > 1e-9) continue;
      if (std::abs(da[v] + db[v] - D) > 1e-9) continue;
      if (next < 0 || v < next) next = v;
    }
    if (next < 0) throw PreconditionError("no geodesic; graph disconnected?");
    pts.push_back(point(next));
    cur = next;
  }
  return make_geodesic(*this, std::move(pts));
}

std::vector<Geodesic> Space::geodesics_all(Index a, Index b, int budget,
                                           bool* exhaustive) const {
  if (budget < 1) throw ValidationError("geodesics_all: budget must be >= 1");
  std::vector<Geodesic> out;
  bool complete = true;
  if (a == b || kind == SpaceKind::PlaneWithRays) {
    out.push_back(geodesic(a, b));
    if (exhaustive) *exhaustive = true;
    return out;
  }
  Vec da(n_), db(n_);
  dijkstra(adj_, a, da);
  dijkstra(adj_, b, db);
  const Scalar D = da[b];
  std::vector<Index> path{a};
  // DFS over the tight-edge DAG in ascending vertex order.
  auto rec = [&](auto&& self, Index cur) -> void {
    if (static_cast<int>(out.size()) >= budget) {
      complete = false;
      return;
    }
    if (cur == b) {
      std::vector<SpacePoint> pts;
      pts.reserve(path.size());
      for (Index v : path) pts.push_back(point(v));
      out.push_back(make_geodesic(*this, std::move(pts)));
      return;
    }
    std::vector<Index> nexts;
    for (auto [v, w] : adj_[cur]) {
      if (std::abs(da[cur] + w - da[v]) > 1e-9) continue;
      if (std::abs(da[v] + db[v] - D) > 1e-9) continue;
      nexts.push_back(v);
    }
    std::sort(nexts.begin(), nexts.end());
    for (Index v : nexts) {
      if (static_cast<int>(out.size()) >= budget) {
        complete = false;
        return;
      }
      path.push_back(v);
      self(self, v);
      path.pop_back();
    }
  };
  rec(rec, a);
  if (exhaustive) *exhaustive = complete;
  return out;
}

Geodesic Space::ray_geodesic(int ray_a, int ray_b) const {
  const Ray& ra = rays.at(ray_a);
  const Ray& rb = rays.at(ray_b);
  if (ray_a == ray_b) throw ValidationError("ray_geodesic: rays must differ");
  if (kind == SpaceKind::PlaneWithRays) {
    Geodesic g = plane_geodesic(cloud_[ra.points.back()], cloud_[rb.points.back()]);
    g.ray_from = ray_a;
    g.ray_to = ray_b;
    return g;
  }
  Geodesic g = geodesic(ra.points.back(), rb.points.back());
  g.ray_from = ray_a;
  g.ray_to = ray_b;
  return g;
}

Geodesic Space::point_to_ray_geodesic(Index a, int ray) const {
  const Ray& r = rays.at(ray);
  if (kind == SpaceKind::PlaneWithRays) {
    Geodesic g = plane_geodesic(cloud_[a], cloud_[r.points.back()]);
    g.ray_to = ray;
    return g;
  }
  Geodesic g = geodesic(a, r.points.back());
  g.ray_to = ray;
  return g;
}

Space build_space(const SpaceDescription& sd) {
  Space s;
  s.name = sd.name;

  if (const auto* gd = std::get_if<GraphDesc>(&sd.desc)) {
    if (gd->n <= 0) throw ValidationError("graph: need at least one vertex");
    if (gd->n > kMaxPoints) throw ValidationError("graph exceeds the point budget");
    if (!gd->weights.empty() && gd->weights.size() != gd->edges.size())
      throw ValidationError("graph: weights/edges size mismatch");
    s.kind = SpaceKind::Graph;
    s.n_ = gd->n;
    s.adj_.assign(gd->n, {});
    for (size_t e = 0; e < gd->edges.size(); ++e) {
      auto [u, v] = gd->edges[e];
      Scalar w = gd->weights.empty() ? 1.0 : gd->weights[e];
      if (u < 0 || v < 0 || u >= gd->n || v >= gd->n)
        throw ValidationError("graph: edge endpoint out of range");
      if (w <= 0) throw ValidationError("graph: nonpositive edge weight");
      s.adj_[u].emplace_back(v, w);
      s.adj_[v].emplace_back(u, w);
    }
    for (auto& nb : s.adj_) std::sort(nb.begin(), nb.end());
    s.table_.resize(gd->n, gd->n);
    std::vector<Vec> rows(gd->n);
    parallel_blocks(gd->n, 0, [&](Index b, Index e) {
      for (Index src = b; src < e; ++src) dijkstra(s.adj_, src, rows[src]);
    });
    for (Index src = 0; src < gd->n; ++src) s.table_.row(src) = rows[src];
    if (!s.table_.allFinite())
      throw ValidationError("graph is disconnected");
    s.truncation_radius = s.table_.maxCoeff();
    for (size_t ri = 0; ri < gd->rays.size(); ++ri) {
      Ray ray;
      ray.label = ri < gd->ray_labels.size() ? gd->ray_labels[ri]
                                             : "r" + std::to_string(ri);
      ray.points = gd->rays[ri];
      if (ray.points.empty()) throw ValidationError("empty ray marking");
      ray.base = ray.points.front();
      s.rays.push_back(std::move(ray));
    }
  } else if (const auto* pd = std::get_if<PlaneDesc>(&sd.desc)) {
    if (pd->preset != 'A' && pd->preset != 'B')
      throw ValidationError("plane_with_rays: preset must be A or B");
    if (pd->truncation <= 2 || pd->pitch <= 0 || pd->epsilon <= 0)
      throw ValidationError("plane_with_rays: bad truncation/pitch/epsilon");
    s.kind = SpaceKind::PlaneWithRays;
    s.plane_preset_ = pd->preset;
    s.truncation_radius = pd->truncation;
    s.pitch = pd->pitch;

    // Ray bases along the x-axis.
    std::vector<std::pair<std::string, Scalar>> bases;
    const Scalar R = pd->truncation;
    if (pd->preset == 'A') {
      int mm = pd->m_max >= 0 ? pd->m_max
                              : std::max(2, static_cast<int>(std::floor(R / 4)));
      for (int m = -mm; m <= mm; ++m)
        bases.emplace_back(int_ray_label(m), static_cast<Scalar>(m));
      bases.emplace_back("r_prime", pd->epsilon);
      bases.emplace_back("r_dprime", -pd->epsilon);
    } else {
      auto base_of = [](long m) -> Scalar {
        return m >= 0 ? 0.5 * m * (m + 1) : 0.5 * m * (1 - m);
      };
      int mm = pd->m_max;
      if (mm < 0) {
        mm = 0;
        while (base_of(mm + 1) <= R - 2) ++mm;
      }
      for (int m = -mm; m <= mm; ++m)
        bases.emplace_back(int_ray_label(m), base_of(m));
    }

    // Ray sampling pitch adapts so the cloud stays inside the point budget.
    Scalar rp = pd->pitch;
    auto ray_count = [&](Scalar p) {
      return static_cast<long>(bases.size()) *
             (static_cast<long>(std::floor(R / p)) + 1);
    };
    while (ray_count(rp) > 2600) rp *= 2;
    s.ray_pitch = rp;

    CloudBuilder cb;
    for (size_t ri = 0; ri < bases.size(); ++ri) {
      Ray ray;
      ray.label = bases[ri].first;
      Vec2 base(bases[ri].second, 0.0);
      ray.base = cb.add_plane(base.x(), base.y());
      ray.points.push_back(ray.base);
      long steps = static_cast<long>(std::floor(R / rp));
      for (long k = 1; k <= steps; ++k)
        ray.points.push_back(
            cb.add_ray_point(static_cast<int>(ri), k * rp, base));
      s.rays.push_back(std::move(ray));
    }
    // Coarse band over the upper half plane for balls and detours.
    Scalar bp = std::max(2 * pd->pitch, R / 20);
    for (Scalar y = 0; y <= R + kTieTol; y += bp)
      for (Scalar x = -R; x <= R + kTieTol; x += bp) cb.add_plane(x, y);
    // Fine core box around the origin for center-set geometry.
    for (Scalar y = -1.5; y <= 1.5 + kTieTol; y += pd->pitch)
      for (Scalar x = -2.5; x <= 2.5 + kTieTol; x += pd->pitch)
        cb.add_plane(x, y);
    if (static_cast<Index>(cb.cloud.size()) > kMaxPoints)
      throw ValidationError("plane cloud exceeds the point budget");
    s.cloud_ = std::move(cb.cloud);
    s.n_ = static_cast<Index>(s.cloud_.size());
  } else {
    const auto& cd = std::get<CayleyDesc>(sd.desc);
    if (cd.radius < 1) throw ValidationError("cayley: radius must be >= 1");
    GraphDesc gd;
    switch (cd.preset) {
      case CayleyDesc::Preset::F2: gd = cayley_f2(cd.radius); break;
      case CayleyDesc::Preset::Z2: gd = cayley_z2(cd.radius); break;
      case CayleyDesc::Preset::Z2starZ: gd = cayley_z2_star_z(cd.radius); break;
    }
    if (gd.n > kMaxPoints) throw ValidationError("cayley ball exceeds the point budget");
    SpaceDescription inner{gd, sd.name};
    s = build_space(inner);
    s.kind = SpaceKind::CayleyBall;
    s.truncation_radius = cd.radius;
    return s;
  }

  check_metric_axioms(s);
  for (const auto& ray : s.rays) check_ray_invariants(s, ray);
  return s;
}

}  // namespace cgeo
