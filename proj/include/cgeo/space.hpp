#ifndef CGEO_SPACE_HPP
#define CGEO_SPACE_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cgeo/types.hpp"

namespace cgeo {

enum class SpaceKind { Graph, CayleyBall, PlaneWithRays };

/// A point usable in distance computations. Cloud points carry their index;
/// plane models also admit free points (id = -1) so geodesic polylines can
/// hit bases and corners exactly.
struct SpacePoint {
  Index id = -1;
  int ray = -1;       // ray ordinal, -1 for plane/graph points
  Scalar height = 0;  // arc position along the ray
  Vec2 pos = Vec2::Zero();
};

/// A marked geodesic ray defining a boundary class. `points` are cloud
/// indices starting at the base, strictly increasing in distance from it.
struct Ray {
  std::string label;
  Index base = -1;
  std::vector<Index> points;
};

/// One geodesic representative. `params` is the arc-length parameterization
/// (cumulative consecutive distances); endpoints may stand in for boundary
/// points when the geodesic is a truncated (bi-)infinite one.
struct Geodesic {
  std::vector<SpacePoint> pts;
  Vec params;
  Scalar length = 0;
  int ray_from = -1;  // boundary endpoint ordinals, -1 = interior endpoint
  int ray_to = -1;
};

struct GraphDesc {
  Index n = 0;
  std::vector<std::array<Index, 2>> edges;
  std::vector<Scalar> weights;
  std::vector<std::vector<Index>> rays;
  std::vector<std::string> ray_labels;  // optional, defaults to r0, r1, ...
};

struct PlaneDesc {
  char preset = 'A';           // 'A': rays at integers plus +-epsilon; 'B': triangular bases
  Scalar epsilon = 0.25;
  Scalar truncation = 40.0;
  Scalar pitch = 0.25;
  int m_max = -1;              // ray index range; -1 = derived from truncation
};

struct CayleyDesc {
  enum class Preset { F2, Z2, Z2starZ };
  Preset preset = Preset::F2;
  int radius = 4;
};

struct SpaceDescription {
  std::variant<GraphDesc, PlaneDesc, CayleyDesc> desc;
  std::string name;
};

class Space {
 public:
  SpaceKind kind = SpaceKind::Graph;
  Scalar truncation_radius = 0;
  Scalar pitch = 0;        // plane models: polyline sample spacing
  Scalar ray_pitch = 0;    // plane models: spacing of sampled ray points
  std::vector<Ray> rays;
  std::string name;

  Index size() const { return n_; }
  SpacePoint point(Index i) const;
  Scalar dist(Index a, Index b) const;
  Scalar dist(const SpacePoint& a, const SpacePoint& b) const;

  /// Deterministic geodesic representative between cloud points. Graphs
  /// break ties by the lexicographically smallest vertex-index sequence.
  Geodesic geodesic(Index a, Index b) const;

  /// Up to `budget` distinct geodesics, deterministic order. `exhaustive`
  /// reports whether the enumeration covered all of them.
  std::vector<Geodesic> geodesics_all(Index a, Index b, int budget,
                                      bool* exhaustive = nullptr) const;

  /// Geodesic polyline between arbitrary points (graphs require cloud ids).
  std::vector<SpacePoint> geodesic_points(const SpacePoint& a,
                                          const SpacePoint& b) const;

  /// Truncated bi-infinite geodesic between two marked rays.
  Geodesic ray_geodesic(int ray_a, int ray_b) const;

  /// Truncated geodesic from an interior point out along a marked ray.
  Geodesic point_to_ray_geodesic(Index a, int ray) const;

  int ray_by_label(const std::string& label) const;  // -1 if absent

  // Plane models only.
  bool is_plane() const { return kind == SpaceKind::PlaneWithRays; }
  char plane_preset() const { return plane_preset_; }
  Scalar ray_base_x(int ray) const;

  // Graph models only: materialized all-pairs table and adjacency.
  const MetricMatrix& table() const { return table_; }
  const std::vector<std::vector<std::pair<Index, Scalar>>>& adjacency() const {
    return adj_;
  }

  friend Space build_space(const SpaceDescription& sd);

 private:
  Index n_ = 0;
  MetricMatrix table_;  // graphs only
  std::vector<std::vector<std::pair<Index, Scalar>>> adj_;
  std::vector<SpacePoint> cloud_;  // plane models: point descriptors
  char plane_preset_ = 0;

  Geodesic plane_geodesic(const SpacePoint& a, const SpacePoint& b) const;
  std::vector<SpacePoint> plane_polyline(const SpacePoint& a,
                                         const SpacePoint& b) const;
};

/// Builds and validates a space model: graph metrics via all-pairs shortest
/// paths, plane-with-rays via the exact closed form. Throws ValidationError
/// on disconnected graphs, nonpositive weights or budget overruns.
Space build_space(const SpaceDescription& sd);

/// Maximum cloud size a description may produce (keeps O(n^2) scans desk
/// scale).
inline constexpr Index kMaxPoints = 5000;

Geodesic make_geodesic(const Space& s, std::vector<SpacePoint> pts,
                       int ray_from = -1, int ray_to = -1);

Scalar dist_to_geodesic(const Space& s, const SpacePoint& p, const Geodesic& g);

}  // namespace cgeo

#endif
