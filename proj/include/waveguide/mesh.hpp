#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "waveguide/geometry.hpp"

namespace waveguide {

struct BoundaryTag {
  SegmentKind kind = SegmentKind::Wall;
  int port_id = -1;

  friend bool operator==(const BoundaryTag&, const BoundaryTag&) = default;
};

// Boundary edge of a port with its three quadratic nodes, ordered by the
// span coordinate t (y for side ports, x for top ports), t0 < t1.
struct PortEdge {
  int v0 = 0;
  int mid = 0;
  int v1 = 0;
  double t0 = 0.0;
  double t1 = 0.0;
};

// Conforming triangulation with quadratic (6-node) elements. Nodes are the
// vertices followed by one midpoint per unique edge; both groups are sorted
// lexicographically by (y, x). Immutable once built.
class Mesh {
 public:
  using TagFn = std::function<BoundaryTag(int va, int vb)>;

  // Structured mesh of axis-aligned rectangles with sides <= h, snapped to
  // every breakpoint and height line, each split into two triangles. The
  // diagonal is mirrored across x = 0 so symmetric domains get symmetric
  // meshes.
  static Mesh generate(const TruncatedDomain& domain, double h);

  // Builds from raw data. Triangles are reoriented counterclockwise; `tag`
  // is queried with indices into `vertices` for every boundary edge.
  static Mesh from_triangles(std::vector<Point> vertices,
                             std::vector<std::array<int, 3>> triangles,
                             double h, const TagFn& tag);

  // Uniform red refinement: every triangle split into four.
  Mesh refine() const;

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int node_count() const { return vertex_count() + edge_count(); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  double h() const { return h_; }

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }

  Point node(int i) const;
  // v0, v1, v2, mid(v0v1), mid(v1v2), mid(v2v0)
  std::array<int, 6> element_nodes(int t) const;
  double signed_area(int t) const;
  Point centroid(int t) const;

  // Tag per edge; std::nullopt for interior edges.
  const std::vector<std::optional<BoundaryTag>>& edge_tags() const {
    return edge_tags_;
  }
  std::vector<PortEdge> port_edges(int port_id) const;
  // Nodes lying on boundary edges with the given kind.
  std::vector<int> boundary_nodes(SegmentKind kind) const;

  // Plain-text dump: nodes, quadratic elements, boundary edges.
  void write_text(std::ostream& os) const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> edges_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<std::optional<BoundaryTag>> edge_tags_;
  double h_ = 0.0;
};

// Mesh of the mirror image x -> -x glued to the original along x = 0, with
// the map from each union node to its source node.
struct MirroredMesh {
  Mesh mesh;
  std::vector<int> source_node;
  std::vector<bool> mirrored;
};

MirroredMesh mirror_union(const Mesh& half);

}  // namespace waveguide
