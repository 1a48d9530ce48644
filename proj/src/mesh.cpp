#include "waveguide/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

bool less_yx(const Point& a, const Point& b) {
  return a.y < b.y || (a.y == b.y && a.x < b.x);
}

std::vector<double> subdivide(std::vector<double> lines, double h) {
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    const double a = lines[i];
    const double b = lines[i + 1];
    const int n = std::max(1, static_cast<int>(std::ceil((b - a) / h - 1e-9)));
    for (int j = 0; j < n; ++j) out.push_back(a + (b - a) * j / n);
  }
  out.push_back(lines.back());
  return out;
}

std::pair<int, int> sorted_pair(int a, int b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

const char* kind_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::Wall:
      return "wall";
    case SegmentKind::Port:
      return "port";
    case SegmentKind::Symmetry:
      return "symmetry";
  }
  return "?";
}

}  // namespace

Mesh Mesh::generate(const TruncatedDomain& domain, double h) {
  if (!(h > 0.0)) throw ValidationError("mesh size h must be > 0");
  if (domain.columns.empty()) throw ValidationError("domain has no columns");
  for (const auto& c : domain.columns)
    if (!(c.x1 > c.x0) || !(c.height > 0.0))
      throw ValidationError("degenerate domain: zero-area column");

  std::vector<double> xl;
  std::vector<double> yl{0.0};
  for (const auto& c : domain.columns) {
    xl.push_back(c.x0);
    xl.push_back(c.x1);
    yl.push_back(c.height);
  }
  const std::vector<double> xs = subdivide(xl, h);
  const std::vector<double> ys = subdivide(yl, h);
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());

  auto column_height = [&](double x) {
    for (const auto& c : domain.columns)
      if (x >= c.x0 && x <= c.x1) return c.height;
    return 0.0;
  };

  std::vector<int> vid(static_cast<std::size_t>(nx) * ny, -1);
  std::vector<Point> verts;
  auto vertex = [&](int i, int j) {
    int& id = vid[static_cast<std::size_t>(j) * nx + i];
    if (id < 0) {
      id = static_cast<int>(verts.size());
      verts.push_back({xs[i], ys[j]});
    }
    return id;
  };

  std::vector<std::array<int, 3>> tris;
  for (int j = 0; j + 1 < ny; ++j) {
    for (int i = 0; i + 1 < nx; ++i) {
      const double xc = 0.5 * (xs[i] + xs[i + 1]);
      if (ys[j + 1] > column_height(xc) * (1.0 + 1e-12)) continue;
      const int v00 = vertex(i, j);
      const int v10 = vertex(i + 1, j);
      const int v01 = vertex(i, j + 1);
      const int v11 = vertex(i + 1, j + 1);
      if (xc < 0.0) {
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      } else {
        tris.push_back({v00, v10, v01});
        tris.push_back({v10, v11, v01});
      }
    }
  }

  const double scale = std::max(domain.x_max() - domain.x_min(), 1.0);
  const double eps = 1e-12 * scale;
  auto classify = [&, verts](int va, int vb) {
    const Point a = verts[va];
    const Point b = verts[vb];
    const bool vertical = std::abs(a.x - b.x) < eps;
    const double ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
    const double xlo = std::min(a.x, b.x), xhi = std::max(a.x, b.x);
    for (const auto& p : domain.ports) {
      if (vertical && p.orientation != PortOrientation::Top &&
          std::abs(a.x - p.position) < eps && ylo >= p.span_lo - eps &&
          yhi <= p.span_hi + eps)
        return BoundaryTag{SegmentKind::Port, p.id};
      if (!vertical && p.orientation == PortOrientation::Top &&
          std::abs(a.y - p.position) < eps && xlo >= p.span_lo - eps &&
          xhi <= p.span_hi + eps)
        return BoundaryTag{SegmentKind::Port, p.id};
    }
    if (vertical && domain.symmetry != SymmetryLine::None && std::abs(a.x) < eps)
      return BoundaryTag{SegmentKind::Symmetry, -1};
    return BoundaryTag{SegmentKind::Wall, -1};
  };
  return from_triangles(std::move(verts), std::move(tris), h, classify);
}

Mesh Mesh::from_triangles(std::vector<Point> vertices,
                          std::vector<std::array<int, 3>> triangles, double h,
                          const TagFn& tag) {
  const int nv = static_cast<int>(vertices.size());
  std::vector<int> order(nv);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return less_yx(vertices[a], vertices[b]); });
  std::vector<int> new_index(nv);
  for (int i = 0; i < nv; ++i) new_index[order[i]] = i;

  Mesh m;
  m.h_ = h;
  m.vertices_.resize(nv);
  for (int i = 0; i < nv; ++i) m.vertices_[i] = vertices[order[i]];

  m.triangles_.reserve(triangles.size());
  for (auto t : triangles) {
    for (int& v : t) v = new_index[v];
    const Point& a = m.vertices_[t[0]];
    const Point& b = m.vertices_[t[1]];
    const Point& c = m.vertices_[t[2]];
    const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    if (area2 == 0.0) throw ValidationError("degenerate triangle in mesh");
    if (area2 < 0.0) std::swap(t[1], t[2]);
    m.triangles_.push_back(t);
  }

  // Unique edges ordered by midpoint (y, x).
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : m.triangles_)
    for (int k = 0; k < 3; ++k) ++edge_count[sorted_pair(t[k], t[(k + 1) % 3])];
  std::vector<std::pair<int, int>> edges;
  edges.reserve(edge_count.size());
  for (const auto& [e, c] : edge_count) edges.push_back(e);
  auto mid = [&](const std::pair<int, int>& e) {
    const Point& a = m.vertices_[e.first];
    const Point& b = m.vertices_[e.second];
    return Point{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  };
  std::sort(edges.begin(), edges.end(),
            [&](const auto& a, const auto& b) { return less_yx(mid(a), mid(b)); });
  std::map<std::pair<int, int>, int> edge_index;
  m.edges_.reserve(edges.size());
  m.edge_tags_.assign(edges.size(), std::nullopt);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edge_index[edges[i]] = static_cast<int>(i);
    m.edges_.push_back({edges[i].first, edges[i].second});
    if (edge_count[edges[i]] == 1)
      m.edge_tags_[i] = tag(order[edges[i].first], order[edges[i].second]);
  }
  m.triangle_edges_.reserve(m.triangles_.size());
  for (const auto& t : m.triangles_) {
    m.triangle_edges_.push_back({edge_index[sorted_pair(t[0], t[1])],
                                 edge_index[sorted_pair(t[1], t[2])],
                                 edge_index[sorted_pair(t[2], t[0])]});
  }
  return m;
}

Mesh Mesh::refine() const {
  const int nv = vertex_count();
  std::vector<Point> verts = vertices_;
  verts.reserve(node_count());
  for (int e = 0; e < edge_count(); ++e) verts.push_back(node(nv + e));

  std::vector<std::array<int, 3>> tris;
  tris.reserve(4 * triangles_.size());
  for (int t = 0; t < triangle_count(); ++t) {
    const auto n = element_nodes(t);
    tris.push_back({n[0], n[3], n[5]});
    tris.push_back({n[3], n[1], n[4]});
    tris.push_back({n[5], n[4], n[2]});
    tris.push_back({n[3], n[4], n[5]});
  }

  std::map<std::pair<int, int>, BoundaryTag> child_tags;
  for (int e = 0; e < edge_count(); ++e) {
    if (!edge_tags_[e]) continue;
    child_tags[sorted_pair(edges_[e][0], nv + e)] = *edge_tags_[e];
    child_tags[sorted_pair(nv + e, edges_[e][1])] = *edge_tags_[e];
  }
  return from_triangles(std::move(verts), std::move(tris), 0.5 * h_,
                        [&](int a, int b) { return child_tags.at(sorted_pair(a, b)); });
}

Point Mesh::node(int i) const {
  if (i < vertex_count()) return vertices_[i];
  const auto& e = edges_[i - vertex_count()];
  const Point& a = vertices_[e[0]];
  const Point& b = vertices_[e[1]];
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

std::array<int, 6> Mesh::element_nodes(int t) const {
  const auto& v = triangles_[t];
  const auto& e = triangle_edges_[t];
  const int nv = vertex_count();
  return {v[0], v[1], v[2], nv + e[0], nv + e[1], nv + e[2]};
}

double Mesh::signed_area(int t) const {
  const auto& v = triangles_[t];
  const Point& a = vertices_[v[0]];
  const Point& b = vertices_[v[1]];
  const Point& c = vertices_[v[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Point Mesh::centroid(int t) const {
  const auto& v = triangles_[t];
  return {(vertices_[v[0]].x + vertices_[v[1]].x + vertices_[v[2]].x) / 3.0,
          (vertices_[v[0]].y + vertices_[v[1]].y + vertices_[v[2]].y) / 3.0};
}

std::vector<PortEdge> Mesh::port_edges(int port_id) const {
  std::vector<PortEdge> out;
  const int nv = vertex_count();
  for (int e = 0; e < edge_count(); ++e) {
    const auto& tg = edge_tags_[e];
    if (!tg || tg->kind != SegmentKind::Port || tg->port_id != port_id) continue;
    int a = edges_[e][0];
    int b = edges_[e][1];
    const bool vertical = vertices_[a].x == vertices_[b].x;
    double ta = vertical ? vertices_[a].y : vertices_[a].x;
    double tb = vertical ? vertices_[b].y : vertices_[b].x;
    if (ta > tb) {
      std::swap(a, b);
      std::swap(ta, tb);
    }
    out.push_back({a, nv + e, b, ta, tb});
  }
  std::sort(out.begin(), out.end(),
            [](const PortEdge& p, const PortEdge& q) { return p.t0 < q.t0; });
  return out;
}

std::vector<int> Mesh::boundary_nodes(SegmentKind kind) const {
  std::vector<int> out;
  const int nv = vertex_count();
  for (int e = 0; e < edge_count(); ++e) {
    if (!edge_tags_[e] || edge_tags_[e]->kind != kind) continue;
    out.push_back(edges_[e][0]);
    out.push_back(edges_[e][1]);
    out.push_back(nv + e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void Mesh::write_text(std::ostream& os) const {
  const auto prec = os.precision(17);
  os << "nodes " << node_count() << "\n";
  for (int i = 0; i < node_count(); ++i) {
    const Point p = node(i);
    os << i << " " << p.x << " " << p.y << "\n";
  }
  os << "elements " << triangle_count() << "\n";
  for (int t = 0; t < triangle_count(); ++t) {
    os << t;
    for (int n : element_nodes(t)) os << " " << n;
    os << "\n";
  }
  int nb = 0;
  for (const auto& tg : edge_tags_) nb += tg.has_value();
  os << "boundary_edges " << nb << "\n";
  for (int e = 0; e < edge_count(); ++e) {
    if (!edge_tags_[e]) continue;
    os << e << " " << edges_[e][0] << " " << edges_[e][1] << " "
       << kind_name(edge_tags_[e]->kind) << " " << edge_tags_[e]->port_id << "\n";
  }
  os.precision(prec);
}

MirroredMesh mirror_union(const Mesh& half) {
  const int nv = half.vertex_count();
  std::vector<Point> verts = half.vertices();
  std::vector<int> mirror_of(nv);
  for (int i = 0; i < nv; ++i) {
    const Point p = half.vertices()[i];
    if (p.x == 0.0) {
      mirror_of[i] = i;
    } else {
      mirror_of[i] = static_cast<int>(verts.size());
      verts.push_back({-p.x, p.y});
    }
  }
  std::vector<std::array<int, 3>> tris = half.triangles();
  for (const auto& t : half.triangles())
    tris.push_back({mirror_of[t[0]], mirror_of[t[2]], mirror_of[t[1]]});

  std::map<std::pair<int, int>, BoundaryTag> tags;
  for (int e = 0; e < half.edge_count(); ++e) {
    const auto& tg = half.edge_tags()[e];
    if (!tg) continue;
    const auto& ed = half.edges()[e];
    tags[sorted_pair(ed[0], ed[1])] = *tg;
    BoundaryTag mt = *tg;
    if (mt.kind == SegmentKind::Port && mt.port_id == kLeftPort) mt.port_id = kRightPort;
    tags[sorted_pair(mirror_of[ed[0]], mirror_of[ed[1]])] = mt;
  }

  MirroredMesh out{Mesh::from_triangles(std::move(verts), std::move(tris), half.h(),
                                        [&](int a, int b) {
                                          auto it = tags.find(sorted_pair(a, b));
                                          return it == tags.end() ? BoundaryTag{}
                                                                  : it->second;
                                        }),
                   {},
                   {}};

  // Recover per-node sources by coordinates (union vertex order was resorted).
  const Mesh& m = out.mesh;
  std::map<std::pair<double, double>, int> half_node;
  for (int i = 0; i < half.node_count(); ++i) {
    const Point p = half.node(i);
    half_node[{p.x, p.y}] = i;
  }
  out.source_node.resize(m.node_count());
  out.mirrored.resize(m.node_count());
  for (int i = 0; i < m.node_count(); ++i) {
    const Point p = m.node(i);
    const bool left = p.x <= 0.0;
    const auto it = half_node.find({left ? p.x : -p.x, p.y});
    if (it == half_node.end()) throw ValidationError("mirror_union: unmatched node");
    out.source_node[i] = it->second;
    out.mirrored[i] = !left;
  }
  return out;
}

}  // namespace waveguide
