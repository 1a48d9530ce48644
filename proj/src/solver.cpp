#include "waveguide/solver.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "waveguide/errors.hpp"
#include "waveguide/fem.hpp"
#include "waveguide/log.hpp"

namespace waveguide {

namespace {

using Triplet = Eigen::Triplet<cplx>;

// Moments g_i = integral over the port of phi_i * p_n for every node on the
// port, by 3-point Gauss per edge.
std::vector<std::pair<int, double>> port_moments(const std::vector<PortEdge>& edges,
                                                 const TransverseMode& mode) {
  std::vector<std::pair<int, double>> acc;
  double phi[3];
  for (const auto& e : edges) {
    const double len = e.t1 - e.t0;
    double local[3] = {0, 0, 0};
    for (int g = 0; g < 3; ++g) {
      line_shape_p2(GaussLine3::x[g], phi);
      const double p = mode.profile(e.t0 + GaussLine3::x[g] * len);
      for (int a = 0; a < 3; ++a) local[a] += GaussLine3::w[g] * len * phi[a] * p;
    }
    acc.push_back({e.v0, local[0]});
    acc.push_back({e.mid, local[1]});
    acc.push_back({e.v1, local[2]});
  }
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<int, double>> out;
  for (const auto& [i, v] : acc) {
    if (!out.empty() && out.back().first == i)
      out.back().second += v;
    else
      out.push_back({i, v});
  }
  return out;
}

double port_coordinate(const PortBasis& b) { return b.port.position; }

}  // namespace

const PortBasis& HelmholtzSystem::basis(int port_id) const {
  for (const auto& b : bases)
    if (b.port.id == port_id) return b;
  throw ValidationError("no basis for port " + std::to_string(port_id));
}

HelmholtzSystem assemble(std::shared_ptr<const Mesh> mesh, double k,
                         std::vector<PortBasis> bases,
                         const std::vector<Incident>& incidents,
                         bool dirichlet_symmetry) {
  HelmholtzSystem sys;
  sys.mesh = mesh;
  sys.k = k;
  sys.bases = std::move(bases);
  sys.incidents = incidents;
  const Mesh& m = *mesh;
  const int nn = m.node_count();

  // Every tagged port needs a basis.
  for (const auto& tg : m.edge_tags()) {
    if (!tg || tg->kind != SegmentKind::Port) continue;
    bool found = false;
    for (const auto& b : sys.bases) found = found || b.port.id == tg->port_id;
    if (!found)
      throw ValidationError("missing modal basis for port " + std::to_string(tg->port_id));
  }
  for (const auto& inc : incidents) {
    const PortBasis& b = sys.basis(inc.port_id);
    if (inc.mode < 0 || inc.mode >= b.size())
      throw ValidationError("incident mode index outside the port basis");
    if (!b.modes[inc.mode].incoming)
      throw ValidationError("incident mode has no incoming wave");
  }

  sys.reduced_index.assign(nn, 0);
  if (dirichlet_symmetry) {
    sys.constrained = m.boundary_nodes(SegmentKind::Symmetry);
    for (int i : sys.constrained) sys.reduced_index[i] = -1;
  }
  for (int i = 0; i < nn; ++i) {
    if (sys.reduced_index[i] < 0) continue;
    sys.reduced_index[i] = static_cast<int>(sys.free_nodes.size());
    sys.free_nodes.push_back(i);
  }
  const int n = sys.dimension();

  std::vector<Triplet> trip;
  trip.reserve(static_cast<std::size_t>(m.triangle_count()) * 36);
  const double k2 = k * k;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const auto nodes = m.element_nodes(t);
    const auto& v = m.triangles()[t];
    const Point p0 = m.vertices()[v[0]], p1 = m.vertices()[v[1]], p2 = m.vertices()[v[2]];
    const fem::Affine af(p0.x, p0.y, p1.x, p1.y, p2.x, p2.y);
    double K[6][6] = {};
    double M[6][6] = {};
    for (int q = 0; q < fem::TriangleRule::size; ++q) {
      const double l1 = fem::TriangleRule::points[q][0];
      const double l2 = fem::TriangleRule::points[q][1];
      const double l0 = 1.0 - l1 - l2;
      const double w = fem::TriangleRule::weights[q] * af.area;
      const auto N = fem::shape(l0, l1, l2);
      const auto dN = fem::shape_dl(l0, l1, l2);
      double gx[6], gy[6];
      for (int a = 0; a < 6; ++a) {
        gx[a] = dN[a][0] * af.gx[0] + dN[a][1] * af.gx[1] + dN[a][2] * af.gx[2];
        gy[a] = dN[a][0] * af.gy[0] + dN[a][1] * af.gy[1] + dN[a][2] * af.gy[2];
      }
      for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
          K[a][b] += w * (gx[a] * gx[b] + gy[a] * gy[b]);
          M[a][b] += w * (N[a] * N[b]);
        }
    }
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < a; ++b) {
        K[a][b] = K[b][a];
        M[a][b] = M[b][a];
      }
    for (int a = 0; a < 6; ++a) {
      const int ra = sys.reduced_index[nodes[a]];
      if (ra < 0) continue;
      for (int b = 0; b < 6; ++b) {
        const int rb = sys.reduced_index[nodes[b]];
        if (rb < 0) continue;
        trip.emplace_back(ra, rb, cplx(K[a][b] - k2 * M[a][b], 0.0));
      }
    }
  }

  sys.rhs = Eigen::MatrixXcd::Zero(n, std::max<std::size_t>(1, incidents.size()));
  for (const auto& b : sys.bases) {
    const auto edges = m.port_edges(b.port.id);
    if (edges.empty())
      throw ValidationError("port " + std::to_string(b.port.id) + " has no mesh edges");
    const double s = port_coordinate(b);
    for (int mi = 0; mi < b.size(); ++mi) {
      const auto& mode = b.modes[mi];
      const auto g = port_moments(edges, mode);
      const cplx coef = mode.robin / mode.norm2;
      for (const auto& [i, gi] : g) {
        const int ri = sys.reduced_index[i];
        if (ri < 0) continue;
        for (const auto& [j, gj] : g) {
          const int rj = sys.reduced_index[j];
          if (rj < 0) continue;
          trip.emplace_back(ri, rj, -coef * (gi * gj));
        }
      }
      for (std::size_t c = 0; c < incidents.size(); ++c) {
        if (incidents[c].port_id != b.port.id || incidents[c].mode != mi) continue;
        const cplx f = b.normal_sign() * mode.incoming->derivative(s) -
                       mode.robin * mode.incoming->value(s);
        for (const auto& [i, gi] : g) {
          const int ri = sys.reduced_index[i];
          if (ri >= 0) sys.rhs(ri, static_cast<Eigen::Index>(c)) += f * gi;
        }
      }
    }
  }

  sys.A.resize(n, n);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  sys.A.makeCompressed();
  return sys;
}

struct Factorization::Impl {
  Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>> lu;
};

namespace {

double one_norm(const SparseMatrixC& A) {
  double best = 0.0;
  for (int j = 0; j < A.outerSize(); ++j) {
    double s = 0.0;
    for (SparseMatrixC::InnerIterator it(A, j); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

Factorization::Factorization(const HelmholtzSystem& system)
    : impl_(std::make_unique<Impl>()) {
  const int n = system.dimension();
  if (n == 0) throw SolverError("empty system");
  impl_->lu.compute(system.A);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverError(
        "sparse LU failed (singular system; a resonance of the truncated domain? "
        "try a different margin): " +
        impl_->lu.lastErrorMessage());

  // Hager's 1-norm estimate of |A^{-1}|; A is complex symmetric so
  // A^{-H} x = conj(A^{-1} conj(x)).
  Eigen::VectorXcd x = Eigen::VectorXcd::Constant(n, cplx(1.0 / n, 0.0));
  double est = 0.0;
  int last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Eigen::VectorXcd y = impl_->lu.solve(x);
    est = y.cwiseAbs().sum();
    Eigen::VectorXcd xi(n);
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(y[i]);
      xi[i] = a > 0.0 ? y[i] / a : cplx(1.0, 0.0);
    }
    const Eigen::VectorXcd z = impl_->lu.solve(xi.conjugate()).conjugate();
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= std::real(z.dot(x)) || j == last) break;
    last = static_cast<int>(j);
    x.setZero();
    x[j] = 1.0;
  }
  // Higham's alternating-sign safeguard.
  Eigen::VectorXcd alt(n);
  for (int i = 0; i < n; ++i)
    alt[i] = (i % 2 ? -1.0 : 1.0) * (1.0 + double(i) / std::max(1, n - 1));
  const double est2 = 2.0 * impl_->lu.solve(alt).cwiseAbs().sum() / (3.0 * n);
  est = std::max(est, est2);
  const double anorm = one_norm(system.A);
  rcond_ = (est > 0.0 && anorm > 0.0 && std::isfinite(est)) ? 1.0 / (anorm * est) : 0.0;
  if (rcond_ == 0.0) throw SolverError("matrix is numerically singular");
}

Factorization::~Factorization() = default;

Eigen::VectorXcd Factorization::solve(const Eigen::VectorXcd& b) const {
  Eigen::VectorXcd x = impl_->lu.solve(b);
  if (!x.allFinite()) throw SolverError("solve produced non-finite values");
  return x;
}

std::vector<ComplexField> factor_solve(const HelmholtzSystem& system,
                                       SolveDiagnostics* diag,
                                       const std::string& geometry_id) {
  Factorization fac(system);
  SolveDiagnostics d;
  d.rcond = fac.rcond();
  d.ill_conditioned = d.rcond < kIllConditioned;
  if (d.ill_conditioned)
    log::warn("ill_conditioned", {{"geometry", geometry_id}, {"rcond", d.rcond}});
  std::vector<ComplexField> out;
  const int nn = system.mesh->node_count();
  for (Eigen::Index c = 0; c < system.rhs.cols(); ++c) {
    const Eigen::VectorXcd b = system.rhs.col(c);
    const Eigen::VectorXcd x = fac.solve(b);
    const double bn = b.norm();
    const double rn = (system.A * x - b).norm();
    d.residual = std::max(d.residual, bn > 0.0 ? rn / bn : rn);
    ComplexField f;
    f.mesh = system.mesh;
    f.values = Eigen::VectorXcd::Zero(nn);
    for (int r = 0; r < system.dimension(); ++r) f.values[system.free_nodes[r]] = x[r];
    f.k = system.k;
    f.geometry_id = geometry_id;
    if (c < static_cast<Eigen::Index>(system.incidents.size())) {
      std::ostringstream os;
      os << "port" << system.incidents[c].port_id << ".mode" << system.incidents[c].mode;
      f.incident_id = os.str();
    } else {
      f.incident_id = "none";
    }
    out.push_back(std::move(f));
  }
  if (diag) *diag = d;
  return out;
}

cplx port_amplitude(const ComplexField& field, const PortBasis& basis, int n) {
  const auto edges = field.mesh->port_edges(basis.port.id);
  std::vector<cplx> nodal(field.values.data(), field.values.data() + field.values.size());
  return project_trace(edges, nodal, basis, n);
}

FieldNorms field_norms(const ComplexField& field, const std::function<bool(Point)>& region) {
  const Mesh& m = *field.mesh;
  double l2 = 0.0, grad = 0.0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    if (region && !region(m.centroid(t))) continue;
    const auto nodes = m.element_nodes(t);
    const auto& v = m.triangles()[t];
    const Point p0 = m.vertices()[v[0]], p1 = m.vertices()[v[1]], p2 = m.vertices()[v[2]];
    const fem::Affine af(p0.x, p0.y, p1.x, p1.y, p2.x, p2.y);
    for (int q = 0; q < fem::TriangleRule::size; ++q) {
      const double l1 = fem::TriangleRule::points[q][0];
      const double l2b = fem::TriangleRule::points[q][1];
      const double l0 = 1.0 - l1 - l2b;
      const double w = fem::TriangleRule::weights[q] * af.area;
      const auto N = fem::shape(l0, l1, l2b);
      const auto dN = fem::shape_dl(l0, l1, l2b);
      cplx u = 0.0, ux = 0.0, uy = 0.0;
      for (int a = 0; a < 6; ++a) {
        const cplx ua = field.values[nodes[a]];
        u += ua * N[a];
        ux += ua * (dN[a][0] * af.gx[0] + dN[a][1] * af.gx[1] + dN[a][2] * af.gx[2]);
        uy += ua * (dN[a][0] * af.gy[0] + dN[a][1] * af.gy[1] + dN[a][2] * af.gy[2]);
      }
      l2 += w * std::norm(u);
      grad += w * (std::norm(ux) + std::norm(uy));
    }
  }
  return {std::sqrt(l2), std::sqrt(l2 + grad)};
}

Point GridSpec::point(int i, int j) const {
  const double x = nx > 1 ? x0 + (x1 - x0) * i / (nx - 1) : x0;
  const double y = ny > 1 ? y0 + (y1 - y0) * j / (ny - 1) : y0;
  return {x, y};
}

Locator::Locator(std::shared_ptr<const Mesh> mesh) : mesh_(std::move(mesh)) {
  const auto& vs = mesh_->vertices();
  double xmin = vs[0].x, xmax = vs[0].x, ymin = vs[0].y, ymax = vs[0].y;
  for (const auto& p : vs) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  cell_ = std::max(mesh_->h(), 1e-6);
  x0_ = xmin;
  y0_ = ymin;
  nx_ = std::max(1, static_cast<int>(std::ceil((xmax - xmin) / cell_)) + 1);
  ny_ = std::max(1, static_cast<int>(std::ceil((ymax - ymin) / cell_)) + 1);
  buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
  for (int t = 0; t < mesh_->triangle_count(); ++t) {
    const auto& v = mesh_->triangles()[t];
    double bx0 = vs[v[0]].x, bx1 = bx0, by0 = vs[v[0]].y, by1 = by0;
    for (int a = 1; a < 3; ++a) {
      bx0 = std::min(bx0, vs[v[a]].x);
      bx1 = std::max(bx1, vs[v[a]].x);
      by0 = std::min(by0, vs[v[a]].y);
      by1 = std::max(by1, vs[v[a]].y);
    }
    const int i0 = std::clamp(static_cast<int>(std::floor((bx0 - x0_) / cell_)), 0, nx_ - 1);
    const int i1 = std::clamp(static_cast<int>(std::floor((bx1 - x0_) / cell_)), 0, nx_ - 1);
    const int j0 = std::clamp(static_cast<int>(std::floor((by0 - y0_) / cell_)), 0, ny_ - 1);
    const int j1 = std::clamp(static_cast<int>(std::floor((by1 - y0_) / cell_)), 0, ny_ - 1);
    for (int j = j0; j <= j1; ++j)
      for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(t);
  }
}

std::optional<std::pair<int, std::array<double, 3>>> Locator::locate(Point p) const {
  const int i = static_cast<int>(std::floor((p.x - x0_) / cell_));
  const int j = static_cast<int>(std::floor((p.y - y0_) / cell_));
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
  const auto& vs = mesh_->vertices();
  constexpr double tol = 1e-12;
  for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i]) {
    const auto& v = mesh_->triangles()[t];
    const Point a = vs[v[0]], b = vs[v[1]], c = vs[v[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
    const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
    const double l0 = 1.0 - l1 - l2;
    if (l0 >= -tol && l1 >= -tol && l2 >= -tol)
      return std::pair{t, std::array<double, 3>{l0, l1, l2}};
  }
  return std::nullopt;
}

std::optional<cplx> evaluate(const ComplexField& field, const Locator& loc, Point p) {
  const auto hit = loc.locate(p);
  if (!hit) return std::nullopt;
  const auto& [t, l] = *hit;
  const auto N = fem::shape(l[0], l[1], l[2]);
  const auto nodes = field.mesh->element_nodes(t);
  cplx u = 0.0;
  for (int a = 0; a < 6; ++a) u += field.values[nodes[a]] * N[a];
  return u;
}

std::vector<std::optional<cplx>> eval_on_grid(const ComplexField& field, const GridSpec& grid) {
  Locator loc(field.mesh);
  std::vector<std::optional<cplx>> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) out.push_back(evaluate(field, loc, grid.point(i, j)));
  return out;
}

}  // namespace waveguide
