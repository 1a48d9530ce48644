#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "waveguide/mesh.hpp"
#include "waveguide/modal.hpp"

namespace waveguide {

using SparseMatrixC = Eigen::SparseMatrix<cplx>;

struct Incident {
  int port_id = kLeftPort;
  int mode = 0;
};

// Reduced system over the free (non-Dirichlet) nodes. Column j of `rhs`
// is the forcing of incidents[j].
struct HelmholtzSystem {
  std::shared_ptr<const Mesh> mesh;
  double k = 0.0;
  std::vector<PortBasis> bases;
  std::vector<Incident> incidents;
  SparseMatrixC A;
  Eigen::MatrixXcd rhs;
  std::vector<int> free_nodes;    // reduced index -> node
  std::vector<int> reduced_index; // node -> reduced index or -1
  std::vector<int> constrained;   // Dirichlet nodes

  int dimension() const { return static_cast<int>(free_nodes.size()); }
  const PortBasis& basis(int port_id) const;
};

// Stiffness - k^2 mass - sum over ports and modes of Lambda_n/|p_n|^2 g_n g_n^T,
// with g_n the port moments of the mode profile. Dirichlet nodes (symmetry
// line) are eliminated when `dirichlet_symmetry` is set.
HelmholtzSystem assemble(std::shared_ptr<const Mesh> mesh, double k,
                         std::vector<PortBasis> bases,
                         const std::vector<Incident>& incidents,
                         bool dirichlet_symmetry);

struct ComplexField {
  std::shared_ptr<const Mesh> mesh;
  Eigen::VectorXcd values;  // one entry per quadratic node
  double k = 0.0;
  std::string geometry_id;
  std::string incident_id;
};

struct SolveDiagnostics {
  double residual = 0.0;  // max over right-hand sides of |Ax-b|/|b|
  double rcond = 1.0;     // reciprocal 1-norm condition estimate
  bool ill_conditioned = false;
};

// Sparse LU of a reduced system, reusable for several right-hand sides.
class Factorization {
 public:
  explicit Factorization(const HelmholtzSystem& system);
  ~Factorization();
  Factorization(const Factorization&) = delete;
  Factorization& operator=(const Factorization&) = delete;

  Eigen::VectorXcd solve(const Eigen::VectorXcd& b) const;
  double rcond() const { return rcond_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double rcond_ = 1.0;
};

inline constexpr double kIllConditioned = 1e-12;

// Factor once, solve for every incident; fields are expanded to all nodes.
std::vector<ComplexField> factor_solve(const HelmholtzSystem& system,
                                       SolveDiagnostics* diag = nullptr,
                                       const std::string& geometry_id = {});

// Total-field modal amplitude a_n = g_n^T u / |p_n|^2 at a port.
cplx port_amplitude(const ComplexField& field, const PortBasis& basis, int n);

struct FieldNorms {
  double l2 = 0.0;
  double h1 = 0.0;
};

// Norms over the elements whose centroid passes `region` (all if empty).
FieldNorms field_norms(const ComplexField& field,
                       const std::function<bool(Point)>& region = {});

struct GridSpec {
  double x0 = 0.0, x1 = 1.0;
  int nx = 2;
  double y0 = 0.0, y1 = 1.0;
  int ny = 2;

  Point point(int i, int j) const;
};

// Point location over a mesh via uniform buckets.
class Locator {
 public:
  explicit Locator(std::shared_ptr<const Mesh> mesh);
  // Element containing p and its barycentric coordinates, if any.
  std::optional<std::pair<int, std::array<double, 3>>> locate(Point p) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  double x0_ = 0, y0_ = 0, cell_ = 1;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

std::optional<cplx> evaluate(const ComplexField& field, const Locator& loc, Point p);

// Row-major samples (j outer over y, i inner over x); absent outside.
std::vector<std::optional<cplx>> eval_on_grid(const ComplexField& field,
                                              const GridSpec& grid);

}  // namespace waveguide
