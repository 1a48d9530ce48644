#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "waveguide/geometry.hpp"
#include "waveguide/mesh.hpp"

namespace waveguide {

using cplx = std::complex<double>;

enum class ModeKind { Propagating, Evanescent, WavePacket, Threshold };
enum class ProfileFamily { Cosine, Sine };

const char* to_string(ModeKind k);

// Longitudinal factor a e^{p s} + b e^{q s} + c0 + c1 s in the port's global
// coordinate s (x for side ports, y for top ports).
struct Longitudinal {
  cplx a{0.0}, p{0.0};
  cplx b{0.0}, q{0.0};
  cplx c0{0.0}, c1{0.0};

  cplx value(double s) const;
  cplx derivative(double s) const;
};

// One transverse mode p_n(t) = cos(wavenumber t) or sin(wavenumber t) times
// a longitudinal factor. `rate` is the propagation constant for propagating
// modes, the decay rate for evanescent and packet modes, 0 at threshold.
struct TransverseMode {
  int index = 0;
  ModeKind kind = ModeKind::Evanescent;
  ProfileFamily family = ProfileFamily::Cosine;
  double wavenumber = 0.0;
  double rate = 0.0;
  double norm2 = 0.0;  // integral of p_n^2 over the span
  cplx robin{0.0};     // outward normal derivative over value of `outgoing`
  Longitudinal outgoing;
  std::optional<Longitudinal> incoming;

  double profile(double t) const;
};

struct PortBasis {
  Port port;
  double k = 0.0;
  std::vector<TransverseMode> modes;

  int size() const { return static_cast<int>(modes.size()); }
  // +1 or -1: outward normal derivative is sign * d/ds.
  double normal_sign() const;
  // Full mode function at a point (profile times longitudinal factor).
  cplx outgoing(int n, Point p) const;
  cplx incoming(int n, Point p) const;
  cplx incoming_normal_derivative(int n, Point p) const;
  double longitudinal_coord(Point p) const;
  double transverse_coord(Point p) const;
};

// Horizontal unit strip, profiles cos(n pi y). With `packet` the n = 1 mode
// is the outgoing wave packet (e^{-bx} - i e^{bx})/sqrt(2b) (left ports only).
PortBasis strip_modes(double k, const Port& port, int n_terms, bool packet);

// Vertical half-branch of width ell = pi/k with Neumann walls: propagating
// piston, threshold mode (y -+ i) cos(pi x/ell)/sqrt(ell), evanescent rest.
PortBasis branch_modes(double k, const Port& port, int n_terms);

// Vertical half-branch with Dirichlet at x = 0 and Neumann at x = -ell:
// profiles sin((2j+1) pi x/(2 ell)); j = 0 propagates with rate k sqrt(3)/2.
PortBasis branch_modes_mixed(double k, const Port& port, int n_terms);

// L2 projection onto mode n of a trace given as a function of the span
// coordinate, by composite 3-point Gauss quadrature on `panels` panels.
cplx project_trace(const std::function<cplx(double)>& trace,
                   const PortBasis& basis, int n, int panels = 512);

// Same for a quadratic nodal trace on the port's mesh edges.
cplx project_trace(const std::vector<PortEdge>& edges,
                   const std::vector<cplx>& nodal, const PortBasis& basis, int n);

// 3-point Gauss rule on [0, 1].
struct GaussLine3 {
  static constexpr double x[3] = {0.11270166537925831, 0.5, 0.8872983346207417};
  static constexpr double w[3] = {0.2777777777777778, 0.4444444444444444,
                                  0.2777777777777778};
};

// Quadratic Lagrange shape functions on [0, 1] with nodes 0, 1/2, 1.
inline void line_shape_p2(double s, double out[3]) {
  out[0] = (1.0 - s) * (1.0 - 2.0 * s);
  out[1] = 4.0 * s * (1.0 - s);
  out[2] = s * (2.0 * s - 1.0);
}

}  // namespace waveguide
