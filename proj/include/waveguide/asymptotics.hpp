#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace waveguide {

using cplx = std::complex<double>;

inline constexpr double kExceptionalThreshold = 1e-3;

struct MobiusCircle {
  cplx center{0.0};
  double radius = 0.0;
};

// gamma = k sqrt(3)/2, the propagation constant of the mixed branch.
double branch_gamma(double k);
// lambda = sqrt(ell)/(i sqrt(2k)) with ell = pi/k.
cplx threshold_lambda(double k);

// A(L) = S12/(e^{-2i gamma L} - S22).
cplx gauge_A(const Eigen::Matrix2cd& S, double k, double L);
// S11 + A(L) S21.
cplx r_asy(const Eigen::Matrix2cd& S, double k, double L);
// Image of the unit circle under z -> S11 + S12 S21/(z - S22).
MobiusCircle mobius_circle_2(const Eigen::Matrix2cd& S);

struct Gauges {
  cplx a{0.0};
  cplx b{0.0};
};

// Solution of the 2x2 gauge system imposed by the Neumann condition at the
// top of the branch. Throws ExceptionalCaseError when s14 or |a| - 1 vanish.
Gauges gauges_ab(const Eigen::Matrix4cd& S, double k, double L);
// Residuals of both gauge equations for a given (a, b).
std::array<cplx, 2> gauge_system_residual(const Eigen::Matrix4cd& S, double k, double L,
                                          const Gauges& g);

// Full closed form for s22 as a function of L.
cplx s22_asy(const Eigen::Matrix4cd& S, double k, double L);
// Reduced form c - d^2/(-e^{-2ikL} + a).
cplx s22_asy_reduced(const Eigen::Matrix4cd& S, double k, double L);

struct ReducedConstants {
  cplx a{0.0};
  cplx const_b{0.0};
  cplx c{0.0};
  cplx d{0.0};
  double b_plus_d2 = 0.0;  // |const_b + d^2|
};

ReducedConstants abcd(const Eigen::Matrix4cd& S);
// Image of the unit circle under z -> c - d^2/(z + a).
MobiusCircle mobius_circle_4(cplx a, cplx c, cplx d);

// |s11 + lambda s41 - 1|, |s12 + lambda s42|, |s13 + lambda s43|,
// |s14 + lambda s44 + lambda|.
std::array<double, 4> relpart_residuals(const Eigen::Matrix4cd& S, double k);

struct Periods {
  double invisibility = 0.0;  // pi/gamma = 2 pi/(k sqrt 3)
  double trapped = 0.0;       // pi/k
};
Periods predicted_periods(double k);

struct DecayFit {
  double rate = 0.0;
  double prefactor = 0.0;
};

// Least squares of log|direct - asy| = log C - rate L over the samples.
DecayFit decay_compare(const std::vector<std::pair<double, cplx>>& direct,
                       const std::function<cplx(double)>& asy);

}  // namespace waveguide
