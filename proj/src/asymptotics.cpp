#include "waveguide/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void check_coupling(cplx S22) {
  if (std::abs(std::abs(S22) - 1.0) < kExceptionalThreshold) {
    std::ostringstream os;
    os << "|S22| = " << std::abs(S22) << " is 1 within " << kExceptionalThreshold
       << ": no coupling between the channels of the limit guide";
    throw ExceptionalCaseError(ExceptionalCase::LimitCouplingVanishes, os.str());
  }
}

void check_s14(const Eigen::Matrix4cd& S) {
  if (std::abs(S(0, 3)) < kExceptionalThreshold)
    throw ExceptionalCaseError(ExceptionalCase::Packet14Vanishes,
                               "s14 vanishes: the reduced form is undefined");
}

void check_assumptions(const Eigen::Matrix4cd& S) {
  if (std::abs(S(3, 3) + 1.0) < kExceptionalThreshold)
    throw ExceptionalCaseError(ExceptionalCase::ThresholdReflection, "s44 = -1");
  check_s14(S);
  const cplx a = S(2, 2) - S(0, 2) * S(2, 3) / S(0, 3);
  if (std::abs(std::abs(a) - 1.0) < kExceptionalThreshold) {
    std::ostringstream os;
    os << "|s33 - s13 s34/s14| = " << std::abs(a) << " is 1 within "
       << kExceptionalThreshold;
    throw ExceptionalCaseError(ExceptionalCase::ReducedCoefficientUnit, os.str());
  }
}

MobiusCircle circle_checked(cplx num_center, double num_radius, double denom,
                            ExceptionalCase which) {
  if (std::abs(denom) < kExceptionalThreshold)
    throw ExceptionalCaseError(which, "Mobius image of the unit circle is a line");
  return {num_center / denom, num_radius / std::abs(denom)};
}

}  // namespace

double branch_gamma(double k) { return k * std::sqrt(3.0) / 2.0; }

cplx threshold_lambda(double k) {
  const double ell = kPi / k;
  return std::sqrt(ell) / (kI * std::sqrt(2.0 * k));
}

cplx gauge_A(const Eigen::Matrix2cd& S, double k, double L) {
  check_coupling(S(1, 1));
  return S(0, 1) / (std::exp(-2.0 * kI * branch_gamma(k) * L) - S(1, 1));
}

cplx r_asy(const Eigen::Matrix2cd& S, double k, double L) {
  return S(0, 0) + gauge_A(S, k, L) * S(1, 0);
}

MobiusCircle mobius_circle_2(const Eigen::Matrix2cd& S) {
  check_coupling(S(1, 1));
  const double denom = 1.0 - std::norm(S(1, 1));
  const cplx center = S(0, 0) * denom + S(0, 1) * std::conj(S(1, 1)) * S(1, 0);
  return circle_checked(center, std::abs(S(0, 1) * S(1, 0)), denom,
                        ExceptionalCase::LimitCouplingVanishes);
}

Gauges gauges_ab(const Eigen::Matrix4cd& S, double k, double L) {
  check_assumptions(S);
  const cplx e = std::exp(-2.0 * kI * k * L);
  const cplx denom = (1.0 + S(3, 3)) * (-e + S(2, 2)) - S(2, 3) * S(3, 2);
  Gauges g;
  g.a = (S(1, 3) * S(3, 2) - S(1, 2) * (1.0 + S(3, 3))) / denom;
  g.b = (S(1, 3) * (e - S(2, 2)) + S(1, 2) * S(2, 3)) / denom;
  return g;
}

std::array<cplx, 2> gauge_system_residual(const Eigen::Matrix4cd& S, double k, double L,
                                          const Gauges& g) {
  const cplx ep = std::exp(kI * k * L);
  const cplx em = std::exp(-kI * k * L);
  return {S(1, 2) * ep + g.a * (-em + S(2, 2) * ep) + g.b * S(3, 2) * ep,
          S(1, 3) + g.a * S(2, 3) + g.b * (1.0 + S(3, 3))};
}

cplx s22_asy(const Eigen::Matrix4cd& S, double k, double L) {
  check_assumptions(S);
  const cplx e = std::exp(-2.0 * kI * k * L);
  const cplx denom = (1.0 + S(3, 3)) * (-e + S(2, 2)) - S(2, 3) * S(3, 2);
  const cplx n1 = S(1, 3) * S(3, 2) * S(2, 1) - S(1, 2) * (1.0 + S(3, 3)) * S(2, 1);
  const cplx n2 = S(1, 3) * (e - S(2, 2)) * S(3, 1) + S(1, 2) * S(2, 3) * S(3, 1);
  return S(1, 1) + n1 / denom + n2 / denom;
}

cplx s22_asy_reduced(const Eigen::Matrix4cd& S, double k, double L) {
  check_assumptions(S);
  const auto r = abcd(S);
  return r.c - r.d * r.d / (-std::exp(-2.0 * kI * k * L) + r.a);
}

ReducedConstants abcd(const Eigen::Matrix4cd& S) {
  check_s14(S);
  const cplx s12 = S(0, 1), s13 = S(0, 2), s14 = S(0, 3);
  const cplx s22 = S(1, 1), s23 = S(1, 2), s24 = S(1, 3);
  const cplx s32 = S(2, 1), s33 = S(2, 2), s34 = S(2, 3);
  const cplx s42 = S(3, 1);
  ReducedConstants r;
  r.a = s33 - s13 * s34 / s14;
  r.const_b = (2.0 * s24 * s13 * s32 - s23 * s14 * s32 - s12 * s42 * s13 * s34 / s14) / s14;
  r.c = s22 - s12 * s42 / s14;
  r.d = s23 - s24 * s13 / s14;
  r.b_plus_d2 = std::abs(r.const_b + r.d * r.d);
  return r;
}

MobiusCircle mobius_circle_4(cplx a, cplx c, cplx d) {
  const double denom = 1.0 - std::norm(a);
  return circle_checked(c * denom + d * d * std::conj(a), std::norm(d), denom,
                        ExceptionalCase::ReducedCoefficientUnit);
}

std::array<double, 4> relpart_residuals(const Eigen::Matrix4cd& S, double k) {
  const cplx lam = threshold_lambda(k);
  return {std::abs(S(0, 0) + lam * S(3, 0) - 1.0), std::abs(S(0, 1) + lam * S(3, 1)),
          std::abs(S(0, 2) + lam * S(3, 2)), std::abs(S(0, 3) + lam * S(3, 3) + lam)};
}

Periods predicted_periods(double k) {
  if (!(k > 0.0 && k < kPi)) throw ValidationError("wavenumber k must lie in (0, pi)");
  return {kPi / branch_gamma(k), kPi / k};
}

DecayFit decay_compare(const std::vector<std::pair<double, cplx>>& direct,
                       const std::function<cplx(double)>& asy) {
  if (direct.size() < 6) throw ValidationError("decay fit needs at least 6 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [L, v] : direct) {
    const double e = std::abs(v - asy(L));
    if (!(e > 0.0)) continue;
    const double y = std::log(e);
    sx += L;
    sy += y;
    sxx += L * L;
    sxy += L * y;
    ++n;
  }
  if (n < 6) throw ValidationError("decay fit needs at least 6 nonzero differences");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  return {-slope, std::exp(icept)};
}

}  // namespace waveguide
