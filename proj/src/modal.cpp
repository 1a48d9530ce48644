#include "waveguide/modal.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

void check_terms(int n_terms, int minimum) {
  if (n_terms < minimum) {
    std::ostringstream os;
    os << "need at least " << minimum << " DtN terms, got " << n_terms;
    throw ValidationError(os.str());
  }
}

void check_k(double k) {
  if (!(k > 0.0 && k < kPi)) throw ValidationError("wavenumber k must lie in (0, pi)");
}

// Exponential mode e^{mu s} times `scale`.
Longitudinal exp_mode(cplx scale, cplx mu) {
  Longitudinal f;
  f.a = scale;
  f.p = mu;
  return f;
}

TransverseMode make_mode(int n, ModeKind kind, ProfileFamily fam, double q,
                         double rate, double norm2) {
  TransverseMode m;
  m.index = n;
  m.kind = kind;
  m.family = fam;
  m.wavenumber = q;
  m.rate = rate;
  m.norm2 = norm2;
  return m;
}

void set_robin(TransverseMode& m, double sign, double s_port) {
  m.robin = sign * m.outgoing.derivative(s_port) / m.outgoing.value(s_port);
}

void check_branch_width(double k, const Port& port) {
  if (port.orientation != PortOrientation::Top)
    throw ValidationError("branch modes need a top port");
  const double ell = kPi / k;
  if (std::abs(port.width() - ell) > 1e-10) {
    std::ostringstream os;
    os.precision(12);
    os << "branch port width " << port.width() << " differs from pi/k = " << ell;
    throw ValidationError(os.str());
  }
}

}  // namespace

const char* to_string(ModeKind k) {
  switch (k) {
    case ModeKind::Propagating:
      return "propagating";
    case ModeKind::Evanescent:
      return "evanescent";
    case ModeKind::WavePacket:
      return "wave_packet";
    case ModeKind::Threshold:
      return "threshold";
  }
  return "?";
}

cplx Longitudinal::value(double s) const {
  cplx v = c0 + c1 * s;
  if (a != 0.0) v += a * std::exp(p * s);
  if (b != 0.0) v += b * std::exp(q * s);
  return v;
}

cplx Longitudinal::derivative(double s) const {
  cplx v = c1;
  if (a != 0.0) v += a * p * std::exp(p * s);
  if (b != 0.0) v += b * q * std::exp(q * s);
  return v;
}

double TransverseMode::profile(double t) const {
  return family == ProfileFamily::Cosine ? std::cos(wavenumber * t)
                                         : std::sin(wavenumber * t);
}

double PortBasis::normal_sign() const {
  return port.orientation == PortOrientation::Left ? -1.0 : 1.0;
}

double PortBasis::longitudinal_coord(Point p) const {
  return port.orientation == PortOrientation::Top ? p.y : p.x;
}

double PortBasis::transverse_coord(Point p) const {
  return port.orientation == PortOrientation::Top ? p.x : p.y;
}

cplx PortBasis::outgoing(int n, Point p) const {
  const auto& m = modes.at(n);
  return m.outgoing.value(longitudinal_coord(p)) * m.profile(transverse_coord(p));
}

cplx PortBasis::incoming(int n, Point p) const {
  const auto& m = modes.at(n);
  if (!m.incoming) throw ValidationError("mode has no incoming counterpart");
  return m.incoming->value(longitudinal_coord(p)) * m.profile(transverse_coord(p));
}

cplx PortBasis::incoming_normal_derivative(int n, Point p) const {
  const auto& m = modes.at(n);
  if (!m.incoming) throw ValidationError("mode has no incoming counterpart");
  return normal_sign() * m.incoming->derivative(longitudinal_coord(p)) *
         m.profile(transverse_coord(p));
}

PortBasis strip_modes(double k, const Port& port, int n_terms, bool packet) {
  check_k(k);
  if (port.orientation == PortOrientation::Top)
    throw ValidationError("strip modes need a horizontal port");
  check_terms(n_terms, packet ? 2 : 1);
  if (packet && port.orientation != PortOrientation::Left)
    throw ValidationError("wave packet ports are only defined on the left");
  PortBasis b;
  b.port = port;
  b.k = k;
  const bool left = port.orientation == PortOrientation::Left;
  const double sign = b.normal_sign();
  const double X = port.position;
  for (int n = 0; n < n_terms; ++n) {
    const double q = n * kPi;
    const double norm2 = n == 0 ? 1.0 : 0.5;
    if (n == 0) {
      auto m = make_mode(0, ModeKind::Propagating, ProfileFamily::Cosine, 0.0, k, norm2);
      const double c = 1.0 / std::sqrt(2.0 * k);
      // Left: outgoing e^{-ikx}, incoming e^{ikx}; right is the mirror image.
      m.outgoing = exp_mode(c, (left ? -1.0 : 1.0) * kI * k);
      m.incoming = exp_mode(c, (left ? 1.0 : -1.0) * kI * k);
      set_robin(m, sign, X);
      b.modes.push_back(m);
      continue;
    }
    const double mu = std::sqrt(q * q - k * k);
    if (n == 1 && packet) {
      auto m = make_mode(1, ModeKind::WavePacket, ProfileFamily::Cosine, q, mu, norm2);
      const double c = 1.0 / std::sqrt(2.0 * mu);
      m.outgoing.a = c;
      m.outgoing.p = -mu;
      m.outgoing.b = -kI * c;
      m.outgoing.q = mu;
      Longitudinal in = m.outgoing;
      in.b = kI * c;
      m.incoming = in;
      set_robin(m, sign, X);
      b.modes.push_back(m);
      continue;
    }
    auto m = make_mode(n, ModeKind::Evanescent, ProfileFamily::Cosine, q, mu, norm2);
    m.outgoing = exp_mode(1.0, left ? mu : -mu);
    set_robin(m, sign, X);
    b.modes.push_back(m);
  }
  return b;
}

PortBasis branch_modes(double k, const Port& port, int n_terms) {
  check_k(k);
  check_branch_width(k, port);
  check_terms(n_terms, 2);
  PortBasis b;
  b.port = port;
  b.k = k;
  const double ell = kPi / k;
  const double Y = port.position;
  for (int n = 0; n < n_terms; ++n) {
    const double q = n * kPi / ell;
    const double norm2 = n == 0 ? ell : 0.5 * ell;
    if (n == 0) {
      auto m = make_mode(0, ModeKind::Propagating, ProfileFamily::Cosine, 0.0, k, norm2);
      const double c = 1.0 / std::sqrt(2.0 * k * ell);
      m.outgoing = exp_mode(c, kI * k);
      m.incoming = exp_mode(c, -kI * k);
      set_robin(m, 1.0, Y);
      b.modes.push_back(m);
    } else if (n == 1) {
      auto m = make_mode(1, ModeKind::Threshold, ProfileFamily::Cosine, q, 0.0, norm2);
      const double c = 1.0 / std::sqrt(ell);
      m.outgoing.c0 = -kI * c;
      m.outgoing.c1 = c;
      Longitudinal in;
      in.c0 = kI * c;
      in.c1 = c;
      m.incoming = in;
      set_robin(m, 1.0, Y);
      b.modes.push_back(m);
    } else {
      const double mu = k * std::sqrt(double(n) * n - 1.0);
      auto m = make_mode(n, ModeKind::Evanescent, ProfileFamily::Cosine, q, mu, norm2);
      m.outgoing = exp_mode(1.0, -mu);
      set_robin(m, 1.0, Y);
      b.modes.push_back(m);
    }
  }
  return b;
}

PortBasis branch_modes_mixed(double k, const Port& port, int n_terms) {
  check_k(k);
  check_branch_width(k, port);
  check_terms(n_terms, 1);
  PortBasis b;
  b.port = port;
  b.k = k;
  const double ell = kPi / k;
  const double Y = port.position;
  for (int j = 0; j < n_terms; ++j) {
    const double q = (2 * j + 1) * kPi / (2.0 * ell);
    const double norm2 = 0.5 * ell;
    if (j == 0) {
      const double gamma = std::sqrt(k * k - q * q);
      auto m = make_mode(0, ModeKind::Propagating, ProfileFamily::Sine, q, gamma, norm2);
      const double c = 1.0 / std::sqrt(gamma * ell);
      m.outgoing = exp_mode(c, kI * gamma);
      m.incoming = exp_mode(c, -kI * gamma);
      set_robin(m, 1.0, Y);
      b.modes.push_back(m);
    } else {
      const double mu = std::sqrt(q * q - k * k);
      auto m = make_mode(j, ModeKind::Evanescent, ProfileFamily::Sine, q, mu, norm2);
      m.outgoing = exp_mode(1.0, -mu);
      set_robin(m, 1.0, Y);
      b.modes.push_back(m);
    }
  }
  return b;
}

cplx project_trace(const std::function<cplx(double)>& trace, const PortBasis& basis,
                   int n, int panels) {
  const auto& m = basis.modes.at(n);
  const double lo = basis.port.span_lo;
  const double w = basis.port.width() / panels;
  cplx acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    for (int g = 0; g < 3; ++g) {
      const double t = lo + (i + GaussLine3::x[g]) * w;
      acc += GaussLine3::w[g] * w * trace(t) * m.profile(t);
    }
  }
  return acc / m.norm2;
}

cplx project_trace(const std::vector<PortEdge>& edges, const std::vector<cplx>& nodal,
                   const PortBasis& basis, int n) {
  const auto& m = basis.modes.at(n);
  cplx acc = 0.0;
  double phi[3];
  for (const auto& e : edges) {
    const double len = e.t1 - e.t0;
    const cplx u[3] = {nodal[e.v0], nodal[e.mid], nodal[e.v1]};
    for (int g = 0; g < 3; ++g) {
      line_shape_p2(GaussLine3::x[g], phi);
      const double t = e.t0 + GaussLine3::x[g] * len;
      acc += GaussLine3::w[g] * len * (u[0] * phi[0] + u[1] * phi[1] + u[2] * phi[2]) *
             m.profile(t);
    }
  }
  return acc / m.norm2;
}

}  // namespace waveguide
