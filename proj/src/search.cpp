#include "waveguide/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "waveguide/errors.hpp"

namespace waveguide {

namespace {

constexpr double kGolden = 0.6180339887498949;
// Refined residuals below this are treated as converged when gating.
constexpr double kGateFloor = 1e-9;
constexpr double kGateAccept = 1e-3;

// Phase that crosses zero at the target: 2T - 1 = -Rh, 2R - 1 = Rh (with
// r = 1), and -s22 all sit at 1 there.
double target_phase(Target t, cplx v) {
  switch (t) {
    case Target::T_eq_1:
    case Target::R_eq_1:
      return std::arg(2.0 * v - 1.0);
    case Target::s22_eq_minus1:
      return std::arg(-v);
  }
  return 0.0;
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::T:
      return "T";
    case Quantity::R:
      return "R";
    case Quantity::r:
      return "r";
    case Quantity::Rh:
      return "Rh";
    case Quantity::s22:
      return "s22";
  }
  return "?";
}

const char* to_string(Target t) {
  switch (t) {
    case Target::T_eq_1:
      return "T_eq_1";
    case Target::R_eq_1:
      return "R_eq_1";
    case Target::s22_eq_minus1:
      return "s22_eq_minus1";
  }
  return "?";
}

Quantity quantity_of(Target t) {
  switch (t) {
    case Target::T_eq_1:
      return Quantity::T;
    case Target::R_eq_1:
      return Quantity::R;
    case Target::s22_eq_minus1:
      return Quantity::s22;
  }
  return Quantity::T;
}

cplx target_value(Target t) { return t == Target::s22_eq_minus1 ? -1.0 : 1.0; }

WaveguideGeometry GeometryFamily::at(double k, double L) const {
  if (is_omega() && tail[0] == 1.0) return build_omega(k, L);
  return build_staircase(k, L, tail, allow_nonmonotone);
}

std::string GeometryFamily::name() const {
  if (is_omega()) return "omega";
  std::ostringstream os;
  os << "staircase[";
  for (std::size_t i = 0; i < tail.size(); ++i) os << (i ? "," : "") << tail[i];
  os << "]";
  return os.str();
}

SweepRecord evaluate_quantity(double k, double L, Quantity q, const GeometryFamily& fam,
                              const SolveOptions& opt) {
  SweepRecord rec;
  rec.L = L;
  rec.quantity = q;
  try {
    const auto g = fam.at(k, L);
    switch (q) {
      case Quantity::T:
      case Quantity::R: {
        const auto p = solve_full(g, opt);
        rec.value = q == Quantity::T ? p.T : p.R;
        rec.residual = p.energy_residual;
        rec.diagnostics = p.diagnostics;
        break;
      }
      case Quantity::r:
      case Quantity::Rh: {
        const auto c = solve_half(
            g, q == Quantity::r ? SymmetryBc::NeumannOnSigma : SymmetryBc::DirichletOnSigma,
            opt);
        rec.value = c.value;
        rec.residual = c.modulus_residual;
        rec.diagnostics = c.diagnostics;
        break;
      }
      case Quantity::s22: {
        const auto a = augmented(g, opt);
        rec.value = a.S(1, 1);
        rec.residual = a.unitarity;
        rec.diagnostics = a.diagnostics;
        break;
      }
    }
  } catch (const std::exception& e) {
    rec.value.reset();
    rec.error = e.what();
  }
  return rec;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(1, n));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepRecord> sweep(double k, double L0, double L1, double step, Quantity q,
                               const GeometryFamily& fam, const SolveOptions& opt,
                               int threads) {
  if (!(step > 0.0)) throw ValidationError("sweep step must be > 0");
  if (!(L0 > 1.0) || !(L1 >= L0)) throw ValidationError("sweep range must satisfy 1 < L0 <= L1");
  const int n = static_cast<int>(std::floor((L1 - L0) / step + 1e-9)) + 1;
  std::vector<SweepRecord> out(n);
  parallel_for(n, threads, [&](int i) {
    out[i] = evaluate_quantity(k, L0 + i * step, q, fam, opt);
  });
  return out;
}

PeakSet detect_peaks(const std::vector<SweepRecord>& records, Target target) {
  PeakSet ps;
  ps.target = target;
  const cplx tv = target_value(target);
  std::vector<double> score(records.size(), -INFINITY);
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].value) score[i] = -std::log(std::abs(*records[i].value - tv));
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    // A failed neighbour leaves no bracket.
    if (!records[i - 1].value || !records[i].value || !records[i + 1].value) continue;
    if (!(score[i] > score[i - 1] && score[i] > score[i + 1])) continue;
    Peak p;
    p.L = records[i].L;
    p.lo = records[i - 1].L;
    p.hi = records[i + 1].L;
    p.residual = p.coarse_residual = std::exp(-score[i]);
    ps.peaks.push_back(p);
  }
  for (std::size_t i = 1; i < ps.peaks.size(); ++i)
    ps.spacings.push_back(ps.peaks[i].L - ps.peaks[i - 1].L);
  return ps;
}

Peak refine(double k, double lo, double hi, Target target, const GeometryFamily& fam,
            const SolveOptions& opt, const RefineOptions& ropt) {
  if (!(hi > lo)) throw ValidationError("refine: empty bracket");
  const Quantity q = quantity_of(target);
  const cplx tv = target_value(target);
  Peak p;
  p.lo = lo;
  p.hi = hi;
  auto value = [&](double L) {
    ++p.evaluations;
    const auto rec = evaluate_quantity(k, L, q, fam, opt);
    if (!rec.value) throw SolverError("refine: evaluation failed at L=" + std::to_string(L) +
                                      ": " + rec.error);
    return *rec.value;
  };
  auto f = [&](double L) { return std::abs(value(L) - tv); };

  double a = lo, b = hi;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > ropt.tol_L) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = f(d);
    }
  }
  double best_L = fc < fd ? c : d;
  double best = std::min(fc, fd);
  if (best_L - lo < ropt.tol_L || hi - best_L < ropt.tol_L)
    throw ValidationError("refine: bracket has no interior minimum");

  if (ropt.phase_polish) {
    double L0 = best_L, L1 = best_L + 0.25 * ropt.tol_L;
    double p0 = target_phase(target, value(L0));
    double p1 = target_phase(target, value(L1));
    for (int it = 0; it < ropt.max_polish && p1 != p0; ++it) {
      const double L2 = L1 - p1 * (L1 - L0) / (p1 - p0);
      if (!(L2 > lo && L2 < hi)) break;
      const cplx v2 = value(L2);
      const double r2 = std::abs(v2 - tv);
      if (r2 < best) {
        best = r2;
        best_L = L2;
      }
      if (std::abs(L2 - L1) < 1e-12) break;
      L0 = L1;
      p0 = p1;
      L1 = L2;
      p1 = target_phase(target, v2);
    }
  }
  p.L = best_L;
  p.residual = best;
  return p;
}

PeakSet refine_peaks(double k, const PeakSet& coarse, const GeometryFamily& fam,
                     const SolveOptions& opt, const RefineOptions& ropt, bool gate,
                     int threads) {
  PeakSet out;
  out.target = coarse.target;
  out.peaks.resize(coarse.peaks.size());
  parallel_for(static_cast<int>(coarse.peaks.size()), threads, [&](int i) {
    const Peak& c = coarse.peaks[i];
    Peak p;
    try {
      p = refine(k, c.lo, c.hi, coarse.target, fam, opt, ropt);
    } catch (const ValidationError&) {
      // Minimum on the bracket edge: keep the coarse point, reject it.
      p = c;
      p.accepted = false;
    }
    p.coarse_residual = c.coarse_residual;
    p.accepted = p.accepted && p.residual < kGateAccept;
    if (gate && p.accepted) {
      SolveOptions fine = opt;
      fine.refinements += 1;
      const double w = std::max(0.02, c.hi - c.lo);
      try {
        const Peak g = refine(k, p.L - w, p.L + w, coarse.target, fam, fine, ropt);
        p.gate_residual = g.residual;
        p.accepted = g.residual < std::max(p.residual, kGateFloor);
      } catch (const std::exception&) {
        p.accepted = false;
      }
    }
    out.peaks[i] = p;
  });
  for (std::size_t i = 1; i < out.peaks.size(); ++i)
    out.spacings.push_back(out.peaks[i].L - out.peaks[i - 1].L);
  return out;
}

SpacingStats spacing_stats(const std::vector<double>& peaks, double period) {
  if (peaks.size() < 2) throw ValidationError("spacing statistics need at least 2 peaks");
  SpacingStats s;
  for (std::size_t i = 1; i < peaks.size(); ++i) s.spacings.push_back(peaks[i] - peaks[i - 1]);
  double sum = 0.0;
  for (double v : s.spacings) sum += v;
  s.mean = sum / s.spacings.size();
  s.deviation = std::abs(s.mean - period) / period;
  if (s.spacings.size() >= 3) {
    const std::size_t n = s.spacings.size();
    const double e0 = std::abs(s.spacings[n - 3] - period);
    const double e1 = std::abs(s.spacings[n - 2] - period);
    const double e2 = std::abs(s.spacings[n - 1] - period);
    s.tail_monotone = e0 >= e1 && e1 >= e2;
  }
  return s;
}

}  // namespace waveguide
