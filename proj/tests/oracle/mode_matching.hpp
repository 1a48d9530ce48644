#pragma once

#include <complex>

namespace oracle {

using cplx = std::complex<double>;

struct ModeMatching {
  cplx R;
  cplx T;
  int strip_modes = 0;
  int column_modes = 0;
};

// Scattering of the piston wave e^{ikx}/sqrt(2k) by the single branch
// (-ell, ell) x [1, L) on the unit strip, by matching cosine modes of the
// strip and of the column at x = -ell and x = +ell. The column uses
// ceil(strip_modes * L) modes.
ModeMatching mode_matching(double k, double L, int strip_modes = 30);

}  // namespace oracle
