#pragma once

#include <complex>

namespace sqrlat {

using Complex = std::complex<double>;

// w^k for w in the open right half-plane, via the logarithm that is real on (0, inf).
Complex right_half_pow(Complex w, double k);

// (z/i)^k for z in the upper half-plane. Every power factor in the library goes through here.
Complex pow_over_i(Complex z, double k);

// e(x) = exp(2 pi i x)
Complex unit_phase(double x);

}  // namespace sqrlat
