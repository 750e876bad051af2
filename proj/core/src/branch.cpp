#include "sqrlat/branch.hpp"

#include "sqrlat/error.hpp"

#include <cmath>
#include <numbers>

namespace sqrlat {

Complex right_half_pow(Complex w, double k) {
  if (!(w.real() > 0))
    throw Error(ErrorKind::numerical, "branch_cut", "power base outside the right half-plane");
  return std::exp(k * std::log(w));
}

Complex pow_over_i(Complex z, double k) { return right_half_pow(Complex(z.imag(), -z.real()), k); }

Complex unit_phase(double x) {
  double t = 2 * std::numbers::pi * x;
  return {std::cos(t), std::sin(t)};
}

}  // namespace sqrlat
