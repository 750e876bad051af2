#pragma once

#include "sqrlat/branch.hpp"
#include "sqrlat/error.hpp"

#include <string>
#include <vector>

namespace sqrlat {

using ComplexLD = std::complex<long double>;

struct GaussianTerm {
  Complex coeff;
  std::vector<Complex> z;
  std::vector<Complex> z_lo;  // low-order parts of z when carried in extended precision; empty means zero

  ComplexLD param(std::size_t j) const;
};

/* Finite sums of terms c * exp(pi i sum_j delta_j z_j |x_j|^2) on R^{d_1} x ... x R^{d_n},
   every parameter satisfying Im(delta_j z_j) > 0. */
class GaussianCombo {
 public:
  GaussianCombo() = default;
  GaussianCombo(std::vector<int> dims, std::vector<int> delta);
  static GaussianCombo single(std::vector<int> dims, std::vector<int> delta, Complex coeff, std::vector<Complex> z);

  const std::vector<int>& dims() const { return dims_; }
  const std::vector<int>& delta() const { return delta_; }
  const std::vector<GaussianTerm>& terms() const { return terms_; }
  int blocks() const { return static_cast<int>(dims_.size()); }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double max_abs_coeff() const;

  void add_term(Complex coeff, std::vector<Complex> z);
  // keeps the parameters as double-double pairs
  void add_term_extended(Complex coeff, const std::vector<ComplexLD>& z);
  void set_low_parts(std::size_t term, std::vector<Complex> z_lo) { terms_.at(term).z_lo = std::move(z_lo); }

  // radii[j] = |x_j|
  Complex eval(const std::vector<double>& radii) const;
  // squared[j] = |x_j|^2
  Complex eval_squared(const std::vector<long double>& squared) const;

  GaussianCombo operator+(const GaussianCombo& o) const;
  GaussianCombo operator-(const GaussianCombo& o) const;
  GaussianCombo operator*(Complex s) const;

 private:
  void check_compatible(const GaussianCombo& o) const;

  std::vector<int> dims_;
  std::vector<int> delta_;
  std::vector<GaussianTerm> terms_;
};

// Term-by-term transform: c -> c * prod_j (delta_j z_j / i)^(-d_j/2), z -> -1/z.
GaussianCombo fourier(const GaussianCombo& combo);

struct SimplifyOptions {
  double tau_z = 1e-12;  // relative parameter merge tolerance
  double tau_c = 1e-12;  // drop |c| < tau_c * max|c|
};
GaussianCombo simplify(const GaussianCombo& combo, const SimplifyOptions& opt = {});

// max |coeff| of simplify(fourier(C) - eps C) with tau_c = 0, relative to max |coeff C|
double eigen_residual(const GaussianCombo& combo, int eps, double tau_z = 1e-12);

std::string to_json(const GaussianCombo& combo);
GaussianCombo combo_from_json(const std::string& text);

}  // namespace sqrlat
