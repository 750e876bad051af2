#pragma once

#include "sqrlat/branch.hpp"
#include "sqrlat/idlat.hpp"
#include "sqrlat/mat2k.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace sqrlat {

struct ThetaOptions {
  double y_min = 0.05;         // lower bound on Im(delta_j z_j) for direct evaluation
  double theta_min = 1e-6;     // j_theta refuses base points with |theta| below this
  std::size_t max_terms = 20'000'000;
  double rel_tol = 1e-16;      // tail bound relative to the partial sum
  int max_reductions = 200;
};

struct ThetaSum {
  Complex value;
  double radius = 0;      // lattice elements with quadratic form <= radius were summed
  double tail_bound = 0;
  std::size_t terms = 0;
};

/* Theta series sum_{alpha in a} exp(pi i sum_j z_j sigma_j(c alpha^2)) on the product of half-planes
   Im(delta_j z_j) > 0, delta_j = sign sigma_j(c), for a pair with c * a^2 equal to the inverse different.
   Immutable after construction; evaluations are thread-safe. */
class ThetaContext {
 public:
  ThetaContext(FieldElement c, FractionalIdeal a, ThetaOptions opt = {});

  const FieldPtr& field() const { return c_.field(); }
  const FieldElement& c() const { return c_; }
  const FractionalIdeal& ideal() const { return a_; }
  const std::vector<int>& delta() const { return delta_; }
  const ThetaOptions& options() const { return opt_; }
  int degree() const { return static_cast<int>(delta_.size()); }

  bool in_domain(const std::vector<Complex>& z) const;

  // Truncated lattice sum at z itself; requires min_j Im(delta_j z_j) >= y_min.
  ThetaSum theta_direct(const std::vector<Complex>& z) const;
  // Moves z by translations, unit scalings and inversions before summing.
  Complex theta(const std::vector<Complex>& z) const;
  // theta(g z) / theta(z)
  Complex j_theta(const Mat2K& g, const std::vector<Complex>& z) const;
  // prod_j (delta_j z_j / i)^(1/2)
  Complex j_theta_S(const std::vector<Complex>& z) const;

  // |theta(z) - prod_j (delta_j z_j / i)^(-1/2) theta(Sz)| / |theta(z)|, both sides summed directly
  double functional_equation_residual(const std::vector<Complex>& z) const;

 private:
  ThetaSum sum(const std::vector<Complex>& w) const;
  void check_domain(const std::vector<Complex>& z) const;

  FieldElement c_;
  FractionalIdeal a_;
  ThetaOptions opt_;
  std::vector<int> delta_;
  std::vector<long double> abs_c_;
  std::vector<std::vector<long double>> ideal_emb_;  // [i][j] = sigma_j(a_i)
  std::vector<std::vector<double>> translate_rows_;  // LLL-reduced sigma(O_K) rows
  std::vector<std::vector<double>> translate_inv_;
  std::vector<double> unit_sq_;                      // sigma_j(eps)^2, quadratic fields only
};

// Random point with Re in [-1, 1] and Im(delta_j z_j) in [y_lo, y_hi].
std::vector<Complex> random_point(const std::vector<int>& delta, std::uint64_t seed, double y_lo = 0.5,
                                  double y_hi = 2.0);

// Max functional-equation residual over `samples` random points.
double theta_self_test(const ThetaContext& ctx, int samples, std::uint64_t seed);

}  // namespace sqrlat
