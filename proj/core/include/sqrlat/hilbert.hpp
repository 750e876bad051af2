#pragma once

#include "sqrlat/gausscomb.hpp"
#include "sqrlat/idlat.hpp"
#include "sqrlat/mat2k.hpp"
#include "sqrlat/theta.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sqrlat {

// Solution of (1+4a)(1+4x) = 1 = (1-3b)(1-3y) with axby != 0.
struct UnitDatum {
  FieldElement a, b, x, y;
};

// a, x from a unit = 1 mod 4; b, y from a unit = 1 mod 3.
UnitDatum find_unit_datum(const FieldPtr& field, bool totally_positive = true);
// Throws precondition "key_equation" or "degenerate_datum".
void check_key_equation(const UnitDatum& u);
// The four units 1+4a, 1+4x, 1-3b, 1-3y are totally positive.
bool satisfies_positivity(const UnitDatum& u);

struct GammaData {
  UnitDatum datum;
  std::vector<Mat2K> gamma;        // gamma_0 .. gamma_7
  std::vector<FieldElement> beta;  // S gamma_r = T^(2 beta_r) gamma_{r-1}, indices mod 8
};

GammaData gamma_matrices(const UnitDatum& u);

// prod_j (w_j / i)^(d_j / 2)
Complex mu(const std::vector<Complex>& w, const std::vector<int>& dims);
// prod_r mu(gamma_r z)
Complex consistency_product(const GammaData& g, const std::vector<int>& dims, const std::vector<Complex>& z);
// ((g (iy)) / i)^(1/2) / |g (iy)|^(1/2) for a real matrix (a, b, c, d)
Complex limit_phase(const std::array<double, 4>& g, double y);

struct RhoResult {
  Complex rho;          // e(-sigma / 8)
  long sigma = 0;       // sum_j d_j (eta_j - 1)(xi_j + 1)
  std::vector<int> eta, xi;
  Complex rho_general;  // prod_r prod_j e(-d_j/8 sgn sigma_j(c_r c_{r-1}))
  Complex rho_numeric_1e3, rho_numeric_1e4;
};
RhoResult rho_constant(const GammaData& g, const std::vector<int>& dims);

// All 16 points gamma_r z and S gamma_r z pairwise separated by more than tau_sep (relative).
bool genericity_check(const GammaData& g, const std::vector<Complex>& z, double tau_sep = 1e-6);
// Rejection sampling with Re in [-0.5, 0.5] and Im(delta_j z_j) in [0.5, 2].
std::vector<Complex> sample_generic_point(const GammaData& g, const std::vector<int>& delta, std::uint64_t seed,
                                          double tau_sep = 1e-6, int max_tries = 100);

// sum_r lambda_{r-1}(z) (g(gamma_{r-1} z) - g(S gamma_r z)), lambda_0 = 1
GaussianCombo build_thm1_function(const GammaData& g, const std::vector<int>& dims, const std::vector<Complex>& z,
                                  int eps);
// (g_delta | (1 + eps S) A_eps)(z) with slash factors from theta ratios; dims are all 1
GaussianCombo build_thm2_function(const ThetaContext& ctx, const GammaData& g, const std::vector<Complex>& z,
                                  int eps);

struct VanishingResult {
  double max_residual = 0;
  std::vector<double> argmax;
  std::size_t points_checked = 0;
};
VanishingResult verify_vanishing(const GaussianCombo& combo, const PointSet& points);

// sigma_min / sigma_max of the coefficient matrix of the combos over the union of their parameters
double independence_ratio(const std::vector<GaussianCombo>& combos, double tau_z = 1e-12);

struct VerificationReport {
  int epsilon = 1;
  double max_vanishing_residual = 0;
  double eigen_residual = 0;
  std::size_t points_checked = 0;
  bool det_ok = false;
  bool beta_integral = false;
  std::optional<int> rho;  // +-1 when the consistency constant is real, 0 otherwise; unset for ellipsoids
  std::string to_json() const;
};

struct Construction {
  GaussianCombo combo;
  std::vector<Complex> z;
  VerificationReport report;
};

// Sphere case on sqrt(O_K^dual); points with trace <= trace_max.
Construction construct_thm1(const FieldPtr& field, const std::vector<int>& dims, int eps,
                            std::optional<std::vector<Complex>> z, std::uint64_t seed, long trace_max);
// Ellipsoid case on E(c, a); points with level <= level_max.
Construction construct_thm2(const ThetaContext& ctx, int eps, std::optional<std::vector<Complex>> z,
                            std::uint64_t seed, double level_max);

}  // namespace sqrlat
