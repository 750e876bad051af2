#pragma once

#include "sqrlat/branch.hpp"
#include "sqrlat/exact.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sqrlat {

// V^(e_1 lam) T^(f_1 lam) ... V^(e_n lam) T^(f_n lam). Zero exponents are allowed in general
// products (they act as the identity); valid() tests membership in V_lambda.
struct HeckeWord {
  std::vector<std::pair<long, long>> syllables;  // (e_i, f_i)

  std::size_t length() const { return syllables.size(); }
  bool valid() const;       // nonempty, every e_i != 0, f_i != 0 for i < n
  bool in_R() const;        // valid with f_n = 0
  bool in_R_tilde() const;  // empty, or valid with f_n != 0
  std::string str() const;  // [(1,0),(2,-1)]
  HeckeWord operator*(const HeckeWord& o) const;  // concatenation
  bool operator==(const HeckeWord&) const = default;
};

using Mat2 = std::array<double, 4>;  // (a, b, c, d)

Mat2 word_matrix(const HeckeWord& w, double lambda);
Complex mobius(const Mat2& m, Complex z);

// Integer polynomial in lambda; coeffs[i] multiplies lambda^i.
struct LambdaPoly {
  std::vector<long long> coeffs;
  int degree() const;  // -1 for zero
  double operator()(double lambda) const;
};
std::array<LambdaPoly, 4> word_matrix_poly(const HeckeWord& w);

struct WordEnumConfig {
  int max_syllables = 1;
  long max_exponent = 1;
  double lambda = 2;
  // words with c^2 + d^2 above this are skipped together with all their right extensions
  double prune = std::numeric_limits<double>::infinity();
};
// Depth first: e ascending over [-B, B] \ 0, then f = 0 before the nonzero f ascending,
// each (e, f != 0) followed by its extensions.
void enumerate_words(const WordEnumConfig& cfg, const std::function<void(const HeckeWord&, const Mat2&)>& visit);
std::vector<std::pair<HeckeWord, Mat2>> list_words(const WordEnumConfig& cfg);

// j_k(S, z) = (z/i)^k, j_k(T^lam, z) = 1, composed along the word with V^x = S T^-x S.
// right_S evaluates j_k(gamma S, z).
Complex j_k(const HeckeWord& w, double lambda, Complex z, double k, bool right_S = false);

struct LemmaConfig {
  int max_syllables = 5;
  long max_exponent = 3;
  std::vector<double> lambdas{2, 2.2, 3, 5};
  int bound_max_syllables = 3;        // words tested against max(|gz|, |gSz|, |Sz|) <= 1 + 1/Im z
  std::vector<Complex> bound_points;  // empty selects a fixed sample
};
struct LemmaViolation {
  std::string item;  // "i".."vi" or "bound"
  HeckeWord word;
  double lambda = 0;
  std::string detail;
};
struct LemmaReport {
  std::size_t words = 0;
  std::size_t bound_checks = 0;
  std::array<std::size_t, 7> violations{};  // (i)..(vi), bound
  std::vector<LemmaViolation> witnesses;    // the first few
  bool ok() const;
};
// (i)-(iv) numerically at every grid lambda, (v) on the Z[lambda] entries, (vi) by differences over the
// sorted grid.
LemmaReport check_word_lemma(const LemmaConfig& cfg);

struct FreenessReport {
  std::size_t words = 0;
  std::size_t collisions = 0;
  bool identity_hit = false;
  std::optional<std::pair<HeckeWord, HeckeWord>> witness;
  bool free() const { return collisions == 0 && !identity_hit; }
};
// Exact sign-normalized matrices of all enumerated words at rational lambda; any repeat is a relation.
FreenessReport freeness_check(int max_syllables, long max_exponent, const Rational& lambda);

struct PingPongReport {
  bool holds = true;
  std::size_t checks = 0;
  Rational min_margin;  // min over checks of |T^(m lam) z|^2 - (lam - 1)^2
};
// Rational points z with |z| <= 1/(lam - 1) (boundary and interior), 1 <= |m| <= max_power.
PingPongReport ping_pong_certificate(const Rational& lambda, int samples = 32, long max_power = 5);

// Orbit representatives for the truncated series. Inner exponents are bounded by max_exponent; the last
// exponent of each representative (e for R, e and f for R~) is bounded only by prune.
struct OrbitRep {
  HeckeWord word;
  Mat2 m;
};
struct RepresentativeSet {
  double lambda = 0;
  std::vector<OrbitRep> R;        // f_n = 0; F sums their T^lam orbits
  std::vector<OrbitRep> R_tilde;  // starts with the empty word; F~ sums the V^lam orbits
  // every representative left out has c^2 + d^2 >= excluded_norm
  double excluded_norm = std::numeric_limits<double>::infinity();
};
RepresentativeSet series_representatives(double lambda, int max_syllables, long max_exponent, double prune);

struct SeriesConfig {
  double k = 4;
  double lambda = 2.5;
  int max_syllables = 10;
  long max_exponent = 8;
  double prune = 1e6;
  double y = 0;  // contour height; 0 selects k / (pi n) for the largest requested n
  int quad_min_points = 64;
  int quad_max_points = 1 << 15;
  double quad_tol = 1e-10;  // successive trapezoid values, relative to max(1, largest coefficient)
  double tail_tol = std::numeric_limits<double>::infinity();

  void validate() const;
};

struct SeriesValue {
  Complex F, F_tilde;
  double tail_bound = 0;  // bounds |F - F_full| and |F~ - F~_full|, r real
};

// F(z, r) = -sum_{V} (phi_r |_k g)(z) and F~(z, r) = sum_{V u {1}} (phi_r |_k g S)(z), phi_r(z) = e^(pi i z r^2),
// each T^lam orbit summed completely so both are exactly lambda-periodic.
class HeckeSeries {
 public:
  explicit HeckeSeries(SeriesConfig cfg);

  const SeriesConfig& config() const { return cfg_; }
  const RepresentativeSet& representatives() const { return reps_; }
  std::size_t orbits() const { return F_.size(); }
  std::size_t orbits_tilde() const { return Ft_.size(); }

  SeriesValue eval(Complex z, double r) const;
  // nullptr skips that series
  void eval_many(std::span<const Complex> z, double r, std::vector<Complex>* F, std::vector<Complex>* Ft) const;
  double tail_bound(Complex z) const;

  struct Orbit {
    double a, c, d;      // sign-normalized, c > 0
    Complex eps_inv;     // j_k(g, w) = eps (c w + d)^k
  };
  const std::vector<Orbit>& orbit_data(bool tilde) const { return tilde ? Ft_ : F_; }

 private:
  SeriesConfig cfg_;
  RepresentativeSet reps_;
  std::vector<Orbit> F_, Ft_;
};

SeriesValue series_F(const SeriesConfig& cfg, Complex z, double r);

struct CoefficientTable {
  double r = 0;
  double y = 0;
  int points = 0;  // trapezoid nodes at convergence (0 for the closed form)
  std::vector<long> n;
  std::vector<Complex> a, a_tilde;
};
// a_n = (1/lam) int_{iy - lam/2}^{iy + lam/2} F(z) e^(-2 pi i n z / lam) dz by the periodic trapezoid rule,
// doubling the node count from quad_min_points until successive values agree. Throws "quadrature" on budget.
CoefficientTable coefficients(const HeckeSeries& s, long n_lo, long n_hi, double r, bool with_tilde = true);
// The same coefficients orbit by orbit from the Lipschitz summation formula (Bessel closed form).
CoefficientTable orbit_coefficients(const HeckeSeries& s, long n_lo, long n_hi, double r);
std::string coefficients_csv(const std::vector<CoefficientTable>& tables);

struct InterpolationReport {
  std::vector<double> radii;
  std::vector<double> residuals;
  double max_residual = 0;
  long n_max = 0;
};
// f(x) = exp(pi i tau |x|^2) on R^(2k); residual of f(x) - sum a_n(|x|) f(sqrt(2n/lam)) - sum a~_n(|x|) f^(sqrt(2n/lam)).
InterpolationReport verify_interpolation(const HeckeSeries& s, Complex tau, const std::vector<double>& radii,
                                         long n_max);
// Reuses tables computed for n = 1..N >= n_max, one per radius.
InterpolationReport interpolation_residual(const std::vector<CoefficientTable>& tables, double k, double lambda,
                                           Complex tau, long n_max);

struct GrowthFit {
  std::vector<long> n;
  std::vector<double> sup_a, sup_a_tilde, argmax_r;
  double slope = 0;      // least squares slope of log sup|a_n| against log n
  double slope_sum = 0;  // the same for sup|a_n| + sup|a~_n|
};
// sup over the r grid, one trapezoid contour per r shared by all n in [n_lo, n_hi]
GrowthFit uniform_growth(const HeckeSeries& s, long n_lo, long n_hi, const std::vector<double>& r_grid);

struct PointwiseFit {
  std::vector<double> r;
  std::vector<double> fitted;  // max_n (|a_n(r)| + |a~_n(r)|) / (n^(k/2 + 9/8) r^(-k + 9/4))
  double stability = 0;        // max / min of fitted
};
PointwiseFit pointwise_shape(const HeckeSeries& s, long n_lo, long n_hi, const std::vector<double>& radii);

struct UBoundsConfig {
  double kappa = 2.25;
  double lambda = 2;
  int max_syllables = 16;
  long max_exponent = 16;
  double prune = 1e6;
  std::vector<Complex> z_samples;  // empty: a grid with y log-spaced over [0.05, 5]
};
struct USample {
  Complex z;
  double U = 0, U_tilde = 0;
  double reference = 0;  // 2^kappa (y^(-kappa/2) + y^(-kappa))
};
struct UBoundsReport {
  std::vector<USample> samples;
  std::vector<std::pair<double, double>> fitted;  // (y, max over samples at y of max(U, U~) / reference)
  double stability = 0;                           // max / min of the fitted constants
  double periodicity_residual = 0;                // max |U(z + lam) - U(z)| relative
  std::size_t orbits = 0, orbits_tilde = 0;
};
// U = sum_{V} |c z + d|^-kappa, U~ = sum_{V u {1}} |d z - c|^-kappa, truncated like the series.
UBoundsReport U_bounds(const UBoundsConfig& cfg);
std::pair<double, double> U_values(const RepresentativeSet& reps, double kappa, Complex z);

}  // namespace sqrlat
