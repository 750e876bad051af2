#include "sqrlat/theta.hpp"

#include "lattice_util.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace sqrlat {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

double product_abs(const std::vector<Complex>& w) {
  double p = 1;
  for (const auto& v : w) p *= std::abs(v);
  return p;
}

}  // namespace

ThetaContext::ThetaContext(FieldElement c, FractionalIdeal a, ThetaOptions opt)
    : c_(std::move(c)), a_(std::move(a)), opt_(opt) {
  check_hecke_square(c_, a_);
  const auto& K = field();
  int n = K->degree();
  delta_.resize(n);
  abs_c_.resize(n);
  for (int j = 0; j < n; ++j) {
    delta_[j] = c_.sign(j);
    abs_c_[j] = std::fabs(c_.embed_ld(j));
  }
  ideal_emb_.assign(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i) {
    FieldElement e = a_.basis_element(i);
    for (int j = 0; j < n; ++j) ideal_emb_[i][j] = e.embed_ld(j);
  }

  std::vector<std::vector<double>> ok(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ok[i][j] = static_cast<double>(K->embedding_entry(j, i));
  auto U = detail::lll_transform(ok);
  translate_rows_.assign(n, std::vector<double>(n, 0.0));
  Eigen::MatrixXd B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<double>(U[i][k]) * ok[k][j];
      translate_rows_[i][j] = s;
      B(i, j) = s;
    }
  Eigen::MatrixXd Binv = B.inverse();
  translate_inv_.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) translate_inv_[i][j] = Binv(i, j);

  if (n == 2 && K->quadratic_discriminant()) {
    FieldElement eps = fundamental_unit(*K);
    unit_sq_ = {std::pow(eps.embed(0), 2), std::pow(eps.embed(1), 2)};
  }
}

bool ThetaContext::in_domain(const std::vector<Complex>& z) const {
  if (static_cast<int>(z.size()) != degree()) return false;
  for (int j = 0; j < degree(); ++j)
    if (!(delta_[j] * z[j].imag() > 0)) return false;
  return true;
}

void ThetaContext::check_domain(const std::vector<Complex>& z) const {
  if (!in_domain(z)) throw Error(ErrorKind::invalid_input, "outside_half_plane", "theta argument outside H_delta^n");
}

ThetaSum ThetaContext::sum(const std::vector<Complex>& w) const {
  const int n = degree();
  std::vector<long double> scale(n);  // Im(delta_j w_j) |sigma_j(c)|
  std::vector<std::vector<double>> basis(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j) scale[j] = static_cast<long double>(delta_[j] * w[j].imag()) * abs_c_[j];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) basis[i][j] = static_cast<double>(ideal_emb_[i][j] * std::sqrt(scale[j]));
  detail::Enumerator en(basis);
  const auto& gs = en.gs_norms();

  // sum_{Q > R} e^{-pi Q} <= e^{-pi (1-t) R} prod_i (1 + 2 / (e^{pi t |b*_i|^2} - 1))
  auto tail = [&](double R) {
    double best = INFINITY;
    for (int k = 1; k < 20; ++k) {
      double t = 0.05 * k, log_prod = 0;
      for (double g : gs) log_prod += std::log1p(2.0 / std::expm1(std::numbers::pi * t * g));
      best = std::min(best, std::exp(log_prod - std::numbers::pi * (1 - t) * R));
    }
    return best;
  };
  auto radius_for = [&](double target) {
    double best = INFINITY;
    for (int k = 1; k < 20; ++k) {
      double t = 0.05 * k, log_prod = 0;
      for (double g : gs) log_prod += std::log1p(2.0 / std::expm1(std::numbers::pi * t * g));
      best = std::min(best, (log_prod - std::log(target)) / (std::numbers::pi * (1 - t)));
    }
    return std::max(best, 1.0);
  };

  std::vector<long double> coef_re(n), coef_im(n);  // pi * sigma_j(c) * w_j
  for (int j = 0; j < n; ++j) {
    long double cj = static_cast<long double>(delta_[j]) * abs_c_[j];
    coef_re[j] = kPi * cj * w[j].real();
    coef_im[j] = kPi * cj * w[j].imag();
  }

  double R = radius_for(opt_.rel_tol);
  for (int attempt = 0; attempt < 8; ++attempt) {
    double volume_est = std::pow(std::numbers::pi * R, 0.5 * n) / std::tgamma(0.5 * n + 1);
    double det = 1;
    for (double g : gs) det *= std::sqrt(g);
    if (volume_est / det > static_cast<double>(opt_.max_terms))
      throw Error(ErrorKind::budget, "theta_budget", "theta truncation needs more than max_terms lattice elements");
    std::complex<long double> acc = 0;
    std::size_t count = 0;
    std::vector<long double> s(n);
    en.enumerate(R, [&](const std::vector<long>& u, double) {
      if (++count > opt_.max_terms)
        throw Error(ErrorKind::budget, "theta_budget", "theta truncation needs more than max_terms lattice elements");
      long double re = 0, im = 0;
      for (int j = 0; j < n; ++j) {
        long double v = 0;
        for (int i = 0; i < n; ++i) v += static_cast<long double>(u[i]) * ideal_emb_[i][j];
        long double v2 = v * v;
        re += coef_re[j] * v2;
        im += coef_im[j] * v2;
      }
      re = std::remainder(re, 2 * kPi);
      long double mag = std::exp(-im);
      acc += std::complex<long double>(mag * std::cos(re), mag * std::sin(re));
    });
    Complex value(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    double tb = tail(R);
    if (tb < opt_.rel_tol * std::abs(value) || attempt == 7) return {value, R, tb, count};
    R *= 2;
  }
  return {};
}

ThetaSum ThetaContext::theta_direct(const std::vector<Complex>& z) const {
  check_domain(z);
  for (int j = 0; j < degree(); ++j)
    if (delta_[j] * z[j].imag() < opt_.y_min)
      throw Error(ErrorKind::precondition, "below_y_min", "Im(delta_j z_j) below y_min for direct theta evaluation");
  return sum(z);
}

Complex ThetaContext::theta(const std::vector<Complex>& z) const {
  check_domain(z);
  const int n = degree();
  std::vector<Complex> w = z;
  Complex factor = 1;
  auto translate = [&] {
    // Babai rounding of Re(w)/2 against the reduced sigma(O_K) rows
    std::vector<double> k(n, 0.0);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += 0.5 * w[j].real() * translate_inv_[j][i];
      k[i] = std::round(s);
    }
    for (int j = 0; j < n; ++j) {
      double shift = 0;
      for (int i = 0; i < n; ++i) shift += k[i] * translate_rows_[i][j];
      w[j] -= 2 * shift;
    }
  };
  auto balance = [&] {
    if (unit_sq_.empty()) return;
    double y0 = delta_[0] * w[0].imag() * static_cast<double>(abs_c_[0]);
    double y1 = delta_[1] * w[1].imag() * static_cast<double>(abs_c_[1]);
    // scaling by sigma(eps)^(2k) multiplies y0/y1 by (unit_sq_[0])^(2k)
    double k = std::round(-std::log(y0 / y1) / (2 * std::log(unit_sq_[0])));
    if (k == 0) return;
    for (int j = 0; j < 2; ++j) w[j] *= std::pow(unit_sq_[j], k);
  };
  for (int step = 0; step < opt_.max_reductions; ++step) {
    balance();
    translate();
    if (product_abs(w) >= 1 - 1e-12) break;
    for (int j = 0; j < n; ++j) {
      factor *= pow_over_i(static_cast<double>(delta_[j]) * w[j], -0.5);
      w[j] = -1.0 / w[j];
    }
  }
  return factor * sum(w).value;
}

Complex ThetaContext::j_theta(const Mat2K& g, const std::vector<Complex>& z) const {
  Complex base = theta(z);
  if (std::abs(base) < opt_.theta_min)
    throw Error(ErrorKind::numerical, "theta_near_zero", "theta too close to zero at the base point; resample z");
  return theta(g.act(z)) / base;
}

Complex ThetaContext::j_theta_S(const std::vector<Complex>& z) const {
  check_domain(z);
  Complex p = 1;
  for (int j = 0; j < degree(); ++j) p *= pow_over_i(static_cast<double>(delta_[j]) * z[j], 0.5);
  return p;
}

double ThetaContext::functional_equation_residual(const std::vector<Complex>& z) const {
  std::vector<Complex> sz(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) sz[j] = -1.0 / z[j];
  Complex lhs = theta_direct(z).value;
  Complex rhs = theta_direct(sz).value / j_theta_S(z);
  return std::abs(lhs - rhs) / std::abs(lhs);
}

std::vector<Complex> random_point(const std::vector<int>& delta, std::uint64_t seed, double y_lo, double y_hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(y_lo, y_hi);
  std::vector<Complex> z(delta.size());
  for (std::size_t j = 0; j < delta.size(); ++j) {
    double x = re(rng), y = im(rng);
    z[j] = Complex(x, delta[j] * y);
  }
  return z;
}

double theta_self_test(const ThetaContext& ctx, int samples, std::uint64_t seed) {
  double worst = 0;
  for (int s = 0; s < samples; ++s)
    worst = std::max(worst, ctx.functional_equation_residual(random_point(ctx.delta(), seed + 7919 * s)));
  return worst;
}

}  // namespace sqrlat
