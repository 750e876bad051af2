#include "sqrlat/hecke.hpp"

#include "sqrlat/error.hpp"
#include "sqrlat/gausscomb.hpp"
#include "sqrlat/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sqrlat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxEM = 30;
constexpr int kMaxM = 48;
constexpr std::size_t kChunks = 64;

// B_2i / (2i)!
const std::array<double, kMaxEM + 1>& em_weights() {
  static const std::array<double, kMaxEM + 1> t = [] {
    std::array<double, kMaxEM + 1> w{};
    for (int i = 1; i <= kMaxEM; ++i) {
      double v = 2 * std::riemann_zeta(2.0 * i) / std::pow(2 * kPi, 2 * i);
      w[i] = (i % 2 == 1) ? v : -v;
    }
    return w;
  }();
  return t;
}

// sum_{j >= 0} (q + j)^-s given qs = q^-s, Re q large
template <class T>
T hurwitz_tail(T q, T qs, double s) {
  const auto& t = em_weights();
  T qinv = T(1) / q, qinv2 = qinv * qinv;
  T sum = q / (s - 1) + T(0.5);
  double poch = s;
  T qp = qinv;
  double prev = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= kMaxEM; ++i) {
    T term = t[i] * poch * qp;
    double mag = std::norm(term);
    if (mag > prev) break;
    sum += term;
    if (mag < 1e-34 * std::norm(sum)) break;
    prev = mag;
    poch *= (s + 2 * i - 1) * (s + 2 * i);
    qp *= qinv2;
  }
  return qs * sum;
}

Complex ipow(Complex b, int e) {
  Complex r = 1;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// u^-k, principal branch
struct NegPow {
  double k;
  int kint;  // -1 unless k is an integer
  explicit NegPow(double k_) : k(k_), kint(k_ == std::floor(k_) && k_ <= 64 ? static_cast<int>(k_) : -1) {}
  Complex operator()(Complex u) const { return kint >= 0 ? ipow(1.0 / u, kint) : std::exp(-k * std::log(u)); }
};

// sum_f h(u + f lam), h(u) = u^-k exp(-pi i rho^2 / u)
struct PeriodicKernel {
  double lambda, k, rho2;
  NegPow negpow;
  int F0 = 8, mterms = 1;
  std::array<Complex, kMaxM> right{}, left{};

  PeriodicKernel(double lambda_, double k_, double rho2_) : lambda(lambda_), k(k_), rho2(rho2_), negpow(k_) {
    F0 = 8 + static_cast<int>(std::ceil(2 * kPi * rho2 / lambda));
    double x = kPi * rho2 / (lambda * (F0 + 0.5));
    double mag = 1;
    mterms = 1;
    while (mterms < kMaxM) {
      mag *= x / mterms;
      if (mag < 1e-18) break;
      ++mterms;
    }
    const Complex a(0, -kPi * rho2);
    const Complex left_phase = std::exp(Complex(0, -kPi * k));
    Complex p = std::pow(lambda, -k);
    for (int m = 0; m < mterms; ++m) {
      right[m] = p;
      left[m] = p * (m % 2 ? -1.0 : 1.0) * left_phase;
      p *= a / (static_cast<double>(m + 1) * lambda);
    }
  }

  Complex operator()(Complex u) const {
    const double fc = std::round(-u.real() / lambda);
    Complex sum = 0;
    const Complex a(0, -kPi * rho2);
    for (int j = -F0; j <= F0; ++j) {
      Complex v = u + (fc + j) * lambda;
      Complex h = negpow(v);
      if (rho2 > 0) h *= std::exp(a / v);
      sum += h;
    }
    sum += side(u / lambda + (fc + F0 + 1), right);
    sum += side((F0 + 1 - fc) - u / lambda, left);
    return sum;
  }

  Complex side(Complex q, const std::array<Complex, kMaxM>& coef) const {
    Complex qk = negpow(q), qinv = 1.0 / q, qm = qk, s = 0;
    for (int m = 0; m < mterms; ++m) {
      s += coef[m] * hurwitz_tail(q, qm, k + m);
      qm *= qinv;
    }
    return s;
  }
};

void check_point(Complex z) {
  if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw Error(ErrorKind::precondition, "domain", "series points need Im z > 0");
}

}  // namespace

void SeriesConfig::validate() const {
  if (!(k > 2) || !std::isfinite(k)) throw Error(ErrorKind::invalid_input, "weight", "k must be > 2");
  if (!(lambda >= 2) || !std::isfinite(lambda)) throw Error(ErrorKind::invalid_input, "lambda", "lambda must be >= 2");
  if (max_syllables < 1 || max_exponent < 1) throw Error(ErrorKind::invalid_input, "truncation", "N and B must be >= 1");
  if (!(prune >= 1)) throw Error(ErrorKind::invalid_input, "prune", "prune threshold must be >= 1");
  if (!(y >= 0)) throw Error(ErrorKind::invalid_input, "contour", "y must be >= 0");
  if (quad_min_points < 8 || quad_max_points < quad_min_points)
    throw Error(ErrorKind::invalid_input, "quadrature", "need 8 <= quad_min_points <= quad_max_points");
  if (!(quad_tol > 0)) throw Error(ErrorKind::invalid_input, "quadrature", "quad_tol must be positive");
}

HeckeSeries::HeckeSeries(SeriesConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  reps_ = series_representatives(cfg_.lambda, cfg_.max_syllables, cfg_.max_exponent, cfg_.prune);
  const Complex i(0, 1);
  auto make = [&](const OrbitRep& rep, bool tilde) {
    const Mat2& g = rep.m;
    // gamma S = (b, -a; d, -c)
    double a = tilde ? g[1] : g[0], c = tilde ? g[3] : g[2], d = tilde ? -g[2] : g[3];
    if (c < 0) {
      a = -a;
      c = -c;
      d = -d;
    }
    Complex eps = j_k(rep.word, cfg_.lambda, i, cfg_.k, tilde) / std::pow(Complex(d, c), cfg_.k);
    return Orbit{a, c, d, 1.0 / eps};
  };
  F_.reserve(reps_.R.size());
  for (const auto& r : reps_.R) F_.push_back(make(r, false));
  Ft_.reserve(reps_.R_tilde.size());
  for (const auto& r : reps_.R_tilde) Ft_.push_back(make(r, true));
}

namespace {

void sum_orbits(const std::vector<HeckeSeries::Orbit>& orbits, const SeriesConfig& cfg, std::span<const Complex> z,
                double r, double sign, std::vector<Complex>& out) {
  const std::size_t n = orbits.size();
  const std::size_t chunks = std::max<std::size_t>(1, std::min(kChunks, n));
  std::vector<std::vector<Complex>> part(chunks, std::vector<Complex>(z.size(), 0));
  parallel_for(chunks, [&](std::size_t ci) {
    auto& acc = part[ci];
    for (std::size_t o = ci * n / chunks; o < (ci + 1) * n / chunks; ++o) {
      const auto& ob = orbits[o];
      double rho = r / ob.c;
      PeriodicKernel P(cfg.lambda, cfg.k, rho * rho);
      Complex kappa = ob.eps_inv * std::pow(ob.c, -cfg.k) * std::exp(Complex(0, kPi * r * r * ob.a / ob.c));
      double shift = ob.d / ob.c;
      for (std::size_t j = 0; j < z.size(); ++j) acc[j] += kappa * P(z[j] + shift);
    }
  });
  out.assign(z.size(), 0);
  for (const auto& p : part)
    for (std::size_t j = 0; j < z.size(); ++j) out[j] += p[j];
  for (auto& v : out) v *= sign;
}

}  // namespace

void HeckeSeries::eval_many(std::span<const Complex> z, double r, std::vector<Complex>* F,
                            std::vector<Complex>* Ft) const {
  for (Complex p : z) check_point(p);
  if (!std::isfinite(r)) throw Error(ErrorKind::invalid_input, "radius", "r must be finite");
  if (F) sum_orbits(F_, cfg_, z, r, -1, *F);
  if (Ft) sum_orbits(Ft_, cfg_, z, r, 1, *Ft);
}

double HeckeSeries::tail_bound(Complex z) const {
  check_point(z);
  const double Xe = reps_.excluded_norm / 2;
  const double k = cfg_.k;
  double az2 = std::norm(z), x = z.real();
  double sigma = ((az2 + 1) - std::sqrt((az2 - 1) * (az2 - 1) + 4 * x * x)) / 2;
  if (sigma <= 0) sigma = z.imag() * z.imag() / (az2 + 1);
  double best = std::numeric_limits<double>::infinity();
  if (Xe > 1) {
    for (int t = 1; t <= 64; ++t) {
      double kp = 2 + (k - 2) * t / 64.0;
      best = std::min(best, std::pow(Xe, -(k - kp) / 2) * 2 * std::riemann_zeta(kp / 2));
    }
  }
  return std::pow(sigma, -k / 2) * best;
}

SeriesValue HeckeSeries::eval(Complex z, double r) const {
  std::vector<Complex> F, Ft;
  eval_many(std::span<const Complex>(&z, 1), r, &F, &Ft);
  return {F[0], Ft[0], tail_bound(z)};
}

SeriesValue series_F(const SeriesConfig& cfg, Complex z, double r) {
  HeckeSeries s(cfg);
  SeriesValue v = s.eval(z, r);
  if (v.tail_bound > cfg.tail_tol) {
    std::ostringstream os;
    os << "tail bound " << v.tail_bound << " exceeds tolerance " << cfg.tail_tol;
    throw Error(ErrorKind::budget, "tail", os.str());
  }
  return v;
}

namespace {

double contour_height(const SeriesConfig& cfg, long n_hi) {
  return cfg.y > 0 ? cfg.y : cfg.k / (kPi * static_cast<double>(std::max(1L, n_hi)));
}

void extract(const std::vector<Complex>& vals, long n_lo, long n_hi, double y, double lambda,
             std::vector<Complex>& out) {
  const std::size_t M = vals.size();
  std::vector<Complex> roots(M);
  for (std::size_t t = 0; t < M; ++t) roots[t] = unit_phase(-static_cast<double>(t) / static_cast<double>(M));
  out.clear();
  for (long n = n_lo; n <= n_hi; ++n) {
    long long step = ((static_cast<long long>(n) % static_cast<long long>(M)) + M) % M;
    Complex s = 0;
    unsigned long long idx = 0;
    for (std::size_t j = 0; j < M; ++j) {
      s += vals[j] * roots[idx];
      idx += step;
      if (idx >= M) idx -= M;
    }
    // x_j = -lam/2 + j lam / M contributes e^(i pi n)
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out.push_back(s * (sign * std::exp(2 * kPi * n * y / lambda) / static_cast<double>(M)));
  }
}

}  // namespace

CoefficientTable coefficients(const HeckeSeries& s, long n_lo, long n_hi, double r, bool with_tilde) {
  if (n_hi < n_lo) throw Error(ErrorKind::invalid_input, "n_range", "empty n range");
  const SeriesConfig& cfg = s.config();
  const double lam = cfg.lambda;
  CoefficientTable tab;
  tab.r = r;
  tab.y = contour_height(cfg, n_hi);
  for (long n = n_lo; n <= n_hi; ++n) tab.n.push_back(n);
  const long nmax_abs = std::max(std::labs(n_lo), std::labs(n_hi));

  std::vector<Complex> F, Ft, prevA, prevB, A, B;
  int M = cfg.quad_min_points;
  auto node = [&](int j, int m) { return Complex(-lam / 2 + lam * j / m, tab.y); };
  {
    std::vector<Complex> z(M);
    for (int j = 0; j < M; ++j) z[j] = node(j, M);
    s.eval_many(z, r, &F, with_tilde ? &Ft : nullptr);
  }
  extract(F, n_lo, n_hi, tab.y, lam, prevA);
  if (with_tilde) extract(Ft, n_lo, n_hi, tab.y, lam, prevB);
  while (true) {
    if (2 * M > cfg.quad_max_points) {
      std::ostringstream os;
      os << "trapezoid rule did not converge within " << cfg.quad_max_points << " points (r = " << r << ")";
      throw Error(ErrorKind::budget, "quadrature", os.str());
    }
    std::vector<Complex> z(M);
    for (int j = 0; j < M; ++j) z[j] = node(2 * j + 1, 2 * M);
    std::vector<Complex> Fo, Fto;
    s.eval_many(z, r, &Fo, with_tilde ? &Fto : nullptr);
    auto interleave = [M](const std::vector<Complex>& even, const std::vector<Complex>& odd) {
      std::vector<Complex> v(2 * M);
      for (int j = 0; j < M; ++j) {
        v[2 * j] = even[j];
        v[2 * j + 1] = odd[j];
      }
      return v;
    };
    F = interleave(F, Fo);
    if (with_tilde) Ft = interleave(Ft, Fto);
    M *= 2;
    extract(F, n_lo, n_hi, tab.y, lam, A);
    if (with_tilde) extract(Ft, n_lo, n_hi, tab.y, lam, B);
    double diff = 0, scale = 1;
    for (std::size_t i = 0; i < A.size(); ++i) {
      diff = std::max(diff, std::abs(A[i] - prevA[i]));
      scale = std::max(scale, std::abs(A[i]));
      if (with_tilde) {
        diff = std::max(diff, std::abs(B[i] - prevB[i]));
        scale = std::max(scale, std::abs(B[i]));
      }
    }
    prevA = A;
    prevB = B;
    if (diff <= cfg.quad_tol * scale && M > 2 * nmax_abs) break;
  }
  tab.points = M;
  tab.a = std::move(A);
  tab.a_tilde = with_tilde ? std::move(B) : std::vector<Complex>(tab.n.size(), 0);
  return tab;
}

CoefficientTable orbit_coefficients(const HeckeSeries& s, long n_lo, long n_hi, double r) {
  if (n_hi < n_lo) throw Error(ErrorKind::invalid_input, "n_range", "empty n range");
  const SeriesConfig& cfg = s.config();
  const double lam = cfg.lambda, k = cfg.k;
  CoefficientTable tab;
  tab.r = r;
  for (long n = n_lo; n <= n_hi; ++n) tab.n.push_back(n);
  tab.a.assign(tab.n.size(), 0);
  tab.a_tilde.assign(tab.n.size(), 0);
  // (-2 pi i)^k beta^(k-1) sum_m (-X)^m / (m! Gamma(k+m)) with beta = n / lam, X = 2 pi^2 rho^2 beta
  const Complex lead = std::pow(2 * kPi, k) * std::exp(Complex(0, -kPi * k / 2)) / lam;
  auto accumulate = [&](const std::vector<HeckeSeries::Orbit>& orbits, std::vector<Complex>& out, double sign) {
    for (const auto& ob : orbits) {
      double rho = r / ob.c;
      Complex kappa = ob.eps_inv * std::pow(ob.c, -k) * std::exp(Complex(0, kPi * r * r * ob.a / ob.c));
      for (std::size_t i = 0; i < tab.n.size(); ++i) {
        long n = tab.n[i];
        if (n <= 0) continue;
        double beta = static_cast<double>(n) / lam;
        double X = 2 * kPi * kPi * rho * rho * beta;
        double bes = X > 0 ? std::pow(X, -(k - 1) / 2) * std::cyl_bessel_j(k - 1, 2 * std::sqrt(X)) : 1 / std::tgamma(k);
        Complex phase = unit_phase(static_cast<double>(n) * ob.d / (ob.c * lam));
        out[i] += sign * kappa * phase * lead * std::pow(beta, k - 1) * bes;
      }
    }
  };
  accumulate(s.orbit_data(false), tab.a, -1);
  accumulate(s.orbit_data(true), tab.a_tilde, 1);
  return tab;
}

std::string coefficients_csv(const std::vector<CoefficientTable>& tables) {
  std::ostringstream os;
  os.precision(17);
  os << "n,r,re_a,im_a,re_atilde,im_atilde\n";
  for (const auto& t : tables)
    for (std::size_t i = 0; i < t.n.size(); ++i)
      os << t.n[i] << ',' << t.r << ',' << t.a[i].real() << ',' << t.a[i].imag() << ',' << t.a_tilde[i].real() << ','
         << t.a_tilde[i].imag() << '\n';
  return os.str();
}

InterpolationReport interpolation_residual(const std::vector<CoefficientTable>& tables, double k, double lambda,
                                           Complex tau, long n_max) {
  const double dim = 2 * k;
  if (dim != std::floor(dim) || dim < 1) throw Error(ErrorKind::invalid_input, "weight", "2k must be a positive integer");
  if (!(tau.imag() > 0)) throw Error(ErrorKind::invalid_input, "tau", "tau must lie in the upper half-plane");
  const int d = static_cast<int>(dim);
  GaussianCombo f = GaussianCombo::single({d}, {1}, 1, {tau});
  GaussianCombo fh = fourier(f);
  InterpolationReport rep;
  rep.n_max = n_max;
  for (const auto& t : tables) {
    Complex s = f.eval({t.r});
    for (std::size_t i = 0; i < t.n.size(); ++i) {
      long n = t.n[i];
      if (n < 1 || n > n_max) continue;
      double node = std::sqrt(2.0 * n / lambda);
      s -= t.a[i] * f.eval({node}) + t.a_tilde[i] * fh.eval({node});
    }
    rep.radii.push_back(t.r);
    rep.residuals.push_back(std::abs(s));
    rep.max_residual = std::max(rep.max_residual, std::abs(s));
  }
  return rep;
}

InterpolationReport verify_interpolation(const HeckeSeries& s, Complex tau, const std::vector<double>& radii,
                                         long n_max) {
  if (n_max < 1) throw Error(ErrorKind::invalid_input, "n_max", "n_max must be >= 1");
  std::vector<CoefficientTable> tables;
  for (double r : radii) tables.push_back(coefficients(s, 1, n_max, r));
  return interpolation_residual(tables, s.config().k, s.config().lambda, tau, n_max);
}

namespace {

double loglog_slope(const std::vector<long>& n, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(v[i] > 0)) continue;
    double x = std::log(static_cast<double>(n[i])), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

GrowthFit uniform_growth(const HeckeSeries& s, long n_lo, long n_hi, const std::vector<double>& r_grid) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::invalid_input, "n_range", "need 1 <= n_lo <= n_hi");
  if (r_grid.empty()) throw Error(ErrorKind::invalid_input, "radius", "empty r grid");
  GrowthFit g;
  for (long n = n_lo; n <= n_hi; ++n) g.n.push_back(n);
  g.sup_a.assign(g.n.size(), 0);
  g.sup_a_tilde.assign(g.n.size(), 0);
  g.argmax_r.assign(g.n.size(), r_grid.front());
  for (double r : r_grid) {
    CoefficientTable t = coefficients(s, n_lo, n_hi, r, true);
    for (std::size_t i = 0; i < g.n.size(); ++i) {
      if (std::abs(t.a[i]) > g.sup_a[i]) {
        g.sup_a[i] = std::abs(t.a[i]);
        g.argmax_r[i] = r;
      }
      g.sup_a_tilde[i] = std::max(g.sup_a_tilde[i], std::abs(t.a_tilde[i]));
    }
  }
  g.slope = loglog_slope(g.n, g.sup_a);
  std::vector<double> both(g.n.size());
  for (std::size_t i = 0; i < both.size(); ++i) both[i] = g.sup_a[i] + g.sup_a_tilde[i];
  g.slope_sum = loglog_slope(g.n, both);
  return g;
}

PointwiseFit pointwise_shape(const HeckeSeries& s, long n_lo, long n_hi, const std::vector<double>& radii) {
  if (n_lo < 1 || n_hi < n_lo) throw Error(ErrorKind::invalid_input, "n_range", "need 1 <= n_lo <= n_hi");
  const double k = s.config().k;
  PointwiseFit p;
  for (double r : radii) {
    if (!(r > 0)) throw Error(ErrorKind::invalid_input, "radius", "radii must be positive");
    CoefficientTable t = coefficients(s, n_lo, n_hi, r, true);
    double best = 0;
    for (std::size_t i = 0; i < t.n.size(); ++i) {
      double shape = std::pow(static_cast<double>(t.n[i]), k / 2 + 9.0 / 8) * std::pow(r, -k + 9.0 / 4);
      best = std::max(best, (std::abs(t.a[i]) + std::abs(t.a_tilde[i])) / shape);
    }
    p.r.push_back(r);
    p.fitted.push_back(best);
  }
  auto [lo, hi] = std::minmax_element(p.fitted.begin(), p.fitted.end());
  p.stability = *lo > 0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  return p;
}

namespace {

// sum_f |w + f lam|^-kappa
double periodic_abs(double x, double y, double kappa, double lambda) {
  const int F0 = 8 + static_cast<int>(std::ceil(2 * y / lambda));
  const double fc = std::round(-x / lambda);
  double sum = 0;
  for (int j = -F0; j <= F0; ++j) {
    double u = x + (fc + j) * lambda;
    sum += std::pow(u * u + y * y, -kappa / 2);
  }
  // (t^2 + eta^2)^(-kappa/2) = sum_m binom(-kappa/2, m) eta^(2m) t^(-kappa-2m)
  const double eta2 = (y / lambda) * (y / lambda);
  auto side = [&](double q) {
    double s = 0, coef = 1, qpow = std::pow(q, -kappa), qinv2 = 1 / (q * q);
    for (int m = 0; m < 200; ++m) {
      double term = coef * hurwitz_tail(q, qpow, kappa + 2 * m);
      s += term;
      if (std::fabs(term) < 1e-17 * std::fabs(s)) break;
      coef *= (-kappa / 2 - m) / (m + 1) * eta2;
      qpow *= qinv2;
    }
    return s;
  };
  sum += std::pow(lambda, -kappa) * (side(x / lambda + fc + F0 + 1) + side(F0 + 1 - fc - x / lambda));
  return sum;
}

}  // namespace

std::pair<double, double> U_values(const RepresentativeSet& reps, double kappa, Complex z) {
  check_point(z);
  const double lam = reps.lambda;
  double U = 0, Ut = 0;
  for (const auto& r : reps.R) {
    double c = std::fabs(r.m[2]), d = r.m[2] < 0 ? -r.m[3] : r.m[3];
    U += std::pow(c, -kappa) * periodic_abs(z.real() + d / c, z.imag(), kappa, lam);
  }
  for (const auto& r : reps.R_tilde) {
    // gamma S has bottom row (d, -c)
    double c = std::fabs(r.m[3]), d = r.m[3] < 0 ? r.m[2] : -r.m[2];
    Ut += std::pow(c, -kappa) * periodic_abs(z.real() + d / c, z.imag(), kappa, lam);
  }
  return {U, Ut};
}

UBoundsReport U_bounds(const UBoundsConfig& cfg) {
  if (!(cfg.kappa >= 9.0 / 4)) throw Error(ErrorKind::invalid_input, "kappa", "kappa must be >= 9/4");
  RepresentativeSet reps = series_representatives(cfg.lambda, cfg.max_syllables, cfg.max_exponent, cfg.prune);
  std::vector<Complex> zs = cfg.z_samples;
  if (zs.empty()) {
    for (int iy = 0; iy <= 8; ++iy) {
      double y = 0.05 * std::pow(100.0, iy / 8.0);
      for (int ix = 0; ix < 8; ++ix) zs.emplace_back(cfg.lambda * ix / 16.0, y);
    }
  }
  UBoundsReport rep;
  rep.orbits = reps.R.size();
  rep.orbits_tilde = reps.R_tilde.size();
  rep.samples.resize(zs.size());
  parallel_for(zs.size(), [&](std::size_t i) {
    Complex z = zs[i];
    auto [U, Ut] = U_values(reps, cfg.kappa, z);
    double y = z.imag();
    rep.samples[i] = {z, U, Ut, std::pow(2.0, cfg.kappa) * (std::pow(y, -cfg.kappa / 2) + std::pow(y, -cfg.kappa))};
  });
  for (const auto& s : rep.samples) {
    double ratio = std::max(s.U, s.U_tilde) / s.reference;
    auto it = std::find_if(rep.fitted.begin(), rep.fitted.end(), [&](const auto& p) { return p.first == s.z.imag(); });
    if (it == rep.fitted.end())
      rep.fitted.emplace_back(s.z.imag(), ratio);
    else
      it->second = std::max(it->second, ratio);
  }
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (const auto& [y, c] : rep.fitted) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  rep.stability = lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < std::min<std::size_t>(zs.size(), 4); ++i) {
    Complex z = zs[i * (zs.size() / std::min<std::size_t>(zs.size(), 4))];
    auto a = U_values(reps, cfg.kappa, z);
    auto b = U_values(reps, cfg.kappa, z + cfg.lambda);
    rep.periodicity_residual = std::max({rep.periodicity_residual, std::fabs(a.first - b.first) / a.first,
                                         std::fabs(a.second - b.second) / a.second});
  }
  return rep;
}

}  // namespace sqrlat
