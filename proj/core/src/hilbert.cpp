#include "sqrlat/hilbert.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

namespace sqrlat {

namespace {

Complex e_frac(double w) { return unit_phase(w); }

double separation(const std::vector<Complex>& u, const std::vector<Complex>& v) {
  double d = 0, scale = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    d = std::max(d, std::abs(u[j] - v[j]));
    scale = std::max({scale, std::abs(u[j]), std::abs(v[j])});
  }
  return d / (1 + scale);
}

struct Orbit {
  std::vector<std::vector<ComplexLD>> w_ld, sw_ld;  // gamma_r z and S gamma_r z
  std::vector<std::vector<Complex>> w, sw;
};

Orbit orbit_points(const GammaData& g, const std::vector<Complex>& z) {
  Orbit o;
  const std::size_t n = z.size();
  for (const auto& m : g.gamma) {
    std::vector<ComplexLD> w = m.act_precise(z), sw(n);
    std::vector<Complex> wd(n), swd(n);
    for (std::size_t j = 0; j < n; ++j) {
      long double q = std::norm(w[j]);
      sw[j] = ComplexLD(-w[j].real() / q, w[j].imag() / q);
      wd[j] = Complex(static_cast<double>(w[j].real()), static_cast<double>(w[j].imag()));
      swd[j] = Complex(static_cast<double>(sw[j].real()), static_cast<double>(sw[j].imag()));
    }
    o.w_ld.push_back(std::move(w));
    o.sw_ld.push_back(std::move(sw));
    o.w.push_back(std::move(wd));
    o.sw.push_back(std::move(swd));
  }
  return o;
}

void check_eps(int eps) {
  if (eps != 1 && eps != -1) throw Error(ErrorKind::invalid_input, "bad_epsilon", "epsilon must be +1 or -1");
}

}  // namespace

void check_key_equation(const UnitDatum& u) {
  const auto& K = u.a.field();
  FieldElement one = K->one();
  FieldElement four = K->from_int(4), three = K->from_int(3);
  if (!((one + four * u.a) * (one + four * u.x)).is_one() || !((one - three * u.b) * (one - three * u.y)).is_one())
    throw Error(ErrorKind::precondition, "key_equation", "unit datum violates (1+4a)(1+4x) = 1 = (1-3b)(1-3y)");
  if ((u.a * u.b * u.x * u.y).is_zero())
    throw Error(ErrorKind::precondition, "degenerate_datum", "unit datum needs axby != 0");
  for (const auto* e : {&u.a, &u.b, &u.x, &u.y})
    if (!e->is_integral()) throw Error(ErrorKind::precondition, "key_equation", "unit datum is not integral");
}

bool satisfies_positivity(const UnitDatum& u) {
  const auto& K = u.a.field();
  FieldElement one = K->one(), four = K->from_int(4), three = K->from_int(3);
  return is_totally_positive(one + four * u.a) && is_totally_positive(one + four * u.x) &&
         is_totally_positive(one - three * u.b) && is_totally_positive(one - three * u.y);
}

UnitDatum find_unit_datum(const FieldPtr& field, bool totally_positive) {
  UnitSearchOptions opt;
  opt.totally_positive = totally_positive;
  FieldElement u4 = search_units(*field, 4, opt);
  FieldElement u3 = search_units(*field, 3, opt);
  FieldElement one = field->one();
  Rational q4(1, 4), q3(1, 3);
  UnitDatum d{(u4 - one) * q4, (one - u3) * q3, (u4.inverse() - one) * q4, (one - u3.inverse()) * q3};
  check_key_equation(d);
  return d;
}

GammaData gamma_matrices(const UnitDatum& u) {
  check_key_equation(u);
  const auto& K = u.a.field();
  FieldElement one = K->one(), zero = K->zero();
  FieldElement two = K->from_int(2), four = K->from_int(4);
  FieldElement p = one + four * u.a, q = one + four * u.x;
  FieldElement top3 = (one - four * u.b) / p, bot4 = (one - four * u.y) / q;

  GammaData g;
  g.datum = u;
  g.gamma = {
      Mat2K(one, zero, zero, one),
      Mat2K(zero, one, -one, two * u.a),
      Mat2K(-one, two * u.a, two, -p),
      Mat2K(two, -p, top3, two * u.b),
      Mat2K(top3, two * u.b, two * u.y, bot4),
      Mat2K(two * u.y, bot4, -q, two),
      Mat2K(-q, two, two * u.x, -one),
      Mat2K(two * u.x, -one, one, zero),
  };
  for (const auto& m : g.gamma)
    if (!m.is_integral())
      throw Error(ErrorKind::precondition, "not_integral", "gamma matrix has non-integral entries: " + m.str());

  Mat2K S = Mat2K::S(K);
  for (int r = 0; r < 8; ++r) {
    Mat2K t = S * g.gamma[r] * g.gamma[(r + 7) % 8].inverse();
    if (!t.c().is_zero() || !t.a().is_rational() || (!t.a().is_one() && !(-t.a()).is_one()) || t.a() != t.d())
      throw Error(ErrorKind::precondition, "not_translation",
                  "S gamma_r gamma_{r-1}^-1 is not a translation at r = " + std::to_string(r));
    FieldElement beta = t.b() / (two * t.a());
    if (!beta.is_integral())
      throw Error(ErrorKind::precondition, "beta_not_integral", "beta_r is not integral at r = " + std::to_string(r));
    g.beta.push_back(beta);
  }
  return g;
}

Complex mu(const std::vector<Complex>& w, const std::vector<int>& dims) {
  Complex p = 1;
  for (std::size_t j = 0; j < w.size(); ++j) p *= pow_over_i(w[j], 0.5 * dims[j]);
  return p;
}

Complex consistency_product(const GammaData& g, const std::vector<int>& dims, const std::vector<Complex>& z) {
  Complex p = 1;
  for (const auto& w : orbit_points(g, z).w) p *= mu(w, dims);
  return p;
}

Complex limit_phase(const std::array<double, 4>& g, double y) {
  Complex w = mobius(g[0], g[1], g[2], g[3], Complex(0, y));
  return pow_over_i(w, 0.5) / std::sqrt(std::abs(w));
}

RhoResult rho_constant(const GammaData& g, const std::vector<int>& dims) {
  const auto& u = g.datum;
  const auto& K = u.a.field();
  const int n = K->degree();
  if (static_cast<int>(dims.size()) != n)
    throw Error(ErrorKind::invalid_input, "bad_shape", "dims length must equal the field degree");
  if (!satisfies_positivity(u))
    throw Error(ErrorKind::precondition, "positivity_assumption", "the four units of the datum must be totally positive");

  RhoResult res;
  FieldElement one_minus_4b = K->one() - K->from_int(4) * u.b;
  for (int j = 0; j < n; ++j) {
    int eta = one_minus_4b.sign(j), xi = u.y.sign(j);
    res.eta.push_back(eta);
    res.xi.push_back(xi);
    if ((eta - 1) * (xi + 1) != 0)
      throw Error(ErrorKind::precondition, "either_or_violated",
                  "sign pattern 1-4b < 0 and y > 0 at embedding " + std::to_string(j));
    res.sigma += static_cast<long>(dims[j]) * (eta - 1) * (xi + 1);
  }
  res.rho = e_frac(-static_cast<double>(res.sigma) / 8);

  long general = 0;
  for (const auto& m : g.gamma) {
    FieldElement cc = m.a() * m.c();
    for (int j = 0; j < n; ++j) general += static_cast<long>(dims[j]) * (cc.is_zero() ? 0 : cc.sign(j));
  }
  res.rho_general = e_frac(-static_cast<double>(((general % 8) + 8) % 8) / 8);

  auto numeric = [&](double y) {
    std::vector<Complex> z(n, Complex(0, y));
    Complex p = 1;
    for (const auto& m : g.gamma) {
      Complex f = mu(m.act(z), dims);
      p *= f / std::abs(f);
    }
    return p;
  };
  res.rho_numeric_1e3 = numeric(1e3);
  res.rho_numeric_1e4 = numeric(1e4);
  return res;
}

bool genericity_check(const GammaData& g, const std::vector<Complex>& z, double tau_sep) {
  Orbit o = orbit_points(g, z);
  std::vector<std::vector<Complex>> orbit = o.w;
  orbit.insert(orbit.end(), o.sw.begin(), o.sw.end());
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t k = i + 1; k < orbit.size(); ++k)
      if (separation(orbit[i], orbit[k]) <= tau_sep) return false;
  return true;
}

std::vector<Complex> sample_generic_point(const GammaData& g, const std::vector<int>& delta, std::uint64_t seed,
                                          double tau_sep, int max_tries) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 2.0);
  for (int t = 0; t < max_tries; ++t) {
    std::vector<Complex> z(delta.size());
    for (std::size_t j = 0; j < delta.size(); ++j) {
      double x = re(rng), y = im(rng);
      z[j] = Complex(x, delta[j] * y);
    }
    if (genericity_check(g, z, tau_sep)) return z;
  }
  throw Error(ErrorKind::budget, "no_generic_point", "no generic point found within the sampling budget");
}

GaussianCombo build_thm1_function(const GammaData& g, const std::vector<int>& dims, const std::vector<Complex>& z,
                                  int eps) {
  check_eps(eps);
  const int n = g.datum.a.field()->degree();
  if (static_cast<int>(dims.size()) != n || static_cast<int>(z.size()) != n)
    throw Error(ErrorKind::invalid_input, "bad_shape", "dims and z must have one entry per embedding");
  for (const auto& v : z)
    if (!(v.imag() > 0)) throw Error(ErrorKind::invalid_input, "outside_half_plane", "z must lie in H^n");
  if (!genericity_check(g, z))
    throw Error(ErrorKind::precondition, "not_generic", "orbit points of z collide; choose another z");
  Complex rho = consistency_product(g, dims, z);
  if (std::abs(rho - 1.0) > 1e-9)
    throw Error(ErrorKind::precondition, "rho_not_one", "consistency product differs from 1");

  Orbit o = orbit_points(g, z);
  const auto& w = o.w;
  std::vector<Complex> lambda(8);
  lambda[0] = 1;
  for (int k = 1; k < 8; ++k) lambda[k] = -static_cast<double>(eps) * lambda[k - 1] * mu(w[k], dims);

  GaussianCombo combo(dims, std::vector<int>(n, 1));
  for (int r = 0; r < 8; ++r) {
    int prev = (r + 7) % 8;
    combo.add_term_extended(lambda[prev], o.w_ld[prev]);
    combo.add_term_extended(-lambda[prev], o.sw_ld[r]);
  }
  return combo;
}

GaussianCombo build_thm2_function(const ThetaContext& ctx, const GammaData& g, const std::vector<Complex>& z,
                                  int eps) {
  check_eps(eps);
  const int n = ctx.degree();
  if (!ctx.in_domain(z)) throw Error(ErrorKind::invalid_input, "outside_half_plane", "z must lie in H_delta^n");
  if (!genericity_check(g, z))
    throw Error(ErrorKind::precondition, "not_generic", "orbit points of z collide; choose another z");
  Complex base = ctx.theta(z);
  if (std::abs(base) < ctx.options().theta_min)
    throw Error(ErrorKind::numerical, "theta_near_zero", "theta too close to zero at the base point; resample z");

  Orbit o = orbit_points(g, z);
  GaussianCombo combo(std::vector<int>(n, 1), ctx.delta());
  for (int r = 0; r < 8; ++r) {
    double s = eps < 0 ? 1.0 : (r % 2 ? -1.0 : 1.0);
    const auto& w = o.w[r];
    const auto& sw = o.sw[r];
    Complex th = ctx.theta(w), sth = ctx.theta(sw);
    // cocycle: theta(S w) = j(S, w) theta(w)
    Complex predicted = ctx.j_theta_S(w) * th;
    if (std::abs(sth - predicted) > 1e-6 * std::max(std::abs(sth), std::abs(predicted)))
      throw Error(ErrorKind::numerical, "cocycle_mismatch", "theta cocycle residual above tolerance");
    combo.add_term_extended(s * base / th, o.w_ld[r]);
    combo.add_term_extended(eps * s * base / sth, o.sw_ld[r]);
  }
  return combo;
}

VanishingResult verify_vanishing(const GaussianCombo& combo, const PointSet& points) {
  VanishingResult res;
  double scale = combo.max_abs_coeff();
  const std::size_t n = points.weights.size();
  for (const auto& level : points.levels) {
    res.points_checked += level.points.size();
    if (scale == 0) continue;
    // the combo is radial in each block, so one evaluation per witness covers all its sign patterns
    for (std::size_t w = 0; w < level.witnesses.size(); ++w) {
      const auto& alpha = level.witnesses[w];
      std::vector<long double> sq(n, 0.0L);
      if (!alpha.is_zero())
        for (std::size_t j = 0; j < n; ++j) sq[j] = points.weights[j] * alpha.embed_ld(static_cast<int>(j));
      double v = std::abs(combo.eval_squared(sq)) / scale;
      if (v > res.max_residual || res.argmax.empty()) {
        res.max_residual = v;
        for (std::size_t p = 0; p < level.points.size(); ++p)
          if (level.witness_of_point[p] == static_cast<int>(w)) {
            res.argmax = level.points[p];
            break;
          }
      }
    }
  }
  return res;
}

double independence_ratio(const std::vector<GaussianCombo>& combos, double tau_z) {
  std::vector<std::vector<Complex>> params;
  auto index_of = [&](const std::vector<Complex>& z) {
    for (std::size_t i = 0; i < params.size(); ++i) {
      double scale = 0, d = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        d = std::max(d, std::abs(z[j] - params[i][j]));
        scale = std::max({scale, std::abs(z[j]), std::abs(params[i][j])});
      }
      if (d <= tau_z * (1 + scale)) return i;
    }
    params.push_back(z);
    return params.size() - 1;
  };
  std::vector<std::vector<std::pair<std::size_t, Complex>>> rows(combos.size());
  for (std::size_t k = 0; k < combos.size(); ++k)
    for (const auto& t : combos[k].terms()) rows[k].push_back({index_of(t.z), t.coeff});
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(combos.size()),
                                              static_cast<Eigen::Index>(params.size()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& [i, c] : rows[k]) m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) += c;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  return s(s.size() - 1) / s(0);
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["epsilon"] = epsilon;
  j["max_vanishing_residual"] = max_vanishing_residual;
  j["eigen_residual"] = eigen_residual;
  j["points_checked"] = points_checked;
  j["certificates"] = {{"det", det_ok}, {"beta_integral", beta_integral}};
  j["certificates"]["rho"] = rho ? nlohmann::json(*rho) : nlohmann::json(nullptr);
  return j.dump();
}

namespace {

void fill_certificates(const GammaData& g, VerificationReport& rep) {
  rep.det_ok = true;
  for (const auto& m : g.gamma) rep.det_ok = rep.det_ok && m.det().is_one() && m.is_integral();
  rep.beta_integral = g.beta.size() == 8;
  for (const auto& b : g.beta) rep.beta_integral = rep.beta_integral && b.is_integral();
}

}  // namespace

Construction construct_thm1(const FieldPtr& field, const std::vector<int>& dims, int eps,
                            std::optional<std::vector<Complex>> z, std::uint64_t seed, long trace_max) {
  GammaData g = gamma_matrices(find_unit_datum(field, true));
  RhoResult rho = rho_constant(g, dims);
  Construction out;
  out.z = z ? *z : sample_generic_point(g, std::vector<int>(field->degree(), 1), seed);
  out.combo = build_thm1_function(g, dims, out.z, eps);
  auto& rep = out.report;
  rep.epsilon = eps;
  long k = ((rho.sigma % 8) + 8) % 8;
  rep.rho = k == 0 ? 1 : (k == 4 ? -1 : 0);
  fill_certificates(g, rep);
  rep.eigen_residual = eigen_residual(out.combo, eps);
  auto v = verify_vanishing(out.combo, sqrt_points(inverse_different(field), trace_max));
  rep.max_vanishing_residual = v.max_residual;
  rep.points_checked = v.points_checked;
  return out;
}

Construction construct_thm2(const ThetaContext& ctx, int eps, std::optional<std::vector<Complex>> z,
                            std::uint64_t seed, double level_max) {
  GammaData g = gamma_matrices(find_unit_datum(ctx.field(), false));
  Construction out;
  out.z = z ? *z : sample_generic_point(g, ctx.delta(), seed);
  out.combo = build_thm2_function(ctx, g, out.z, eps);
  auto& rep = out.report;
  rep.epsilon = eps;
  fill_certificates(g, rep);
  rep.eigen_residual = eigen_residual(out.combo, eps);
  auto v = verify_vanishing(out.combo, ellipsoid_points(ctx.c(), ctx.ideal(), level_max));
  rep.max_vanishing_residual = v.max_residual;
  rep.points_checked = v.points_checked;
  return out;
}

}  // namespace sqrlat
