#include "sqrlat/hilbert.hpp"

#include <gtest/gtest.h>

#include "json.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace sqrlat;

namespace {

constexpr double pi = std::numbers::pi;

struct Q8 {
  FieldPtr K = make_quadratic_field(8);
  // sqrt(2) = sqrt(8) / 2
  FieldElement r2 = K->generator() * Rational(1, 2);
  FieldElement el(long u, long v) const { return K->from_int(u) + r2 * Rational(v); }
};

// theta by a plain coordinate box over the Z-basis of a, summed in double
Complex theta_box(const ThetaContext& ctx, const std::vector<Complex>& z, long box) {
  const auto& K = ctx.field();
  const int n = K->degree();
  std::vector<std::vector<double>> emb(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) emb[i][j] = ctx.ideal().basis_element(i).embed(j);
  std::vector<double> c(n);
  for (int j = 0; j < n; ++j) c[j] = ctx.c().embed(j);
  Complex s = 0;
  std::vector<long> u(n, -box);
  while (true) {
    Complex e = 0;
    for (int j = 0; j < n; ++j) {
      double v = 0;
      for (int i = 0; i < n; ++i) v += u[i] * emb[i][j];
      e += z[j] * c[j] * v * v;
    }
    s += std::exp(Complex(0, pi) * e);
    int i = 0;
    while (i < n && ++u[i] > box) u[i++] = -box;
    if (i == n) break;
  }
  return s;
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

ThetaContext q17_context() {
  auto K = make_quadratic_field(17);
  return ThetaContext(invert(K->generator()), FractionalIdeal::unit(K));
}

ThetaContext q8_context() {
  auto K = make_quadratic_field(8);
  return ThetaContext(invert(K->generator()), FractionalIdeal::unit(K));
}

}  // namespace

TEST(UnitDatum, SqrtEightValues) {
  Q8 f;
  UnitDatum d = find_unit_datum(f.K, true);
  EXPECT_EQ(d.a, f.el(4, 3));
  EXPECT_EQ(d.x, f.el(4, -3));
  EXPECT_EQ(d.b, f.el(-192, -136));
  EXPECT_EQ(d.y, f.el(-192, 136));
  EXPECT_TRUE(satisfies_positivity(d));
  EXPECT_NO_THROW(check_key_equation(d));
}

TEST(UnitDatum, KeyEquationViolationRejected) {
  Q8 f;
  UnitDatum d = find_unit_datum(f.K, true);
  d.x = d.x + f.K->one();
  try {
    gamma_matrices(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "key_equation");
  }
  UnitDatum zero{f.K->zero(), f.K->zero(), f.K->zero(), f.K->zero()};
  try {
    check_key_equation(zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "degenerate_datum");
  }
}

TEST(GammaMatrices, StructureSqrtEight) {
  Q8 f;
  GammaData g = gamma_matrices(find_unit_datum(f.K, true));
  ASSERT_EQ(g.gamma.size(), 8u);
  ASSERT_EQ(g.beta.size(), 8u);
  EXPECT_EQ(g.beta[1], -g.datum.a);
  Mat2K S = Mat2K::S(f.K);
  EXPECT_EQ(S * g.gamma[1], Mat2K::T(f.K->from_int(-2) * g.datum.a) * g.gamma[0]);
  FieldElement det3 = g.gamma[3].a() * g.gamma[3].d() - g.gamma[3].b() * g.gamma[3].c();
  EXPECT_TRUE(det3.is_one());
  for (int r = 0; r < 8; ++r) {
    EXPECT_TRUE(g.gamma[r].is_integral());
    EXPECT_TRUE(g.beta[r].is_integral());
    EXPECT_EQ(S * g.gamma[r], Mat2K::T(f.K->from_int(2) * g.beta[r]) * g.gamma[(r + 7) % 8]) << r;
  }
}

TEST(Rho, SignFormulaSqrtEight) {
  Q8 f;
  GammaData g = gamma_matrices(find_unit_datum(f.K, true));
  RhoResult rho = rho_constant(g, {1, 1});
  EXPECT_EQ(rho.sigma, 0);
  EXPECT_EQ(rho.eta, (std::vector<int>{1, -1}));
  EXPECT_EQ(rho.xi[1], -1);
  EXPECT_LT(std::abs(rho.rho - 1.0), 1e-15);
  EXPECT_LT(std::abs(rho.rho_general - rho.rho), 1e-15);
  EXPECT_LT(std::abs(rho.rho_numeric_1e3 - 1.0), 1e-3);
  EXPECT_LT(std::abs(rho.rho_numeric_1e4 - 1.0), 1e-3);
}

TEST(Rho, GeneralFormulaAgreesAcrossFieldsAndDims) {
  for (long D : {8L, 12L, 17L, 41L}) {
    auto K = make_quadratic_field(D);
    GammaData g = gamma_matrices(find_unit_datum(K, true));
    for (auto dims : {std::vector<int>{1, 1}, std::vector<int>{3, 5}, std::vector<int>{2, 7}}) {
      RhoResult rho = rho_constant(g, dims);
      EXPECT_LT(std::abs(rho.rho_general - rho.rho), 1e-12) << D;
      EXPECT_LT(std::abs(rho.rho_numeric_1e4 - rho.rho), 1e-3) << D;
    }
  }
}

TEST(Rho, LimitPhaseOfVSquared) {
  Complex expected = std::exp(Complex(0, -pi / 4));
  EXPECT_LT(std::abs(limit_phase({1, 0, 2, 1}, 1e6) - expected), 1e-5);
  // T^2 has c = 0 and keeps the phase trivial
  EXPECT_LT(std::abs(limit_phase({1, 2, 0, 1}, 1e6) - 1.0), 1e-5);
}

TEST(Theta, LimitAtInfinity) {
  auto ctx = q17_context();
  EXPECT_EQ(ctx.delta(), (std::vector<int>{1, -1}));
  Complex v = ctx.theta_direct({Complex(0, 20), Complex(0, -20)}).value;
  EXPECT_LT(std::abs(v - 1.0), 1e-12);
}

TEST(Theta, MatchesCoordinateBoxSum) {
  auto ctx = q17_context();
  std::vector<Complex> z{Complex(0.2, 0.9), Complex(-0.4, -1.3)};
  Complex box = theta_box(ctx, z, 60);
  EXPECT_LT(rel_err(ctx.theta_direct(z).value, box), 1e-12);
  EXPECT_LT(rel_err(ctx.theta(z), box), 1e-12);
}

TEST(Theta, TranslationInvariance) {
  auto ctx = q17_context();
  const auto& K = ctx.field();
  FieldElement beta = K->basis_element(1) - K->from_int(3);
  for (int s = 0; s < 5; ++s) {
    auto z = random_point(ctx.delta(), 100 + s);
    std::vector<Complex> w = z;
    for (int j = 0; j < 2; ++j) w[j] += 2 * beta.embed(j);
    EXPECT_LT(rel_err(ctx.theta(z), ctx.theta(w)), 1e-12);
    EXPECT_LT(std::abs(ctx.j_theta(Mat2K::T(K->from_int(2) * beta), z) - 1.0), 1e-12);
  }
}

TEST(Theta, FunctionalEquation) {
  auto ctx = q17_context();
  EXPECT_LT(ctx.functional_equation_residual({Complex(0, 1), Complex(0, -1)}), 1e-10);
  EXPECT_LT(theta_self_test(ctx, 20, 7), 1e-10);
  EXPECT_LT(theta_self_test(q8_context(), 20, 11), 1e-10);
}

TEST(Theta, BelowYMinRejected) {
  auto ctx = q17_context();
  try {
    ctx.theta_direct({Complex(0, 0.01), Complex(0, -1)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "below_y_min");
  }
  EXPECT_THROW(ctx.theta({Complex(0, 1), Complex(0, 1)}), Error);
}

TEST(JTheta, GeneratorValues) {
  auto ctx = q17_context();
  const auto& K = ctx.field();
  std::vector<Complex> z{Complex(0, 1), Complex(0, -1)};
  EXPECT_LT(std::abs(ctx.j_theta_S(z) - 1.0), 1e-15);
  EXPECT_LT(std::abs(ctx.j_theta(Mat2K::S(K), z) - 1.0), 1e-12);
  auto w = random_point(ctx.delta(), 3);
  EXPECT_LT(rel_err(ctx.j_theta(Mat2K::S(K), w), ctx.j_theta_S(w)), 1e-12);
}

TEST(JTheta, CocycleOnRandomWords) {
  // ratio of thetas against the closed-form generator factors composed along the word
  auto ctx = q17_context();
  const auto& K = ctx.field();
  std::vector<Mat2K> gens{Mat2K::S(K), Mat2K::T(K->from_int(2)), Mat2K::T(K->from_int(-2)),
                          Mat2K::T(K->from_int(2) * K->basis_element(1) - K->from_int(20))};
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1), len(1, 5);
  double worst = 0;
  for (int s = 0; s < 50; ++s) {
    auto z = random_point(ctx.delta(), 500 + s);
    int L = len(rng);
    std::vector<int> word(L);
    for (auto& w : word) w = pick(rng);
    Mat2K m = Mat2K::identity(K);
    for (int i : word) m = m * gens[i];
    Complex closed = 1;
    std::vector<Complex> cur = z;
    for (int i = L - 1; i >= 0; --i) {
      if (word[i] == 0) closed *= ctx.j_theta_S(cur);
      cur = gens[word[i]].act(cur);
    }
    worst = std::max(worst, rel_err(ctx.j_theta(m, z), closed));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Genericity, DiagonalPoints) {
  Q8 f;
  GammaData g = gamma_matrices(find_unit_datum(f.K, true));
  EXPECT_FALSE(genericity_check(g, {Complex(0, 1), Complex(0, 1)}));
  EXPECT_TRUE(genericity_check(g, {Complex(0, 2), Complex(0, 2)}));
  EXPECT_TRUE(genericity_check(g, {Complex(0.3, 1.1), Complex(-0.2, 0.9)}));
  try {
    build_thm1_function(g, {1, 1}, {Complex(0, 1), Complex(0, 1)}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not_generic");
  }
  auto z = sample_generic_point(g, {1, 1}, 9);
  EXPECT_TRUE(genericity_check(g, z));
}

TEST(Thm1, SqrtEightFixedPoint) {
  Q8 f;
  std::vector<Complex> z{Complex(0.3, 1.1), Complex(-0.2, 0.9)};
  for (int eps : {1, -1}) {
    Construction c = construct_thm1(f.K, {1, 1}, eps, z, 0, 40);
    EXPECT_EQ(c.combo.size(), 16u);
    EXPECT_EQ(simplify(c.combo).size(), 16u);
    EXPECT_LT(c.report.max_vanishing_residual, 1e-10);
    EXPECT_LT(c.report.eigen_residual, 1e-13);
    EXPECT_TRUE(c.report.det_ok);
    EXPECT_TRUE(c.report.beta_integral);
    ASSERT_TRUE(c.report.rho.has_value());
    EXPECT_EQ(*c.report.rho, 1);
    EXPECT_GT(c.combo.max_abs_coeff(), 1e-3);
  }
}

TEST(Thm1, BothFieldsBothSigns) {
  for (long D : {8L, 17L}) {
    auto K = make_quadratic_field(D);
    for (int eps : {1, -1}) {
      Construction c = construct_thm1(K, {1, 1}, eps, std::nullopt, 42, 40);
      EXPECT_LT(c.report.max_vanishing_residual, 1e-10) << D << " " << eps;
      EXPECT_LT(c.report.eigen_residual, 1e-13) << D << " " << eps;
      EXPECT_GT(c.report.points_checked, 1000u);
    }
  }
}

TEST(Thm1, EigenByPointEvaluation) {
  // fourier(f) - eps f evaluated pointwise rather than by term matching
  Q8 f;
  for (int eps : {1, -1}) {
    Construction c = construct_thm1(f.K, {1, 1}, eps, std::nullopt, 3, 4);
    GaussianCombo ft = fourier(c.combo);
    std::mt19937 rng(eps + 10);
    std::uniform_real_distribution<double> r(0.0, 2.5);
    for (int s = 0; s < 20; ++s) {
      std::vector<double> radii{r(rng), r(rng)};
      Complex lhs = ft.eval(radii), rhs = static_cast<double>(eps) * c.combo.eval(radii);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * c.combo.max_abs_coeff());
    }
  }
}

TEST(Thm1, VanishingAtSignExpandedPoints) {
  // plain double evaluation at every emitted point of sqrt(O_K^dual)
  Q8 f;
  Construction c = construct_thm1(f.K, {1, 1}, 1, std::nullopt, 5, 12);
  PointSet ps = sqrt_points(inverse_different(f.K), 12);
  double worst = 0;
  for (const auto& p : ps.all_points()) {
    std::vector<double> radii{std::fabs(p[0]), std::fabs(p[1])};
    worst = std::max(worst, std::abs(c.combo.eval(radii)));
  }
  EXPECT_LT(worst, 1e-9 * c.combo.max_abs_coeff());
}

TEST(Thm1, ConsistencyProductMatchesSignFormula) {
  for (long D : {8L, 17L}) {
    auto K = make_quadratic_field(D);
    GammaData g = gamma_matrices(find_unit_datum(K, true));
    RhoResult rho = rho_constant(g, {1, 1});
    auto z = sample_generic_point(g, {1, 1}, 1);
    Complex num = consistency_product(g, {1, 1}, z);
    EXPECT_LT(std::abs(num - rho.rho), 1e-9) << D;
  }
  EXPECT_THROW(build_thm1_function(gamma_matrices(find_unit_datum(make_quadratic_field(8), true)), {1, 1},
                                   {Complex(0.3, 1.1), Complex(-0.2, 0.9)}, 2),
               Error);
}

TEST(Vanishing, CorruptionAndZero) {
  Q8 f;
  Construction c = construct_thm1(f.K, {1, 1}, 1, std::nullopt, 8, 40);
  PointSet ps = sqrt_points(inverse_different(f.K), 40);
  GaussianCombo broken(c.combo.dims(), c.combo.delta());
  for (std::size_t t = 0; t < c.combo.size(); ++t) {
    const auto& term = c.combo.terms()[t];
    Complex coeff = term.coeff;
    if (t == 0) coeff += 1e-3 * c.combo.max_abs_coeff();
    broken.add_term(coeff, term.z);
    if (!term.z_lo.empty()) broken.set_low_parts(t, term.z_lo);
  }
  EXPECT_GT(verify_vanishing(broken, ps).max_residual, 1e-5);
  VanishingResult ok = verify_vanishing(c.combo, ps);
  EXPECT_LT(ok.max_residual, 1e-10);
  EXPECT_EQ(ok.argmax.size(), 2u);
  EXPECT_EQ(ok.points_checked, ps.size());

  GaussianCombo zero({1, 1}, {1, 1});
  VanishingResult z = verify_vanishing(zero, ps);
  EXPECT_EQ(z.max_residual, 0.0);
}

TEST(Independence, FourGenericPoints) {
  Q8 f;
  GammaData g = gamma_matrices(find_unit_datum(f.K, true));
  std::vector<GaussianCombo> combos;
  for (int s = 0; s < 4; ++s) combos.push_back(build_thm1_function(g, {1, 1}, sample_generic_point(g, {1, 1}, 70 + s), 1));
  EXPECT_GT(independence_ratio(combos), 1e-8);
  combos.push_back(combos[0] * Complex(2, -1) + combos[1]);
  EXPECT_LT(independence_ratio(combos), 1e-10);
}

TEST(Thm2, SqrtEightEllipses) {
  auto ctx = q8_context();
  EXPECT_LT(theta_self_test(ctx, 20, 21), 1e-10);
  for (int eps : {-1, 1}) {
    Construction c = construct_thm2(ctx, eps, std::nullopt, 17, 20);
    EXPECT_LE(c.combo.size(), 16u);
    EXPECT_LT(c.report.max_vanishing_residual, 1e-8) << eps;
    EXPECT_LT(c.report.eigen_residual, 1e-8) << eps;
    EXPECT_FALSE(c.report.rho.has_value());
    EXPECT_TRUE(c.report.det_ok);
    EXPECT_GT(simplify(c.combo).max_abs_coeff(), 1e-3);
  }
}

TEST(Thm2, MonogenicCubic) {
  auto K = make_monogenic_field(parse_polynomial("1,0,-4,-1"));
  FieldElement alpha = K->generator();
  FieldElement dp = K->from_int(3) * alpha * alpha - K->from_int(4);
  ThetaContext ctx(invert(dp), FractionalIdeal::unit(K));
  EXPECT_LT(theta_self_test(ctx, 5, 2), 1e-10);
  Construction c = construct_thm2(ctx, -1, std::nullopt, 3, 6);
  EXPECT_LT(c.report.max_vanishing_residual, 1e-6);
  EXPECT_LT(c.report.eigen_residual, 1e-6);
  EXPECT_GT(c.report.points_checked, 100u);
}

TEST(Report, Json) {
  Q8 f;
  Construction c = construct_thm1(f.K, {1, 1}, -1, std::nullopt, 1, 10);
  auto j = nlohmann::json::parse(c.report.to_json());
  EXPECT_EQ(j["epsilon"], -1);
  EXPECT_EQ(j["certificates"]["det"], true);
  EXPECT_EQ(j["certificates"]["beta_integral"], true);
  EXPECT_EQ(j["certificates"]["rho"], 1);
  EXPECT_EQ(j["points_checked"].get<std::size_t>(), c.report.points_checked);
  GaussianCombo back = combo_from_json(to_json(c.combo));
  EXPECT_LT(verify_vanishing(back, sqrt_points(inverse_different(f.K), 10)).max_residual, 1e-10);
}
