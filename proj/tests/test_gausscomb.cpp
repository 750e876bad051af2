#include "sqrlat/gausscomb.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace sqrlat;

namespace {

constexpr double pi = std::numbers::pi;

GaussianCombo random_combo(std::mt19937& rng, std::vector<int> dims, std::vector<int> delta, int terms) {
  std::uniform_real_distribution<double> re(-1.0, 1.0), im(0.4, 2.0), cc(-1.0, 1.0);
  GaussianCombo c(dims, delta);
  for (int t = 0; t < terms; ++t) {
    std::vector<Complex> z;
    for (int s : delta) z.emplace_back(re(rng), s * im(rng));
    c.add_term({cc(rng), cc(rng)}, z);
  }
  return c;
}

// Adaptive quadrature of int_R exp(pi i w x^2) exp(-2 pi i x xi) dx.
Complex gaussian_ft_1d(Complex w, double xi) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double x, bool imag_part) {
    Complex v = std::exp(Complex(0, pi) * w * (x * x) - Complex(0, 2 * pi * x * xi));
    return imag_part ? v.imag() : v.real();
  };
  double inf = std::numeric_limits<double>::infinity();
  double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x, false); }, -inf, inf, 15, 1e-13);
  double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x, true); }, -inf, inf, 15, 1e-13);
  return {re, im};
}

// Numerical Fourier transform at a point xi (one vector per block) of a combo.
Complex numeric_fourier(const GaussianCombo& c, const std::vector<std::vector<double>>& xi) {
  Complex sum = 0;
  for (const auto& t : c.terms()) {
    Complex prod = t.coeff;
    for (int j = 0; j < c.blocks(); ++j)
      for (double coord : xi[j]) prod *= gaussian_ft_1d(static_cast<double>(c.delta()[j]) * t.z[j], coord);
    sum += prod;
  }
  return sum;
}

double radius(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TEST(Branch, PowerOverI) {
  EXPECT_NEAR(std::abs(pow_over_i(Complex(0, 2), -0.5) - std::pow(2.0, -0.5)), 0, 1e-15);
  // (1+i)/i = 1 - i, arg -pi/4; square root has arg -pi/8
  Complex r = pow_over_i(Complex(1, 1), 0.5);
  EXPECT_NEAR(std::arg(r), -pi / 8, 1e-15);
  EXPECT_NEAR(std::abs(r), std::pow(2.0, 0.25), 1e-15);
  EXPECT_THROW(pow_over_i(Complex(1, -1), 0.5), Error);
  EXPECT_NEAR(std::abs(unit_phase(0.25) - Complex(0, 1)), 0, 1e-15);
}

TEST(Gaussian, EvalExamples) {
  auto g = GaussianCombo::single({1, 1}, {1, 1}, 1.0, {Complex(0, 1), Complex(0, 1)});
  EXPECT_NEAR(std::abs(g.eval({1, 1}) - std::exp(-2 * pi)), 0, 1e-16);
  EXPECT_NEAR(std::exp(-2 * pi), 0.0018674, 1e-7);
  GaussianCombo c({2}, {1});
  c.add_term({2, 1}, {Complex(0.3, 1)});
  c.add_term({-0.5, 0}, {Complex(-0.1, 2)});
  EXPECT_NEAR(std::abs(c.eval({0}) - Complex(1.5, 1)), 0, 1e-15);
  GaussianCombo zero({1}, {1});
  zero.add_term(1.0, {Complex(0.2, 0.7)});
  zero.add_term(-1.0, {Complex(0.2, 0.7)});
  for (double r : {0.0, 0.3, 1.7}) EXPECT_EQ(zero.eval({r}), Complex(0));
}

TEST(Gaussian, HalfPlaneEnforced) {
  GaussianCombo c({1, 1}, {1, -1});
  EXPECT_NO_THROW(c.add_term(1.0, {Complex(0, 1), Complex(0, -1)}));
  EXPECT_THROW(c.add_term(1.0, {Complex(0, 1), Complex(0, 1)}), Error);
}

TEST(Fourier, SelfDualAndScaling) {
  auto g = GaussianCombo::single({1, 3}, {1, 1}, 1.0, {Complex(0, 1), Complex(0, 1)});
  auto f = fourier(g);
  EXPECT_NEAR(std::abs(f.terms()[0].coeff - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(f.terms()[0].z[0] - Complex(0, 1)), 0, 1e-15);
  auto h = fourier(GaussianCombo::single({1}, {1}, 1.0, {Complex(0, 2)}));
  EXPECT_NEAR(std::abs(h.terms()[0].coeff - std::pow(2.0, -0.5)), 0, 1e-15);
  EXPECT_NEAR(std::abs(h.terms()[0].z[0] - Complex(0, 0.5)), 0, 1e-15);
}

TEST(Fourier, DoubleTransformIsIdentity) {
  std::mt19937 rng(11);
  for (auto shape : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{1, 1}, {1, 1}}, {{1, 1}, {1, -1}}, {{2, 3}, {1, 1}}, {{5}, {1}}, {{1, 1, 1}, {-1, 1, -1}}}) {
    auto c = random_combo(rng, shape.first, shape.second, 5);
    auto cc = fourier(fourier(c));
    ASSERT_EQ(cc.size(), c.size());
    for (std::size_t t = 0; t < c.size(); ++t) {
      EXPECT_LT(std::abs(cc.terms()[t].coeff - c.terms()[t].coeff), 1e-14);
      for (int j = 0; j < c.blocks(); ++j) EXPECT_LT(std::abs(cc.terms()[t].z[j] - c.terms()[t].z[j]), 1e-14);
    }
    EXPECT_TRUE(simplify(cc - c).empty());
  }
}

TEST(Fourier, Linearity) {
  std::mt19937 rng(3);
  auto a = random_combo(rng, {1, 2}, {1, -1}, 3);
  auto b = random_combo(rng, {1, 2}, {1, -1}, 4);
  Complex s(0.3, -1.2), t(-2.0, 0.5);
  auto lhs = fourier(a * s + b * t);
  auto rhs = fourier(a) * s + fourier(b) * t;
  EXPECT_TRUE(simplify(lhs - rhs, {1e-12, 1e-13}).empty());
}

TEST(Fourier, MatchesNumericalQuadrature) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (auto shape : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
           {{1}, {1}}, {{3}, {1}}, {{1, 2}, {1, -1}}, {{2, 1}, {-1, -1}}}) {
    auto c = random_combo(rng, shape.first, shape.second, 2);
    auto f = fourier(c);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::vector<double>> xi;
      std::vector<double> radii;
      for (int d : shape.first) {
        std::vector<double> v;
        for (int i = 0; i < d; ++i) v.push_back(u(rng));
        radii.push_back(radius(v));
        xi.push_back(v);
      }
      EXPECT_LT(std::abs(f.eval(radii) - numeric_fourier(c, xi)), 1e-6);
    }
  }
}

TEST(Fourier, Plancherel) {
  std::mt19937 rng(9);
  auto c = random_combo(rng, {1, 1}, {1, 1}, 3);
  auto f = fourier(c);
  double h = 0.02, L = 8;
  double nc = 0, nf = 0;
  for (double x = -L; x <= L; x += h)
    for (double y = -L; y <= L; y += h) {
      nc += std::norm(c.eval({std::fabs(x), std::fabs(y)}));
      nf += std::norm(f.eval({std::fabs(x), std::fabs(y)}));
    }
  nc *= h * h;
  nf *= h * h;
  EXPECT_NEAR(nc, nf, 1e-8 * nc);
}

TEST(Simplify, MergeAndCancel) {
  GaussianCombo c({1}, {1});
  Complex z(0.1, 0.9);
  c.add_term(1.0, {z});
  c.add_term(-1.0, {z});
  EXPECT_TRUE(simplify(c).empty());
  GaussianCombo d({1}, {1});
  d.add_term(1.0, {z});
  d.add_term(2.0, {z});
  auto s = simplify(d);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.terms()[0].coeff, Complex(3.0));
  GaussianCombo e({1}, {1});
  e.add_term(1.0, {z});
  e.add_term(1.0, {z + Complex(1e-9, 0)});
  EXPECT_EQ(simplify(e).size(), 2u);
  e.add_term(1.0, {z + Complex(1e-14, 0)});
  EXPECT_EQ(simplify(e).size(), 2u);
}

TEST(Simplify, CanonicalOrdering) {
  GaussianCombo c({1}, {1});
  c.add_term(1.0, {Complex(0.5, 1)});
  c.add_term(2.0, {Complex(-0.5, 1)});
  auto s = simplify(c);
  EXPECT_LT(s.terms()[0].z[0].real(), s.terms()[1].z[0].real());
  EXPECT_EQ(simplify(s).terms()[0].coeff, s.terms()[0].coeff);
}

TEST(Gaussian, DistinctParametersIndependent) {
  std::vector<Complex> zs{{0, 1}, {0, 2}, {0.5, 1}, {-0.5, 1.5}, {1, 0.7}, {-1, 2.5}, {0.3, 3}, {0, 0.6}};
  int n = static_cast<int>(zs.size());
  Eigen::MatrixXcd gram(n, n);
  double h = 0.004, L = 12;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Complex s = 0;
      for (double x = -L; x <= L; x += h)
        s += std::exp(Complex(0, pi) * zs[a] * (x * x)) * std::conj(std::exp(Complex(0, pi) * zs[b] * (x * x)));
      gram(a, b) = s * h;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  EXPECT_GT(es.eigenvalues().minCoeff(), 1e-9 * es.eigenvalues().maxCoeff());
}

TEST(Json, RoundTrip) {
  std::mt19937 rng(2);
  auto c = random_combo(rng, {1, 3}, {1, -1}, 3);
  auto back = combo_from_json(to_json(c));
  EXPECT_EQ(back.dims(), c.dims());
  EXPECT_EQ(back.delta(), c.delta());
  ASSERT_EQ(back.size(), c.size());
  for (std::size_t t = 0; t < c.size(); ++t) EXPECT_EQ(back.terms()[t].coeff, c.terms()[t].coeff);
  EXPECT_THROW(combo_from_json("{\"dims\": [1]}"), Error);
}

TEST(EigenResidual, EvenCombination) {
  // g + ĝ is a +1 eigenfunction, g - ĝ a -1 eigenfunction
  auto g = GaussianCombo::single({1, 1}, {1, 1}, 1.0, {Complex(0.2, 1.3), Complex(-0.4, 0.8)});
  auto plus = g + fourier(g);
  auto minus = g - fourier(g);
  EXPECT_LT(eigen_residual(plus, 1), 1e-14);
  EXPECT_LT(eigen_residual(minus, -1), 1e-14);
  EXPECT_GT(eigen_residual(plus, -1), 0.5);
}
