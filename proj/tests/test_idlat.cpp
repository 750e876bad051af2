#include "sqrlat/idlat.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

using namespace sqrlat;

namespace {

std::set<std::string> as_keys(const std::vector<FieldElement>& xs) {
  std::set<std::string> s;
  for (const auto& x : xs) s.insert(x.str());
  return s;
}

// Brute force over a Z-basis of the ideal: coordinate box large enough to hold |sigma_j| <= m,
// with the last coordinate solved from the trace condition.
std::vector<FieldElement> brute_force_slice(const std::vector<FieldElement>& basis, long m) {
  const auto& K = basis[0].field();
  int n = K->degree();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = basis[i].embed(j);
  Eigen::MatrixXd inv = e.inverse();
  std::vector<long> bound(n);
  for (int i = 0; i < n; ++i) {
    double b = 0;
    for (int j = 0; j < n; ++j) b += std::fabs(inv(j, i));
    bound[i] = static_cast<long>(std::ceil(b * m)) + 1;
  }
  std::vector<Rational> tr(n);
  for (int i = 0; i < n; ++i) tr[i] = basis[i].trace();
  std::vector<FieldElement> out;
  std::vector<long> u(n);
  std::function<void(int, Rational)> rec = [&](int i, Rational partial) {
    if (i == n - 1) {
      Rational last = (Rational(m) - partial) / tr[n - 1];
      if (last.get_den() != 1 || abs(last) > bound[n - 1]) return;
      FieldElement x = basis[n - 1] * last;
      for (int r = 0; r < n - 1; ++r) x += basis[r] * Rational(u[r]);
      if (is_totally_nonnegative(x)) out.push_back(x);
      return;
    }
    for (u[i] = -bound[i]; u[i] <= bound[i]; ++u[i]) rec(i + 1, partial + tr[i] * u[i]);
  };
  rec(0, Rational(0));
  return out;
}

FieldElement sqrt_d(const FieldPtr& K) { return K->generator(); }

// O_K-module generated by the given elements
FractionalIdeal ideal_from(const FieldPtr& K, const std::vector<FieldElement>& gens) {
  QMat rows;
  for (const auto& x : gens)
    for (int i = 0; i < K->degree(); ++i) rows.push_back((K->basis_element(i) * x).coords());
  return FractionalIdeal(K, rows);
}

}  // namespace

TEST(Ideal, DualOfRingOfIntegersQuadratic) {
  auto K = make_quadratic_field(17);
  auto dual = inverse_different(K);
  EXPECT_EQ(dual, FractionalIdeal::principal(invert(sqrt_d(K))));
  EXPECT_EQ(dual.norm(), Rational(1, 17));
}

TEST(Ideal, DualOfRingOfIntegersMonogenic) {
  auto K = make_monogenic_field(parse_polynomial("1,0,-4,-1"));
  FieldElement alpha = K->generator();
  FieldElement deriv = alpha * alpha * Rational(3) - K->from_int(4);
  EXPECT_EQ(inverse_different(K), FractionalIdeal::principal(invert(deriv)));
}

TEST(Ideal, DualInvolutionAndInverse) {
  for (auto K : {make_quadratic_field(8), make_quadratic_field(17), make_quadratic_field(12),
                 make_monogenic_field(parse_polynomial("1,0,-4,-1"))}) {
    auto O = FractionalIdeal::unit(K);
    EXPECT_EQ(dual_ideal(dual_ideal(O)), O);
    FieldElement g = K->generator() + K->from_int(3);
    auto a = FractionalIdeal::principal(g * Rational(1, 5)) * ideal_from(K, {K->from_int(2), g + K->one()});
    EXPECT_TRUE(a.is_module());
    EXPECT_EQ(dual_ideal(dual_ideal(a)), a);
    EXPECT_EQ(a * inverse_ideal(a), O);
    EXPECT_EQ(dual_ideal(a), inverse_different(K) * inverse_ideal(a));
  }
}

TEST(Ideal, CovolumeIdentity) {
  for (auto K : {make_quadratic_field(8), make_quadratic_field(17), make_quadratic_field(257),
                 make_monogenic_field(parse_polynomial("1,0,-4,-1"))}) {
    double root_disc = std::sqrt(std::fabs(K->discriminant().get_d()));
    std::vector<FractionalIdeal> ideals{FractionalIdeal::unit(K), inverse_different(K),
                                        FractionalIdeal::principal(K->generator() * Rational(3) + K->from_int(7))};
    ideals.push_back(ideals[1] * ideals[2]);
    for (const auto& a : ideals) {
      double expected = a.norm().get_d() * root_disc;
      EXPECT_LT(std::fabs(a.covolume() - expected) / a.covolume(), 1e-10) << a.str();
    }
  }
}

TEST(Ideal, Membership) {
  auto K = make_quadratic_field(17);
  auto dual = inverse_different(K);
  EXPECT_TRUE(membership(dual, invert(sqrt_d(K))));
  auto O = FractionalIdeal::unit(K);
  EXPECT_FALSE(membership(O, K->from_rational(Rational(1, 2))));
  EXPECT_TRUE(membership(O, K->basis_element(1)));
}

TEST(Ideal, RankDeficientRejected) {
  auto K = make_quadratic_field(8);
  EXPECT_THROW(FractionalIdeal(K, {{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), Error);
}

TEST(TraceOne, DualBasisPartner) {
  for (long D : {17L, 8L, 257L}) {
    auto K = make_quadratic_field(D);
    auto dual = inverse_different(K);
    FieldElement a1 = trace_one_element(dual);
    EXPECT_EQ(a1.trace(), 1);
    EXPECT_TRUE(dual.contains(a1));
    // Tr(a1 * w_i) = delta_{0i}
    EXPECT_EQ((a1 * K->basis_element(1)).trace(), 0);
  }
  auto K = make_quadratic_field(17);
  auto O = FractionalIdeal::unit(K);
  try {
    trace_one_element(O);  // Tr(O_K) = Z for D odd: 1 has trace 2, omega has trace 17
  } catch (const Error&) {
    FAIL();
  }
  auto K8 = make_quadratic_field(8);
  EXPECT_THROW(trace_one_element(FractionalIdeal::unit(K8)), Error);  // traces lie in 2Z
}

TEST(TraceSlice, Sqrt17Examples) {
  auto K = make_quadratic_field(17);
  auto dual = inverse_different(K);
  FieldElement inv_root = invert(sqrt_d(K));
  auto expected = [&](long lo, long hi, long m) {
    std::vector<FieldElement> v;
    for (long l = lo; l <= hi; ++l) v.push_back((K->from_int(l) + K->basis_element(1) * Rational(m)) * inv_root);
    return as_keys(v);
  };
  EXPECT_EQ(as_keys(enumerate_trace_slice(dual, 1)), expected(-10, -7, 1));
  EXPECT_EQ(as_keys(enumerate_trace_slice(dual, 2)), expected(-21, -13, 2));
  auto zero = enumerate_trace_slice(dual, 0);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_TRUE(zero[0].is_zero());
  for (const auto& x : enumerate_trace_slice(dual, 5)) EXPECT_EQ((x + trace_one_element(dual)).trace(), 6);
}

TEST(TraceSlice, MatchesBruteForce) {
  for (long D : {17L, 8L, 5L}) {
    auto K = make_quadratic_field(D);
    // 1/sqrt(D) * {omega, 1}: omega/sqrt(D) has trace 1
    FieldElement inv_root = invert(sqrt_d(K));
    std::vector<FieldElement> basis{inv_root, K->basis_element(1) * inv_root};
    auto dual = inverse_different(K);
    for (long m = 0; m <= 20; ++m)
      EXPECT_EQ(as_keys(enumerate_trace_slice(dual, m)), as_keys(brute_force_slice(basis, m))) << D << " m=" << m;
  }
  auto K = make_monogenic_field(parse_polynomial("1,0,-4,-1"));
  FieldElement alpha = K->generator();
  FieldElement inv_deriv = invert(alpha * alpha * Rational(3) - K->from_int(4));
  // alpha^2 / P'(alpha) has trace 1; put it last
  std::vector<FieldElement> basis{inv_deriv, alpha * inv_deriv, alpha * alpha * inv_deriv};
  auto dual = inverse_different(K);
  for (long m = 0; m <= 6; ++m)
    EXPECT_EQ(as_keys(enumerate_trace_slice(dual, m)), as_keys(brute_force_slice(basis, m))) << "cubic m=" << m;
}

TEST(SqrtPoints, Sqrt17LevelOne) {
  auto K = make_quadratic_field(17);
  auto pts = sqrt_points(inverse_different(K), 1);
  ASSERT_EQ(pts.levels.size(), 2u);
  EXPECT_EQ(pts.levels[0].points.size(), 1u);
  EXPECT_EQ(pts.levels[1].points.size(), 16u);
  bool seen = false;
  for (const auto& p : pts.levels[1].points)
    if (std::fabs(p[0] - 0.9294) < 1e-4 && std::fabs(p[1] - 0.3691) < 1e-4) seen = true;
  EXPECT_TRUE(seen);
}

TEST(SqrtPoints, OnSpheresAndWitnessed) {
  for (auto K : {make_quadratic_field(17), make_monogenic_field(parse_polynomial("1,0,-4,-1"))}) {
    auto pts = sqrt_points(inverse_different(K), 6);
    for (const auto& level : pts.levels) {
      for (std::size_t p = 0; p < level.points.size(); ++p) {
        double r2 = 0;
        for (double x : level.points[p]) r2 += x * x;
        EXPECT_NEAR(r2, level.level, 1e-12 * (1 + level.level));
        const auto& w = level.witnesses[level.witness_of_point[p]];
        for (int j = 0; j < K->degree(); ++j)
          EXPECT_NEAR(level.points[p][j] * level.points[p][j], w.embed(j), 1e-12 * (1 + level.level));
      }
      std::size_t expected = 0;
      for (const auto& w : level.witnesses) expected += w.is_zero() ? 1 : (1u << K->degree());
      EXPECT_EQ(level.points.size(), expected);
    }
  }
}

TEST(SignExpand, ZerosNotDuplicated) {
  EXPECT_EQ(sign_expand({0.0, 0.0}).size(), 1u);
  EXPECT_EQ(sign_expand({1.0, 0.0}).size(), 2u);
  EXPECT_EQ(sign_expand({1.0, 4.0, 9.0}).size(), 8u);
}

TEST(Ellipsoid, Sqrt8CirclesAtRadiusSqrtAOverSqrt2) {
  auto K = make_quadratic_field(8);
  FieldElement c = invert(sqrt_d(K));
  auto O = FractionalIdeal::unit(K);
  double level_max = 20;
  auto pts = ellipsoid_points(c, O, level_max);
  // alpha = A + B sqrt 2 totally nonnegative with A/sqrt2 <= level_max: levels A/sqrt 2, |B| sqrt 2 <= A
  long a_max = static_cast<long>(std::floor(level_max * std::sqrt(2.0)));
  ASSERT_EQ(pts.levels.size(), static_cast<std::size_t>(a_max + 1));
  for (long A = 0; A <= a_max; ++A) {
    const auto& level = pts.levels[A];
    EXPECT_EQ(*level.key, 2 * A);
    EXPECT_NEAR(level.level, A / std::sqrt(2.0), 1e-12 * (1 + A));
    long expect_witnesses = 2 * static_cast<long>(std::floor(A / std::sqrt(2.0))) + 1;
    EXPECT_EQ(static_cast<long>(level.witnesses.size()), expect_witnesses) << A;
    for (const auto& p : level.points) EXPECT_NEAR(p[0] * p[0] + p[1] * p[1], A / std::sqrt(2.0), 1e-12 * (1 + A));
  }
  EXPECT_EQ(pts.levels[0].points.size(), 1u);
}

TEST(Ellipsoid, TotallyPositiveCMatchesSqrtPoints) {
  auto K = make_quadratic_field(8);
  FieldElement eps = K->from_int(1) + K->generator() * Rational(1, 2);
  FieldElement c = eps * invert(sqrt_d(K));
  ASSERT_TRUE(is_totally_positive(c));
  auto O = FractionalIdeal::unit(K);
  auto ell = ellipsoid_points(c, O, 12.0);
  auto sph = sqrt_points(inverse_different(K), 12);
  auto sorted = [](std::vector<std::vector<double>> v) {
    for (auto& p : v)
      for (auto& x : p) x = std::round(x * 1e9) / 1e9;
    std::sort(v.begin(), v.end());
    return v;
  };
  EXPECT_EQ(sorted(ell.all_points()), sorted(sph.all_points()));
}

TEST(Ellipsoid, HeckeSquareChecked) {
  auto K = make_quadratic_field(8);
  auto O = FractionalIdeal::unit(K);
  try {
    ellipsoid_points(K->one(), O, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not_hecke_square");
  }
}

TEST(Ellipsoid, CubicEllipsoids) {
  auto K = make_monogenic_field(parse_polynomial("1,0,-4,-1"));
  FieldElement alpha = K->generator();
  FieldElement c = invert(alpha * alpha * Rational(3) - K->from_int(4));
  auto pts = ellipsoid_points(c, FractionalIdeal::unit(K), 6.0);
  EXPECT_GT(pts.size(), 1u);
  for (const auto& level : pts.levels)
    for (std::size_t p = 0; p < level.points.size(); ++p) {
      const auto& w = level.witnesses[level.witness_of_point[p]];
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(level.points[p][j] * level.points[p][j], std::fabs(c.embed(j)) * w.embed(j), 1e-12 * (1 + level.level));
      EXPECT_LE(level.level, 6.0 * (1 + 1e-12));
    }
}

TEST(Count, RatioApproachesOne) {
  auto K = make_quadratic_field(17);
  auto rows = count_vs_asymptotic(inverse_different(K), {0, 1, 50, 200});
  EXPECT_EQ(rows[0].count, 1u);
  EXPECT_TRUE(std::isnan(rows[0].ratio));
  EXPECT_EQ(rows[1].count, 16u);
  EXPECT_NEAR(rows[3].asymptotic, 4 * std::sqrt(17.0) * 200, 1e-9);
  EXPECT_GT(rows[3].ratio, 0.9);
  EXPECT_LT(rows[3].ratio, 1.1);
}

TEST(Count, PointCountMatchesSqrtPoints) {
  auto K = make_quadratic_field(17);
  auto dual = inverse_different(K);
  auto pts = sqrt_points(dual, 10);
  for (const auto& level : pts.levels)
    EXPECT_EQ(level.points.size(), count_sphere_points(dual, static_cast<long>(level.level)));
}

TEST(Csv, HeaderAndRows) {
  auto K = make_quadratic_field(17);
  auto pts = sqrt_points(inverse_different(K), 1);
  std::ostringstream os;
  write_points_csv(pts, os);
  std::string s = os.str();
  EXPECT_EQ(s.substr(0, 8), "m,x1,x2\n");
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 18);
}
