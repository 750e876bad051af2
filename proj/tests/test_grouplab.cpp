#include "sqrlat/grouplab.hpp"
#include "sqrlat/parallel.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sqrlat;

namespace {

// a + b sqrt(2) with rational a, b
struct Q2 {
  Rational a, b;
  Q2 operator+(const Q2& o) const { return {a + o.a, b + o.b}; }
  Q2 operator*(const Q2& o) const { return {a * o.a + 2 * b * o.b, a * o.b + b * o.a}; }
  bool operator==(const Q2& o) const { return a == o.a && b == o.b; }
};
using M2Q = std::array<Q2, 4>;

M2Q mul(const M2Q& x, const M2Q& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

// Q(sqrt 8) stores coordinates in the basis {1, 4 + sqrt 2}
Q2 to_q2(const FieldElement& x) { return {x.coords()[0] + 4 * x.coords()[1], x.coords()[1]}; }

double commutator_distance_closed_form(double x, double y) {
  // [T^x, V^y] = (1 + xy + x^2 y^2, -x^2 y; x y^2, 1 - xy)
  double a = x * y + x * x * y * y, b = x * x * y, c = x * y * y, d = x * y;
  return std::sqrt(a * a + b * b + c * c + d * d);
}

std::array<double, 4> word_matrix_1d(const ProbeBox& box, const std::vector<Syllable>& w) {
  std::array<double, 4> m{1, 0, 0, 1};
  for (const auto& s : w) {
    double t = (s.upper ? box.upper : box.lower)[s.gen][0];
    std::array<double, 4> g = s.upper ? std::array<double, 4>{1, t, 0, 1} : std::array<double, 4>{1, 0, t, 1};
    m = {m[0] * g[0] + m[1] * g[2], m[0] * g[1] + m[1] * g[3], m[2] * g[0] + m[3] * g[2], m[2] * g[1] + m[3] * g[3]};
  }
  return m;
}

}  // namespace

TEST(Relation, SqrtEightFromUnitSearch) {
  auto K = make_quadratic_field(8);
  FieldElement beta = relation_beta(*K);
  FieldElement u = K->one() + K->from_int(5) * beta;
  EXPECT_EQ(abs(u.norm()), 1);
  EXPECT_TRUE(beta.is_integral());
  EXPECT_FALSE(beta.is_zero());
  EXPECT_TRUE(verify_relation(beta));
}

TEST(Relation, IndependentArithmeticAgrees) {
  auto K = make_quadratic_field(8);
  auto factors = relation_factors(relation_beta(*K));
  ASSERT_EQ(factors.size(), 6u);
  M2Q p{Q2{1, 0}, Q2{0, 0}, Q2{0, 0}, Q2{1, 0}};
  for (const auto& f : factors) p = mul(p, {to_q2(f.a()), to_q2(f.b()), to_q2(f.c()), to_q2(f.d())});
  bool plus = p[0] == Q2{1, 0} && p[3] == Q2{1, 0};
  bool minus = p[0] == Q2{-1, 0} && p[3] == Q2{-1, 0};
  EXPECT_TRUE(plus || minus);
  EXPECT_TRUE(p[1] == (Q2{0, 0}));
  EXPECT_TRUE(p[2] == (Q2{0, 0}));
}

TEST(Relation, HoldsInOtherQuadraticFields) {
  for (long D : {5L, 12L, 13L, 17L}) {
    auto K = make_quadratic_field(D);
    EXPECT_TRUE(verify_relation(relation_beta(*K))) << D;
  }
}

TEST(Relation, DegenerateAndInvalid) {
  auto K = make_quadratic_field(8);
  EXPECT_TRUE(verify_relation(K->zero()));
  try {
    verify_relation(K->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "not_unit");
  }
  EXPECT_THROW(verify_relation(K->from_rational(Rational(1, 3))), Error);
}

TEST(Relation, PerturbedFactorBreaksIt) {
  auto K = make_quadratic_field(8);
  auto f = relation_factors(relation_beta(*K));
  f[1] = Mat2K::V(K->from_int(4));
  Mat2K p = Mat2K::identity(K);
  for (const auto& m : f) p = p * m;
  EXPECT_FALSE(p.is_identity());
}

TEST(PropertyI, IdealAndNumericLattices) {
  auto K = make_quadratic_field(17);
  AxisReport ideal = property_I(Lattice::from_ideal(FractionalIdeal::unit(K)));
  EXPECT_TRUE(ideal.holds);
  EXPECT_TRUE(ideal.exact);

  AxisReport z2 = property_I(Lattice::numeric({{1, 0}, {0, 1}}));
  EXPECT_FALSE(z2.holds);
  ASSERT_TRUE(z2.axis_vector.has_value());

  AxisReport irr = property_I(Lattice::numeric({{1, std::sqrt(2.0)}, {std::sqrt(3.0), 1}}), 30);
  EXPECT_TRUE(irr.holds);
  EXPECT_FALSE(irr.exact);
  EXPECT_EQ(irr.searched_radius, 30);
}

TEST(Commutators, IntegerLattice) {
  LatticePair z2{Lattice::numeric({{1, 0}, {0, 1}}), Lattice::numeric({{1, 0}, {0, 1}})};
  auto seq = commutator_sequence(z2, {0, 1}, 100);
  ASSERT_EQ(seq.size(), 100u);
  EXPECT_EQ(seq[0].y, (std::vector<double>{1, 0}));
  for (const auto& s : seq) {
    EXPECT_LE(std::fabs(s.y[1]), 1.0 / s.k);
    EXPECT_LT(s.dist, 1e-2);
  }
}

TEST(Commutators, IrrationalLowerLattice) {
  LatticePair pair{Lattice::numeric({{1, 0}, {0, 1}}), Lattice::numeric({{1, std::sqrt(2.0)}, {0, 1}})};
  const double covol = 1;
  auto seq = commutator_sequence(pair, {0, 1}, 100);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& s = seq[i];
    double k = static_cast<double>(s.k);
    EXPECT_LE(std::fabs(s.y[0]), 1 + k * 4 * covol);
    EXPECT_LE(std::fabs(s.y[1]), 1 / k);
    EXPECT_GT(std::fabs(s.y[0]) + std::fabs(s.y[1]), 0);
    EXPECT_NEAR(s.dist, commutator_distance_closed_form(1.0, s.y[1]), 1e-12);
    EXPECT_LE(s.dist, 2 / k);
    if (i) EXPECT_LE(s.dist, seq[i - 1].dist + 1e-15);
  }
  EXPECT_LT(seq.back().dist, 1e-2);
}

TEST(Commutators, Preconditions) {
  auto K = make_quadratic_field(8);
  Lattice ideal = Lattice::from_ideal(FractionalIdeal::unit(K));
  try {
    commutator_sequence({ideal, ideal}, {1, 0}, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "property_I");
  }
  LatticePair z2{Lattice::numeric({{1, 0}, {0, 1}}), Lattice::numeric({{1, 0}, {0, 1}})};
  EXPECT_THROW(commutator_sequence(z2, {1, 1}, 3), Error);
  EXPECT_THROW(commutator_sequence(z2, {0, 0}, 3), Error);
}

TEST(Probe, DepthOneNeverRelation) {
  LatticePair lam{Lattice::numeric({{2.5}}), Lattice::numeric({{2.5}})};
  auto r = free_product_probe(coordinate_box(lam, 3), 1);
  EXPECT_FALSE(r.relation);
  EXPECT_EQ(r.words_checked, 12u);
}

TEST(Probe, LambdaThreeIsFree) {
  LatticePair lam{Lattice::numeric({{3}}), Lattice::numeric({{3}})};
  ProbeBox box = coordinate_box(lam, 2);
  EXPECT_EQ(box.upper.size(), 4u);
  auto r = free_product_probe(box, 8);
  EXPECT_FALSE(r.relation);
  EXPECT_EQ(r.depth, 8);
  // 8 first syllables, then 4 choices per further syllable
  std::size_t expected = 0;
  for (int L = 1, p = 1; L <= 8; ++L, p *= 4) expected += 8 * static_cast<std::size_t>(p);
  EXPECT_EQ(r.words_checked, expected);
}

TEST(Probe, LambdaOneHasRelation) {
  // T V^-1 T is S up to sign, and S^2 = -1
  LatticePair lam{Lattice::numeric({{1}}), Lattice::numeric({{1}})};
  ProbeBox box = coordinate_box(lam, 2);
  auto r = free_product_probe(box, 6);
  ASSERT_TRUE(r.relation);
  EXPECT_LE(r.depth, 5);
  EXPECT_LT(distance_from_identity(word_matrix_1d(box, *r.relation)), 1e-12);
}

TEST(Probe, SqrtEightRelationBox) {
  auto K = make_quadratic_field(8);
  ProbeBox box = relation_box(relation_beta(*K));
  EXPECT_TRUE(box.exact);
  auto r = free_product_probe(box, 6);
  ASSERT_TRUE(r.relation);
  EXPECT_EQ(r.depth, 6);
  Mat2K p = Mat2K::identity(K);
  for (const auto& s : *r.relation)
    p = p * (s.upper ? Mat2K::T(box.upper_exact[s.gen]) : Mat2K::V(box.lower_exact[s.gen]));
  EXPECT_TRUE(p.is_identity());
  EXPECT_FALSE(word_string(box, *r.relation).empty());
  for (const auto& x : box.upper_exact) EXPECT_TRUE((x * Rational(1, 2)).is_integral());
  for (const auto& y : box.lower_exact) EXPECT_TRUE((y * Rational(1, 2)).is_integral());
}

TEST(Probe, ThreadCountDoesNotChangeResult) {
  auto K = make_quadratic_field(8);
  ProbeBox box = relation_box(relation_beta(*K));
  set_thread_count(1);
  auto a = free_product_probe(box, 6);
  set_thread_count(4);
  auto b = free_product_probe(box, 6);
  set_thread_count(1);
  ASSERT_TRUE(a.relation && b.relation);
  EXPECT_EQ(word_string(box, *a.relation), word_string(box, *b.relation));
  EXPECT_EQ(a.words_checked, b.words_checked);
}

TEST(Probe, CoordinateBoxSize) {
  auto K = make_quadratic_field(8);
  Lattice L = Lattice::from_ideal(FractionalIdeal::principal(K->from_int(2)));
  ProbeBox box = coordinate_box({L, L}, 1);
  EXPECT_TRUE(box.exact);
  EXPECT_EQ(box.upper_exact.size(), 8u);
  EXPECT_EQ(box.lower.size(), 8u);
}
