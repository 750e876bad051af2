#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace sqrlat {

using Integer = mpz_class;
using Rational = mpq_class;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;  // row-major, rows are vectors
using ZVec = std::vector<Integer>;
using ZMat = std::vector<ZVec>;

// Polynomials are stored with ascending coefficients: p[i] is the coefficient of t^i.
using QPoly = std::vector<Rational>;

QMat identity_matrix(std::size_t n);
QMat transpose(const QMat& m);
QMat mat_mul(const QMat& a, const QMat& b);
QVec vec_mat(const QVec& v, const QMat& m);
Rational determinant(QMat m);
QMat inverse(QMat m);
bool is_integral(const QVec& v);
bool is_integral(const QMat& m);
Integer denominator_lcm(const QMat& m);

// Row Hermite normal form of the lattice spanned by the rows; zero rows are dropped.
// Pivots are positive and entries above each pivot are reduced into [0, pivot).
ZMat hermite_normal_form(ZMat rows);

// Integer kernel basis of v (as a row functional): rows k with k·v = 0, plus a row u with u·v = gcd.
struct KernelSplit {
  ZMat kernel;
  ZVec preimage;
  Integer gcd;
};
KernelSplit integer_kernel(const ZVec& v);

void trim(QPoly& p);
int degree(const QPoly& p);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_mod(QPoly a, const QPoly& m);
QPoly poly_derivative(const QPoly& p);
Rational poly_eval(const QPoly& p, const Rational& x);
long double poly_eval(const QPoly& p, long double x);

// Sturm-sequence root isolation of a squarefree polynomial over the rationals.
struct RootInterval {
  Rational lo, hi;  // either lo == hi (exact rational root) or P(lo)P(hi) < 0
};
int count_real_roots(const QPoly& p);
std::vector<RootInterval> isolate_real_roots(const QPoly& p);
void refine_root(const QPoly& p, RootInterval& iv, const Rational& width);

// Sign of q at the root of p isolated by iv; refines a local copy until the interval
// enclosure of q excludes zero. q must not vanish at that root unless q is identically zero.
int sign_at_root(const QPoly& q, const QPoly& p, RootInterval iv);

std::string to_string(const Rational& q);
double to_double(const Rational& q);
long double to_long_double(const Rational& q);

}  // namespace sqrlat
