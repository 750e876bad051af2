#pragma once

#include "sqrlat/branch.hpp"
#include "sqrlat/numfield.hpp"

#include <array>
#include <string>
#include <vector>

namespace sqrlat {

// Projective 2x2 matrix (a b; c d) over a number field, with determinant 1.
class Mat2K {
 public:
  Mat2K() = default;
  Mat2K(FieldElement a, FieldElement b, FieldElement c, FieldElement d);  // throws unless det = 1

  static Mat2K identity(const FieldPtr& K);
  static Mat2K S(const FieldPtr& K);
  static Mat2K T(const FieldElement& beta);
  static Mat2K V(const FieldElement& beta);  // (1 0; beta 1)
  static Mat2K M(const FieldElement& unit);  // diag(u, 1/u)

  const FieldElement& a() const { return e_[0]; }
  const FieldElement& b() const { return e_[1]; }
  const FieldElement& c() const { return e_[2]; }
  const FieldElement& d() const { return e_[3]; }
  const FieldPtr& field() const { return e_[0].field(); }

  Mat2K operator*(const Mat2K& o) const;
  Mat2K inverse() const;
  Mat2K pow(long e) const;
  FieldElement det() const;
  bool is_integral() const;
  bool is_identity() const;  // projectively
  // sign-normalized: the first nonzero rational coordinate of (a, b, c, d) is positive
  Mat2K normalized() const;
  bool operator==(const Mat2K& o) const;  // projective equality
  bool operator!=(const Mat2K& o) const { return !(*this == o); }

  std::array<double, 4> embed(int j) const;
  Complex act(int j, Complex z) const;
  // Real part and height evaluated from exact field elements, so cancellation in cz + d costs nothing.
  std::vector<std::complex<long double>> act_precise(const std::vector<Complex>& z) const;
  std::vector<Complex> act(const std::vector<Complex>& z) const;

  std::string str() const;

 private:
  std::array<FieldElement, 4> e_;
};

// Moebius action of a real matrix (a b; c d) on z, with Im computed as Im z / |cz + d|^2.
Complex mobius(double a, double b, double c, double d, Complex z);

}  // namespace sqrlat
