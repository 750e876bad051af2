#pragma once

#include "sqrlat/error.hpp"
#include "sqrlat/exact.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sqrlat {

class NumberField;
class FieldElement;
using FieldPtr = std::shared_ptr<const NumberField>;

/* A totally real field K = Q(alpha) with a fixed integral basis w_0 = 1, w_1, ..., w_{n-1}.
   Elements are rational coordinate vectors in that basis. The j-th embedding sends alpha to the
   j-th stored root; quadratic fields built from D list +sqrt(D) first, other fields ascend. */
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  int degree() const { return n_; }
  const ZVec& defining_poly() const { return poly_; }  // ascending, monic
  const QMat& integral_basis() const { return basis_; }  // rows: w_i in the power basis
  const Integer& discriminant() const { return disc_; }
  std::optional<long> quadratic_discriminant() const { return quad_D_; }
  int precision_bits() const { return bits_; }

  double root(int j) const { return static_cast<double>(roots_[j]); }
  const RootInterval& root_interval(int j) const { return intervals_[j]; }
  // rational within 2^-320 of the j-th root
  const Rational& fine_root(int j) const { return fine_roots_[j]; }
  // sigma_j(w_i) in extended precision
  long double embedding_entry(int j, int i) const { return emb_[j][i]; }
  const QMat& trace_gram() const { return gram_; }
  double covolume() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement from_rational(const Rational& q) const;
  FieldElement basis_element(int i) const;
  FieldElement from_coords(QVec coords) const;
  FieldElement from_power_basis(const QVec& coeffs) const;
  // alpha itself; sqrt(D) for quadratic fields built from D
  FieldElement generator() const;

  // structure constants: w_i * w_j = sum_k mult_[i][j][k] w_k
  const QVec& product_coords(int i, int j) const { return mult_[i][j]; }
  const QVec& basis_traces() const { return traces_; }
  const QMat& basis_inverse() const { return basis_inv_; }
  QPoly rational_poly() const;

  std::string describe() const;

  friend FieldPtr make_quadratic_field(long D, int precision_bits);
  friend FieldPtr make_monogenic_field(const ZVec& coeffs_high_first, int precision_bits);

 private:
  NumberField() = default;
  void finish(bool descending);

  int n_ = 0;
  int bits_ = 64;
  ZVec poly_;
  QMat basis_, basis_inv_;
  std::vector<std::vector<QVec>> mult_;
  QVec traces_;
  QMat gram_;
  Integer disc_;
  std::optional<long> quad_D_;
  std::vector<RootInterval> intervals_;
  std::vector<long double> roots_;
  std::vector<Rational> fine_roots_;
  std::vector<std::vector<long double>> emb_;
};

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr field, QVec coords);

  const FieldPtr& field() const { return field_; }
  const QVec& coords() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()); }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const Rational& q) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  bool operator==(const FieldElement& o) const { return c_ == o.c_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  bool is_integral() const;  // lies in O_K
  bool is_rational() const;

  Rational trace() const;
  Rational norm() const;
  QMat multiplication_matrix() const;  // row i = coords of w_i * x
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  QVec power_coords() const;

  double embed(int j) const;
  long double embed_ld(int j) const;
  std::vector<double> embeddings() const;
  int sign(int j) const;  // exact

  std::string str() const;

 private:
  FieldPtr field_;
  QVec c_;
};

inline FieldElement operator*(const Rational& q, const FieldElement& x) { return x * q; }

FieldPtr make_quadratic_field(long D, int precision_bits = default_precision_bits());
FieldPtr make_monogenic_field(const ZVec& coeffs_high_first, int precision_bits = default_precision_bits());
// "1,0,-4,-1" -> x^3 - 4x - 1
ZVec parse_polynomial(const std::string& text);
bool is_fundamental_discriminant(long D);

struct TraceNorm {
  Rational trace, norm;
};
TraceNorm trace_norm(const FieldElement& x);
FieldElement invert(const FieldElement& x);
bool is_totally_positive(const FieldElement& x);
bool is_totally_nonnegative(const FieldElement& x);

FieldElement fundamental_unit(const NumberField& field);

struct UnitSearchOptions {
  bool totally_positive = false;
  int max_power = 64;      // quadratic: exponents of the fundamental unit
  int coord_box = 50;      // degree >= 3: sup-norm bound on coordinates
};
// A unit u != 1 with u = 1 mod m*O_K.
FieldElement search_units(const NumberField& field, long m, const UnitSearchOptions& opt = {});
FieldElement search_units(const NumberField& field, const FieldElement& m,
                          const UnitSearchOptions& opt = {});

}  // namespace sqrlat
