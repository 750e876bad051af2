#pragma once

#include "sqrlat/numfield.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sqrlat {

// A fractional ideal, stored as a canonical Z-basis in integral-basis coordinates.
class FractionalIdeal {
 public:
  FractionalIdeal() = default;
  // Z-span of the given rows (any number, full rank required).
  FractionalIdeal(FieldPtr field, const QMat& generators);

  static FractionalIdeal unit(const FieldPtr& field);
  static FractionalIdeal principal(const FieldElement& x);

  const FieldPtr& field() const { return field_; }
  const QMat& basis() const { return basis_; }
  int degree() const { return static_cast<int>(basis_.size()); }
  Rational norm() const;
  FieldElement basis_element(int i) const;
  double covolume() const;

  bool contains(const FieldElement& x) const;
  bool is_module() const;  // O_K * a subset of a
  bool operator==(const FractionalIdeal& o) const { return basis_ == o.basis_; }
  bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

  FractionalIdeal operator*(const FractionalIdeal& o) const;
  FractionalIdeal operator*(const FieldElement& x) const;

  std::string str() const;

 private:
  FieldPtr field_;
  QMat basis_;
};

FractionalIdeal dual_ideal(const FractionalIdeal& a);
FractionalIdeal inverse_ideal(const FractionalIdeal& a);
FractionalIdeal inverse_different(const FieldPtr& field);  // dual of O_K
bool membership(const FractionalIdeal& a, const FieldElement& x);

// alpha in a with Tr(alpha) = 1; throws if the trace image of a is a proper subgroup of Z.
FieldElement trace_one_element(const FractionalIdeal& a);

// All totally nonnegative alpha in a with Tr(alpha) = m, in a deterministic order.
std::vector<FieldElement> enumerate_trace_slice(const FractionalIdeal& a, long m);

enum class PointKind { sphere, ellipsoid };

struct PointLevel {
  double level = 0;                  // sum of squared coordinates
  std::optional<Rational> key;       // exact level key: m for spheres, Tr(alpha) for equal weights
  std::vector<FieldElement> witnesses;
  std::vector<std::vector<double>> points;
  std::vector<int> witness_of_point;
};

struct PointSet {
  PointKind kind = PointKind::sphere;
  int dim = 0;
  double level_bound = 0;
  std::vector<PointLevel> levels;  // ascending by level
  std::vector<long double> weights;  // squared coordinates of a witness point are weights_j * sigma_j(alpha)

  std::size_t size() const;
  std::vector<std::vector<double>> all_points() const;
};

// Signed square roots: every (+-sqrt(s_1), ..., +-sqrt(s_n)), zeros expanded once.
std::vector<std::vector<double>> sign_expand(const std::vector<double>& squares);

PointSet sqrt_points(const FractionalIdeal& a, long m_max);

// Throws precondition "not_hecke_square" unless c * a^2 equals the inverse different.
void check_hecke_square(const FieldElement& c, const FractionalIdeal& a);
PointSet ellipsoid_points(const FieldElement& c, const FractionalIdeal& a, double level_max);

struct CountRow {
  long m;
  std::size_t count;
  double asymptotic;
  double ratio;  // NaN when the leading term vanishes
};
// Leading term 2^n sqrt|disc| m^(n-1) / (n-1)!.
double count_leading_term(const NumberField& field, long m);
std::vector<CountRow> count_vs_asymptotic(const FractionalIdeal& a, const std::vector<long>& ms);
std::size_t count_sphere_points(const FractionalIdeal& a, long m);

void write_points_csv(const PointSet& points, std::ostream& out);

}  // namespace sqrlat
