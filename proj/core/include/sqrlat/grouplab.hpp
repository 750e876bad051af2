#pragma once

#include "sqrlat/idlat.hpp"
#include "sqrlat/mat2k.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sqrlat {

// A lattice in R^n: either sigma(a) for a fractional ideal (exact) or the row span of a real basis.
class Lattice {
 public:
  static Lattice from_ideal(FractionalIdeal a);
  static Lattice numeric(std::vector<std::vector<double>> rows);

  bool exact() const { return ideal_.has_value(); }
  const std::optional<FractionalIdeal>& ideal() const { return ideal_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  double covolume() const;
  std::vector<double> point(const std::vector<long>& coords) const;
  // exact element for ideal lattices
  FieldElement element(const std::vector<long>& coords) const;

 private:
  std::optional<FractionalIdeal> ideal_;
  std::vector<std::vector<double>> rows_;
};

struct LatticePair {
  Lattice upper, lower;  // T^x with x in upper, V^y with y in lower
};

// Property (I): no nonzero lattice vector has a zero coordinate.
struct AxisReport {
  bool holds = true;
  bool exact = false;                      // decided exactly (ideal lattices)
  std::optional<std::vector<long>> axis_vector;  // coordinates of a vector on a coordinate hyperplane
  double searched_radius = 0;              // numeric lattices: vectors of norm <= this were searched
};
AxisReport property_I(const Lattice& L, double radius = 50);

// beta = (u - 1) / 5 for the first unit u = 1 mod 5 found by the unit search
FieldElement relation_beta(const NumberField& field);
// T^(-2 beta / (1+5beta)), V^2, T^2, V^(2 beta), T^(-2 / (1+5beta)), V^(-2 (1+5beta)); throws "not_unit"
std::vector<Mat2K> relation_factors(const FieldElement& beta);
// The product of relation_factors is +-1, decided exactly.
bool verify_relation(const FieldElement& beta);

struct CommutatorStep {
  long k = 0;
  std::vector<long> coords;  // y_k in the basis of the lower lattice
  std::vector<double> y;
  double dist = 0;           // max over embeddings of the Frobenius distance to +-1
};
// y_k in lower and in the box C_k around the zero coordinate of x0 = sum coords_i * upper_i.
std::vector<CommutatorStep> commutator_sequence(const LatticePair& pair, const std::vector<long>& x0_coords,
                                                long k_max);
// Frobenius distance of the sign-normalized 2x2 matrix from the identity.
double distance_from_identity(const std::array<double, 4>& m);

// Generators for the probe: T-exponents from the upper lattice, V-exponents from the lower one.
struct ProbeBox {
  bool exact = false;
  std::vector<FieldElement> upper_exact, lower_exact;
  std::vector<std::vector<double>> upper, lower;  // embeddings, always filled
};
// All nonzero lattice vectors with basis coordinates in [-bound, bound].
ProbeBox coordinate_box(const LatticePair& pair, long bound);
// The six relation exponents and their negatives, on the lattices 2 O_K.
ProbeBox relation_box(const FieldElement& beta);

struct Syllable {
  bool upper = true;  // T^x if true, V^y otherwise
  int gen = 0;        // index into the matching generator list
};
struct ProbeResult {
  std::optional<std::vector<Syllable>> relation;
  int depth = 0;            // syllable count of the relation, or the deepest level searched
  std::size_t words_checked = 0;
};
// Alternating words g_1 ... g_L, L <= max_depth, ordered by length and then by generator index
// (T generators before V generators); the first word equal to +-1 is returned.
ProbeResult free_product_probe(const ProbeBox& box, int max_depth);
std::string word_string(const ProbeBox& box, const std::vector<Syllable>& word);

}  // namespace sqrlat
