#include "sqrlat/grouplab.hpp"

#include "sqrlat/parallel.hpp"

#include "lattice_util.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <sstream>

namespace sqrlat {

namespace {

using M2 = std::array<double, 4>;

M2 mul(const M2& x, const M2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

M2 upper_m(double x) { return {1, x, 0, 1}; }
M2 lower_m(double y) { return {1, 0, y, 1}; }

double max_entry(const M2& m) {
  return std::max({std::fabs(m[0]), std::fabs(m[1]), std::fabs(m[2]), std::fabs(m[3])});
}

}  // namespace

Lattice Lattice::from_ideal(FractionalIdeal a) {
  Lattice L;
  const int n = a.degree();
  L.rows_.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    FieldElement e = a.basis_element(i);
    for (int j = 0; j < n; ++j) L.rows_[i][j] = e.embed(j);
  }
  L.ideal_ = std::move(a);
  return L;
}

Lattice Lattice::numeric(std::vector<std::vector<double>> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::invalid_input, "bad_shape", "lattice basis is empty");
  for (const auto& r : rows)
    if (r.size() != n) throw Error(ErrorKind::invalid_input, "bad_shape", "lattice basis must be square");
  Lattice L;
  L.rows_ = std::move(rows);
  if (!(L.covolume() > 0)) throw Error(ErrorKind::invalid_input, "singular_basis", "lattice basis is singular");
  return L;
}

double Lattice::covolume() const {
  const int n = dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows_[i][j];
  return std::fabs(m.determinant());
}

std::vector<double> Lattice::point(const std::vector<long>& coords) const {
  std::vector<double> v(dim(), 0.0);
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) v[j] += static_cast<double>(coords[i]) * rows_[i][j];
  return v;
}

FieldElement Lattice::element(const std::vector<long>& coords) const {
  if (!ideal_) throw Error(ErrorKind::invalid_input, "not_exact", "numeric lattices have no exact elements");
  FieldElement x = ideal_->field()->zero();
  for (int i = 0; i < dim(); ++i) x += ideal_->basis_element(i) * Rational(coords[i]);
  return x;
}

AxisReport property_I(const Lattice& L, double radius) {
  AxisReport rep;
  if (L.exact()) {
    // sigma_j(x) = 0 forces x = 0 in a field
    rep.exact = true;
    return rep;
  }
  rep.searched_radius = radius;
  double best = INFINITY;
  detail::fincke_pohst(L.rows(), radius * radius, [&](const std::vector<long>& u, double q) {
    if (q == 0 || q >= best) return;
    auto v = L.point(u);
    double scale = std::sqrt(q);
    for (double c : v)
      if (std::fabs(c) <= 1e-12 * std::max(1.0, scale)) {
        best = q;
        rep.axis_vector = u;
        rep.holds = false;
        return;
      }
  });
  return rep;
}

FieldElement relation_beta(const NumberField& field) {
  FieldElement u = search_units(field, 5);
  return (u - field.one()) * Rational(1, 5);
}

std::vector<Mat2K> relation_factors(const FieldElement& beta) {
  const auto& K = beta.field();
  FieldElement u = K->one() + K->from_int(5) * beta;
  if (u.is_zero() || !u.is_integral() || !u.inverse().is_integral())
    throw Error(ErrorKind::precondition, "not_unit", "1 + 5 beta is not a unit of O_K");
  FieldElement ui = u.inverse(), two = K->from_int(2);
  return {Mat2K::T(-two * beta * ui), Mat2K::V(two),           Mat2K::T(two),
          Mat2K::V(two * beta),       Mat2K::T(-two * ui),     Mat2K::V(-two * u)};
}

bool verify_relation(const FieldElement& beta) {
  auto f = relation_factors(beta);
  Mat2K p = Mat2K::identity(beta.field());
  for (const auto& m : f) p = p * m;
  return p.is_identity();
}

double distance_from_identity(const std::array<double, 4>& m) {
  auto frob = [&](double s) {
    return std::sqrt((m[0] - s) * (m[0] - s) + m[1] * m[1] + m[2] * m[2] + (m[3] - s) * (m[3] - s));
  };
  return std::min(frob(1), frob(-1));
}

std::vector<CommutatorStep> commutator_sequence(const LatticePair& pair, const std::vector<long>& x0_coords,
                                                long k_max) {
  if (pair.upper.exact())
    throw Error(ErrorKind::precondition, "property_I", "property (I) holds, no axis vector in an ideal lattice");
  const int n = pair.upper.dim();
  if (pair.lower.dim() != n || static_cast<int>(x0_coords.size()) != n)
    throw Error(ErrorKind::invalid_input, "bad_shape", "lattice dimensions and x0 must agree");
  auto x0 = pair.upper.point(x0_coords);
  double norm = 0;
  for (double c : x0) norm = std::max(norm, std::fabs(c));
  if (norm == 0) throw Error(ErrorKind::invalid_input, "zero_vector", "x0 must be nonzero");
  int j0 = -1;
  for (int j = 0; j < n && j0 < 0; ++j)
    if (std::fabs(x0[j]) <= 1e-12 * norm) j0 = j;
  if (j0 < 0) throw Error(ErrorKind::precondition, "no_zero_coordinate", "x0 has no zero coordinate");

  const double covol = pair.lower.covolume();
  std::vector<CommutatorStep> out;
  for (long k = 1; k <= k_max; ++k) {
    std::vector<double> half(n, 1.0 / static_cast<double>(k));
    half[j0] = 1 + std::pow(static_cast<double>(k), n - 1) * std::pow(2.0, n) * covol;
    std::vector<std::vector<double>> scaled = pair.lower.rows();
    for (auto& r : scaled)
      for (int j = 0; j < n; ++j) r[j] /= half[j];

    std::optional<std::vector<long>> best;
    double best_small = INFINITY, best_big = INFINITY;
    // C_k lies in the ball of radius sqrt(n) after scaling each axis to [-1, 1]
    detail::fincke_pohst(scaled, n + 1e-9, [&](const std::vector<long>& u, double q) {
      if (q == 0) return;
      auto t = pair.lower.point(u);
      double small = 0;
      for (int j = 0; j < n; ++j) {
        if (std::fabs(t[j]) > half[j]) return;
        if (j != j0) small = std::max(small, std::fabs(t[j]));
      }
      double big = std::fabs(t[j0]);
      if (small < best_small || (small == best_small && big < best_big)) {
        best = u;
        best_small = small;
        best_big = big;
      }
    });
    if (!best)
      throw Error(ErrorKind::numerical, "minkowski_violation",
                  "no lattice point in C_k for k = " + std::to_string(k) + "; the volume bound guarantees one");
    for (long c : *best)
      if (c != 0) {
        if (c < 0)
          for (auto& v : *best) v = -v;
        break;
      }
    CommutatorStep step;
    step.k = k;
    step.coords = *best;
    step.y = pair.lower.point(*best);
    for (int j = 0; j < n; ++j) {
      M2 c = mul(mul(upper_m(x0[j]), lower_m(step.y[j])), mul(upper_m(-x0[j]), lower_m(-step.y[j])));
      step.dist = std::max(step.dist, distance_from_identity(c));
    }
    out.push_back(std::move(step));
  }
  return out;
}

namespace {

void enumerate_coords(int n, long bound, const std::function<void(const std::vector<long>&)>& f) {
  std::vector<long> u(n, -bound);
  while (true) {
    bool zero = true;
    for (long c : u) zero = zero && c == 0;
    if (!zero) f(u);
    int i = n - 1;
    while (i >= 0 && u[i] == bound) u[i--] = -bound;
    if (i < 0) break;
    ++u[i];
  }
}

void add_exact(std::vector<FieldElement>& exact, std::vector<std::vector<double>>& num, const FieldElement& x) {
  for (const auto& e : exact)
    if (e == x) return;
  exact.push_back(x);
  num.push_back(x.embeddings());
}

}  // namespace

ProbeBox coordinate_box(const LatticePair& pair, long bound) {
  ProbeBox box;
  box.exact = pair.upper.exact() && pair.lower.exact();
  const int n = pair.upper.dim();
  auto fill = [&](const Lattice& L, std::vector<FieldElement>& ex, std::vector<std::vector<double>>& num) {
    enumerate_coords(n, bound, [&](const std::vector<long>& u) {
      if (box.exact) ex.push_back(L.element(u));
      num.push_back(L.point(u));
    });
  };
  fill(pair.upper, box.upper_exact, box.upper);
  fill(pair.lower, box.lower_exact, box.lower);
  return box;
}

ProbeBox relation_box(const FieldElement& beta) {
  auto f = relation_factors(beta);
  ProbeBox box;
  box.exact = true;
  for (int i = 0; i < 6; ++i) {
    bool up = i % 2 == 0;
    const FieldElement& x = up ? f[i].b() : f[i].c();
    auto& ex = up ? box.upper_exact : box.lower_exact;
    auto& num = up ? box.upper : box.lower;
    add_exact(ex, num, x);
  }
  for (int side = 0; side < 2; ++side) {
    auto& ex = side == 0 ? box.upper_exact : box.lower_exact;
    auto& num = side == 0 ? box.upper : box.lower;
    std::size_t m = ex.size();
    for (std::size_t i = 0; i < m; ++i) add_exact(ex, num, -ex[i]);
  }
  return box;
}

namespace {

struct SubtreeResult {
  std::optional<std::vector<Syllable>> relation;
  std::size_t words = 0;
};

// Depth-first over alternating words of exactly `len` syllables starting with `first`.
SubtreeResult search_exact(const std::vector<Mat2K>& T, const std::vector<Mat2K>& V, Syllable first, int len) {
  SubtreeResult res;
  std::vector<Syllable> word{first};
  std::function<bool(const Mat2K&)> rec = [&](const Mat2K& prefix) {
    if (static_cast<int>(word.size()) == len) {
      ++res.words;
      if (prefix.is_identity()) {
        res.relation = word;
        return true;
      }
      return false;
    }
    bool next_upper = !word.back().upper;
    const auto& gens = next_upper ? T : V;
    for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
      word.push_back({next_upper, g});
      if (rec(prefix * gens[g])) return true;
      word.pop_back();
    }
    return false;
  };
  rec(first.upper ? T[first.gen] : V[first.gen]);
  return res;
}

SubtreeResult search_numeric(const ProbeBox& box, Syllable first, int len) {
  SubtreeResult res;
  const std::size_t n = box.upper.empty() ? box.lower.at(0).size() : box.upper[0].size();
  auto gen = [&](Syllable s, std::size_t j) {
    return s.upper ? upper_m(box.upper[s.gen][j]) : lower_m(box.lower[s.gen][j]);
  };
  std::vector<Syllable> word{first};
  std::function<bool(const std::vector<M2>&)> rec = [&](const std::vector<M2>& prefix) {
    if (static_cast<int>(word.size()) == len) {
      ++res.words;
      for (std::size_t j = 0; j < n; ++j)
        if (distance_from_identity(prefix[j]) > 1e-12 * std::max(1.0, max_entry(prefix[j]))) return false;
      res.relation = word;
      return true;
    }
    bool next_upper = !word.back().upper;
    int count = static_cast<int>(next_upper ? box.upper.size() : box.lower.size());
    std::vector<M2> next(n);
    for (int g = 0; g < count; ++g) {
      Syllable s{next_upper, g};
      for (std::size_t j = 0; j < n; ++j) next[j] = mul(prefix[j], gen(s, j));
      word.push_back(s);
      if (rec(next)) return true;
      word.pop_back();
    }
    return false;
  };
  std::vector<M2> start(n);
  for (std::size_t j = 0; j < n; ++j) start[j] = gen(first, j);
  rec(start);
  return res;
}

}  // namespace

ProbeResult free_product_probe(const ProbeBox& box, int max_depth) {
  ProbeResult out;
  std::vector<Mat2K> T, V;
  if (box.exact) {
    for (const auto& x : box.upper_exact) T.push_back(Mat2K::T(x));
    for (const auto& y : box.lower_exact) V.push_back(Mat2K::V(y));
  }
  std::vector<Syllable> firsts;
  for (int g = 0; g < static_cast<int>(box.upper.size()); ++g) firsts.push_back({true, g});
  for (int g = 0; g < static_cast<int>(box.lower.size()); ++g) firsts.push_back({false, g});

  for (int len = 1; len <= max_depth; ++len) {
    std::vector<SubtreeResult> parts(firsts.size());
    parallel_for(firsts.size(), [&](std::size_t i) {
      parts[i] = box.exact ? search_exact(T, V, firsts[i], len) : search_numeric(box, firsts[i], len);
    });
    out.depth = len;
    for (const auto& p : parts) out.words_checked += p.words;
    for (const auto& p : parts)
      if (p.relation) {
        out.relation = p.relation;
        return out;
      }
  }
  return out;
}

std::string word_string(const ProbeBox& box, const std::vector<Syllable>& word) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& s = word[i];
    if (i) os << " ";
    os << (s.upper ? "T^" : "V^");
    if (box.exact) {
      os << (s.upper ? box.upper_exact : box.lower_exact)[s.gen].str();
    } else {
      const auto& v = (s.upper ? box.upper : box.lower)[s.gen];
      os << "(";
      for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
      os << ")";
    }
  }
  return os.str();
}

}  // namespace sqrlat
