#include "sqrlat/idlat.hpp"

#include "lattice_util.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

namespace sqrlat {

namespace {

QMat canonical_basis(const QMat& gens, int n) {
  Integer den = denominator_lcm(gens);
  ZMat z;
  z.reserve(gens.size());
  for (const auto& row : gens) {
    ZVec zr;
    for (const auto& q : row) {
      Rational s = q * den;
      zr.push_back(s.get_num());
    }
    z.push_back(std::move(zr));
  }
  ZMat h = hermite_normal_form(std::move(z));
  if (static_cast<int>(h.size()) != n)
    throw Error(ErrorKind::invalid_input, "rank_deficient", "ideal generators do not span a full lattice");
  QMat out(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      out[i][j] = Rational(h[i][j], den);
      out[i][j].canonicalize();
    }
  return out;
}

std::vector<long double> embed_coords(const NumberField& K, const QVec& coords) {
  int n = K.degree();
  std::vector<long double> s(n, 0.0L);
  for (int i = 0; i < n; ++i) {
    if (sgn(coords[i]) == 0) continue;
    long double c = static_cast<long double>(coords[i].get_d());
    for (int j = 0; j < n; ++j) s[j] += c * K.embedding_entry(j, i);
  }
  return s;
}

// Calls visit(k) for every integer vector with lo <= k <= hi componentwise, lexicographically.
template <class Visit>
void for_each_box_point(const std::vector<long>& lo, const std::vector<long>& hi, Visit&& visit) {
  std::size_t d = lo.size();
  std::vector<long> k(lo);
  if (d == 0) {
    visit(k);
    return;
  }
  for (std::size_t i = 0; i < d; ++i)
    if (lo[i] > hi[i]) return;
  while (true) {
    visit(k);
    std::size_t i = d;
    while (i-- > 0) {
      if (++k[i] <= hi[i]) break;
      k[i] = lo[i];
      if (i == 0) return;
    }
  }
}

// Integer box containing the preimages of the given vertices under u -> u * M (M square, invertible)
// or under least squares when M has fewer rows than columns.
void vertex_box(const std::vector<std::vector<long double>>& vertices, const std::vector<std::vector<long double>>& m,
                std::vector<long>& lo, std::vector<long>& hi) {
  std::size_t r = m.size(), c = m[0].size();
  Eigen::MatrixXd mt(c, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) mt(j, i) = static_cast<double>(m[i][j]);
  auto solver = mt.completeOrthogonalDecomposition();
  lo.assign(r, 0);
  hi.assign(r, 0);
  bool first = true;
  for (const auto& v : vertices) {
    Eigen::VectorXd y(c);
    for (std::size_t j = 0; j < c; ++j) y(j) = static_cast<double>(v[j]);
    Eigen::VectorXd k = solver.solve(y);
    for (std::size_t i = 0; i < r; ++i) {
      long f = static_cast<long>(std::floor(k(i))) - 1, g = static_cast<long>(std::ceil(k(i))) + 1;
      if (first || f < lo[i]) lo[i] = f;
      if (first || g > hi[i]) hi[i] = g;
    }
    first = false;
  }
}

bool numerically_negative(const std::vector<long double>& s, long double scale) {
  for (long double v : s)
    if (v < -1e-7L * scale) return true;
  return false;
}

}  // namespace

FractionalIdeal::FractionalIdeal(FieldPtr field, const QMat& generators)
    : field_(std::move(field)), basis_(canonical_basis(generators, field_->degree())) {}

FractionalIdeal FractionalIdeal::unit(const FieldPtr& field) {
  return FractionalIdeal(field, identity_matrix(field->degree()));
}

FractionalIdeal FractionalIdeal::principal(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorKind::invalid_input, "zero_ideal", "principal ideal of zero");
  QMat gens;
  const auto& K = x.field();
  for (int i = 0; i < K->degree(); ++i) gens.push_back((K->basis_element(i) * x).coords());
  return FractionalIdeal(K, gens);
}

Rational FractionalIdeal::norm() const { return abs(determinant(basis_)); }

FieldElement FractionalIdeal::basis_element(int i) const { return field_->from_coords(basis_[i]); }

double FractionalIdeal::covolume() const {
  int n = degree();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i) {
    auto s = embed_coords(*field_, basis_[i]);
    for (int j = 0; j < n; ++j) e(i, j) = static_cast<double>(s[j]);
  }
  return std::fabs(e.determinant());
}

bool FractionalIdeal::contains(const FieldElement& x) const {
  return is_integral(vec_mat(x.coords(), inverse(basis_)));
}

bool FractionalIdeal::is_module() const {
  for (int i = 0; i < field_->degree(); ++i)
    for (int r = 0; r < degree(); ++r)
      if (!contains(field_->basis_element(i) * basis_element(r))) return false;
  return true;
}

FractionalIdeal FractionalIdeal::operator*(const FractionalIdeal& o) const {
  QMat gens;
  for (int i = 0; i < degree(); ++i)
    for (int j = 0; j < o.degree(); ++j) gens.push_back((basis_element(i) * o.basis_element(j)).coords());
  return FractionalIdeal(field_, gens);
}

FractionalIdeal FractionalIdeal::operator*(const FieldElement& x) const {
  if (x.is_zero()) throw Error(ErrorKind::invalid_input, "zero_ideal", "scaling an ideal by zero");
  QMat gens;
  for (int i = 0; i < degree(); ++i) gens.push_back((basis_element(i) * x).coords());
  return FractionalIdeal(field_, gens);
}

std::string FractionalIdeal::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < degree(); ++i) os << (i ? ", " : "") << basis_element(i).str();
  os << "]";
  return os.str();
}

FractionalIdeal dual_ideal(const FractionalIdeal& a) {
  const QMat& g = a.field()->trace_gram();
  return FractionalIdeal(a.field(), inverse(mat_mul(g, transpose(a.basis()))));
}

FractionalIdeal inverse_different(const FieldPtr& field) { return dual_ideal(FractionalIdeal::unit(field)); }

FractionalIdeal inverse_ideal(const FractionalIdeal& a) {
  return dual_ideal(a * inverse_different(a.field()));
}

bool membership(const FractionalIdeal& a, const FieldElement& x) { return a.contains(x); }

FieldElement trace_one_element(const FractionalIdeal& a) {
  const auto& K = a.field();
  QMat ginv = inverse(K->trace_gram());
  FieldElement dual_partner = K->from_coords(ginv[0]);
  if (a.contains(dual_partner)) return dual_partner;

  ZVec traces;
  for (int i = 0; i < a.degree(); ++i) {
    Rational t = a.basis_element(i).trace();
    if (t.get_den() != 1)
      throw Error(ErrorKind::precondition, "trace_not_integral", "ideal has non-integral traces");
    traces.push_back(t.get_num());
  }
  KernelSplit split = integer_kernel(traces);
  if (split.gcd != 1)
    throw Error(ErrorKind::precondition, "trace_not_surjective",
                "trace image of the ideal is " + split.gcd.get_str() + "Z");
  FieldElement alpha = K->zero();
  for (int i = 0; i < a.degree(); ++i) alpha += a.basis_element(i) * Rational(split.preimage[i]);
  return alpha;
}

std::vector<FieldElement> enumerate_trace_slice(const FractionalIdeal& a, long m) {
  if (m < 0) return {};
  const auto& K = a.field();
  int n = K->degree();
  FieldElement alpha1 = trace_one_element(a);

  ZVec traces;
  for (int i = 0; i < n; ++i) traces.push_back(a.basis_element(i).trace().get_num());
  ZMat kernel = integer_kernel(traces).kernel;

  std::vector<std::vector<long double>> basis_emb(n);
  for (int i = 0; i < n; ++i) basis_emb[i] = embed_coords(*K, a.basis()[i]);
  detail::lll_reduce(kernel, basis_emb);

  std::vector<FieldElement> steps;
  std::vector<std::vector<long double>> step_emb;
  for (const auto& row : kernel) {
    FieldElement t = K->zero();
    for (int i = 0; i < n; ++i)
      if (sgn(row[i]) != 0) t += a.basis_element(i) * Rational(row[i]);
    steps.push_back(t);
    step_emb.push_back(embed_coords(*K, t.coords()));
  }
  FieldElement base = alpha1 * Rational(m);
  auto base_emb = embed_coords(*K, base.coords());

  std::vector<long> lo, hi;
  if (n == 1) {
    lo.clear();
    hi.clear();
  } else {
    std::vector<std::vector<long double>> vertices;
    for (int j = 0; j < n; ++j) {
      std::vector<long double> v(n);
      for (int t = 0; t < n; ++t) v[t] = (t == j ? static_cast<long double>(m) : 0.0L) - base_emb[t];
      vertices.push_back(v);
    }
    vertex_box(vertices, step_emb, lo, hi);
  }

  std::vector<FieldElement> out;
  long double scale = 1.0L + static_cast<long double>(m);
  for_each_box_point(lo, hi, [&](const std::vector<long>& k) {
    std::vector<long double> s(base_emb);
    for (std::size_t i = 0; i < k.size(); ++i)
      for (int j = 0; j < n; ++j) s[j] += static_cast<long double>(k[i]) * step_emb[i][j];
    if (numerically_negative(s, scale)) return;
    FieldElement alpha = base;
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] != 0) alpha += steps[i] * Rational(k[i]);
    if (is_totally_nonnegative(alpha)) out.push_back(std::move(alpha));
  });
  return out;
}

std::size_t PointSet::size() const {
  std::size_t s = 0;
  for (const auto& l : levels) s += l.points.size();
  return s;
}

std::vector<std::vector<double>> PointSet::all_points() const {
  std::vector<std::vector<double>> out;
  for (const auto& l : levels) out.insert(out.end(), l.points.begin(), l.points.end());
  return out;
}

std::vector<std::vector<double>> sign_expand(const std::vector<double>& squares) {
  std::vector<std::vector<double>> out{{}};
  for (double s : squares) {
    double r = std::sqrt(std::max(0.0, s));
    std::vector<std::vector<double>> next;
    for (const auto& p : out) {
      auto q = p;
      q.push_back(r);
      next.push_back(q);
      if (s != 0.0) {
        q.back() = -r;
        next.push_back(std::move(q));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

void add_witness(PointLevel& level, const FieldElement& alpha, const std::vector<double>& squares) {
  int idx = static_cast<int>(level.witnesses.size());
  level.witnesses.push_back(alpha);
  for (auto& p : sign_expand(squares)) {
    level.points.push_back(std::move(p));
    level.witness_of_point.push_back(idx);
  }
}

std::vector<double> exact_zero_squares(const FieldElement& alpha, std::vector<double> squares) {
  if (alpha.is_zero()) std::fill(squares.begin(), squares.end(), 0.0);
  return squares;
}

}  // namespace

PointSet sqrt_points(const FractionalIdeal& a, long m_max) {
  PointSet ps;
  ps.kind = PointKind::sphere;
  ps.dim = a.degree();
  ps.level_bound = static_cast<double>(m_max);
  ps.weights.assign(ps.dim, 1.0L);
  for (long m = 0; m <= m_max; ++m) {
    auto slice = enumerate_trace_slice(a, m);
    if (slice.empty()) continue;
    PointLevel level;
    level.level = static_cast<double>(m);
    level.key = Rational(m);
    for (const auto& alpha : slice) add_witness(level, alpha, exact_zero_squares(alpha, alpha.embeddings()));
    ps.levels.push_back(std::move(level));
  }
  return ps;
}

void check_hecke_square(const FieldElement& c, const FractionalIdeal& a) {
  if (c.is_zero() || FractionalIdeal::principal(c) * a * a != inverse_different(a.field()))
    throw Error(ErrorKind::precondition, "not_hecke_square", "c * a^2 is not the inverse different");
}

PointSet ellipsoid_points(const FieldElement& c, const FractionalIdeal& a, double level_max) {
  check_hecke_square(c, a);
  const auto& K = a.field();
  int n = K->degree();
  FractionalIdeal a2 = a * a;
  std::vector<long double> weight(n);
  for (int j = 0; j < n; ++j) weight[j] = std::fabs(c.embed_ld(j));
  bool equal_weights = (c * c).is_rational();

  std::vector<std::vector<long double>> basis_emb(n);
  for (int i = 0; i < n; ++i) basis_emb[i] = embed_coords(*K, a2.basis()[i]);
  std::vector<std::vector<long double>> vertices{std::vector<long double>(n, 0.0L)};
  for (int j = 0; j < n; ++j) {
    std::vector<long double> v(n, 0.0L);
    v[j] = static_cast<long double>(level_max) / weight[j];
    vertices.push_back(v);
  }
  std::vector<long> lo, hi;
  vertex_box(vertices, basis_emb, lo, hi);

  struct Found {
    long double level;
    Rational trace;
    FieldElement alpha;
    std::vector<double> squares;
  };
  std::vector<Found> found;
  long double scale = 1.0L + static_cast<long double>(level_max);
  for_each_box_point(lo, hi, [&](const std::vector<long>& u) {
    std::vector<long double> s(n, 0.0L);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s[j] += static_cast<long double>(u[i]) * basis_emb[i][j];
    for (int j = 0; j < n; ++j) s[j] *= weight[j];
    if (numerically_negative(s, scale)) return;
    long double lvl = 0;
    for (long double v : s) lvl += v;
    if (lvl > static_cast<long double>(level_max) * (1 + 1e-9L) + 1e-12L) return;
    FieldElement alpha = K->zero();
    for (int i = 0; i < n; ++i)
      if (u[i] != 0) alpha += a2.basis_element(i) * Rational(u[i]);
    if (!is_totally_nonnegative(alpha)) return;
    std::vector<double> sq(n);
    long double exact_level = 0;
    for (int j = 0; j < n; ++j) {
      long double v = alpha.is_zero() ? 0.0L : weight[j] * alpha.embed_ld(j);
      sq[j] = static_cast<double>(v);
      exact_level += v;
    }
    if (exact_level > static_cast<long double>(level_max) * (1 + 1e-12L)) return;
    found.push_back({exact_level, alpha.trace(), alpha, sq});
  });

  std::stable_sort(found.begin(), found.end(), [&](const Found& x, const Found& y) {
    if (equal_weights) return x.trace < y.trace;
    return x.level < y.level;
  });
  PointSet ps;
  ps.kind = PointKind::ellipsoid;
  ps.dim = n;
  ps.level_bound = level_max;
  ps.weights = weight;
  for (const auto& f : found) {
    bool same = false;
    if (!ps.levels.empty()) {
      const auto& last = ps.levels.back();
      same = equal_weights ? (*last.key == f.trace)
                           : std::fabs(last.level - static_cast<double>(f.level)) <= 1e-12 * (1 + last.level);
    }
    if (!same) {
      PointLevel level;
      level.level = static_cast<double>(f.level);
      if (equal_weights) level.key = f.trace;
      ps.levels.push_back(std::move(level));
    }
    add_witness(ps.levels.back(), f.alpha, f.squares);
  }
  return ps;
}

double count_leading_term(const NumberField& field, long m) {
  int n = field.degree();
  double fact = std::tgamma(static_cast<double>(n));
  return std::pow(2.0, n) * std::sqrt(std::fabs(field.discriminant().get_d())) *
         std::pow(static_cast<double>(m), n - 1) / fact;
}

std::size_t count_sphere_points(const FractionalIdeal& a, long m) {
  std::size_t count = 0;
  for (const auto& alpha : enumerate_trace_slice(a, m)) {
    if (alpha.is_zero()) {
      ++count;
      continue;
    }
    std::size_t pts = 1;
    for (int j = 0; j < alpha.degree(); ++j)
      if (alpha.sign(j) != 0) pts *= 2;
    count += pts;
  }
  return count;
}

std::vector<CountRow> count_vs_asymptotic(const FractionalIdeal& a, const std::vector<long>& ms) {
  std::vector<CountRow> rows;
  for (long m : ms) {
    CountRow r;
    r.m = m;
    r.count = count_sphere_points(a, m);
    r.asymptotic = count_leading_term(*a.field(), m);
    r.ratio = r.asymptotic > 0 ? static_cast<double>(r.count) / r.asymptotic : std::nan("");
    rows.push_back(r);
  }
  return rows;
}

void write_points_csv(const PointSet& points, std::ostream& out) {
  out << "m";
  for (int j = 0; j < points.dim; ++j) out << ",x" << (j + 1);
  out << "\n";
  out << std::setprecision(17);
  for (const auto& level : points.levels) {
    std::string key = level.key && points.kind == PointKind::sphere ? level.key->get_str() : "";
    for (const auto& p : level.points) {
      if (key.empty())
        out << level.level;
      else
        out << key;
      for (double x : p) out << "," << x;
      out << "\n";
    }
  }
}

}  // namespace sqrlat
