#include "sqrlat/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sqrlat {

namespace {

QPoly to_qpoly(const ZVec& z) {
  QPoly p;
  for (const auto& c : z) p.emplace_back(c);
  trim(p);
  return p;
}

bool squarefree(Integer m) {
  m = abs(m);
  if (m == 0) return false;
  for (Integer p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  return true;
}


}  // namespace

bool is_fundamental_discriminant(long D) {
  if (D <= 1) return false;
  if (D % 4 == 1) return squarefree(Integer(D));
  if (D % 4 != 0) return false;
  long d = D / 4;
  return (d % 4 == 2 || d % 4 == 3) && squarefree(Integer(d));
}

ZVec parse_polynomial(const std::string& text) {
  ZVec coeffs;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    Integer v;
    if (tok.empty() || v.set_str(tok, 10) != 0)
      throw Error(ErrorKind::invalid_input, "bad_polynomial", "cannot parse coefficient '" + tok + "'");
    coeffs.push_back(v);
  }
  if (coeffs.size() < 2)
    throw Error(ErrorKind::invalid_input, "bad_polynomial", "polynomial must have degree >= 1");
  return coeffs;
}

void NumberField::finish(bool descending) {
  n_ = static_cast<int>(basis_.size());
  basis_inv_ = inverse(basis_);
  QPoly P = rational_poly();

  mult_.assign(n_, std::vector<QVec>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      QPoly prod = poly_mod(poly_mul(basis_[i], basis_[j]), P);
      prod.resize(n_, Rational(0));
      mult_[i][j] = vec_mat(prod, basis_inv_);
    }
  traces_.assign(n_, Rational(0));
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) traces_[i] += mult_[i][k][k];
  gram_.assign(n_, QVec(n_, Rational(0)));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) gram_[i][j] += mult_[i][j][k] * traces_[k];
  Rational d = determinant(gram_);
  disc_ = d.get_num();

  intervals_ = isolate_real_roots(P);
  std::sort(intervals_.begin(), intervals_.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  if (descending) std::reverse(intervals_.begin(), intervals_.end());
  Rational width = 1;
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), bits_ + 8);
  Rational fine = 1;
  mpq_div_2exp(fine.get_mpq_t(), fine.get_mpq_t(), 320);
  roots_.clear();
  fine_roots_.clear();
  for (auto& iv : intervals_) {
    refine_root(P, iv, width);
    RootInterval f = iv;
    refine_root(P, f, fine);
    fine_roots_.push_back((f.lo + f.hi) / 2);
    roots_.push_back(to_long_double(fine_roots_.back()));
  }
  emb_.assign(n_, std::vector<long double>(n_));
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < n_; ++i) emb_[j][i] = to_long_double(poly_eval(basis_[i], fine_roots_[j]));
}

QPoly NumberField::rational_poly() const { return to_qpoly(poly_); }

double NumberField::covolume() const {
  // |det| of the n x n embedding matrix, in extended precision
  std::vector<std::vector<long double>> m = emb_;
  long double det = 1;
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    for (int r = c + 1; r < n_; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    std::swap(m[piv], m[c]);
    if (m[c][c] == 0) return 0;
    det *= m[c][c];
    for (int r = c + 1; r < n_; ++r) {
      long double f = m[r][c] / m[c][c];
      for (int k = c; k < n_; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return static_cast<double>(std::fabs(det));
}

FieldElement NumberField::zero() const { return FieldElement(shared_from_this(), QVec(n_, Rational(0))); }
FieldElement NumberField::one() const { return from_int(1); }
FieldElement NumberField::from_int(long v) const { return from_rational(Rational(v)); }
FieldElement NumberField::from_rational(const Rational& q) const {
  QVec c(n_, Rational(0));
  c[0] = q;
  return FieldElement(shared_from_this(), std::move(c));
}
FieldElement NumberField::basis_element(int i) const {
  QVec c(n_, Rational(0));
  c[i] = 1;
  return FieldElement(shared_from_this(), std::move(c));
}
FieldElement NumberField::from_coords(QVec coords) const {
  if (static_cast<int>(coords.size()) != n_)
    throw Error(ErrorKind::invalid_input, "bad_coords", "coordinate vector has wrong length");
  return FieldElement(shared_from_this(), std::move(coords));
}
FieldElement NumberField::from_power_basis(const QVec& coeffs) const {
  QVec p = coeffs;
  p.resize(n_, Rational(0));
  return FieldElement(shared_from_this(), vec_mat(p, basis_inv_));
}
FieldElement NumberField::generator() const {
  QVec p(n_, Rational(0));
  if (n_ > 1) p[1] = 1;
  else p[0] = -poly_[0];
  return from_power_basis(p);
}

std::string NumberField::describe() const {
  std::ostringstream os;
  if (quad_D_) {
    os << "Q(sqrt(" << *quad_D_ << "))";
  } else {
    os << "Q[x]/(";
    for (int i = n_; i >= 0; --i) os << poly_[i].get_str() << (i ? "," : "");
    os << ")";
  }
  return os.str();
}

FieldPtr make_quadratic_field(long D, int precision_bits) {
  if (!is_fundamental_discriminant(D))
    throw Error(ErrorKind::invalid_input, "non_fundamental_discriminant",
                "D = " + std::to_string(D) + " is not a positive fundamental discriminant");
  std::shared_ptr<NumberField> f(new NumberField());
  f->bits_ = precision_bits;
  f->poly_ = {Integer(-D), Integer(0), Integer(1)};
  f->basis_ = {{Rational(1), Rational(0)}, {Rational(Integer(D), Integer(2)), Rational(1, 2)}};
  for (auto& row : f->basis_)
    for (auto& q : row) q.canonicalize();
  f->quad_D_ = D;
  f->finish(true);
  return f;
}

FieldPtr make_monogenic_field(const ZVec& high_first, int precision_bits) {
  if (high_first.size() < 2 || high_first[0] != 1)
    throw Error(ErrorKind::invalid_input, "not_monic", "polynomial must be monic of degree >= 1");
  ZVec asc(high_first.rbegin(), high_first.rend());
  const int n = static_cast<int>(asc.size()) - 1;
  QPoly P = to_qpoly(asc);

  if (count_real_roots(P) != n)
    throw Error(ErrorKind::precondition, "complex_roots", "polynomial does not have n distinct real roots");

  // A monic integer factor of degree k has the elementary symmetric functions of k roots as
  // coefficients; test every subset numerically, then confirm by exact division.
  auto ivs = isolate_real_roots(P);
  std::vector<double> roots;
  for (auto iv : ivs) {
    refine_root(P, iv, Rational(Integer(1), Integer(1) << 50));
    roots.push_back(Rational((iv.lo + iv.hi) / 2).get_d());
  }
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    int k = __builtin_popcount(mask);
    if (2 * k > n) continue;
    std::vector<double> fac{1.0};
    for (int i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      std::vector<double> next(fac.size() + 1, 0.0);
      for (std::size_t t = 0; t < fac.size(); ++t) {
        next[t + 1] += fac[t];
        next[t] -= roots[i] * fac[t];
      }
      fac = next;
    }
    QPoly cand;
    bool near_int = true;
    for (double c : fac) {
      double r = std::round(c);
      if (std::fabs(c - r) > 1e-6 * (1 + std::fabs(c))) near_int = false;
      cand.emplace_back(static_cast<long>(r));
    }
    if (near_int && degree(poly_mod(P, cand)) < 0)
      throw Error(ErrorKind::precondition, "reducible_polynomial", "polynomial is reducible over Q");
  }

  std::shared_ptr<NumberField> f(new NumberField());
  f->bits_ = precision_bits;
  f->poly_ = asc;
  f->basis_ = identity_matrix(n);
  f->finish(false);
  if (!squarefree(f->disc_))
    throw Error(ErrorKind::precondition, "nonsquarefree_discriminant",
                "disc(P) = " + f->disc_.get_str() + " is not squarefree");
  return f;
}

// ---- FieldElement -------------------------------------------------------

FieldElement::FieldElement(FieldPtr field, QVec coords) : field_(std::move(field)), c_(std::move(coords)) {}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  QVec c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  QVec c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator-() const {
  QVec c = c_;
  for (auto& q : c) q = -q;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const Rational& q) const {
  QVec c = c_;
  for (auto& v : c) v *= q;
  return FieldElement(field_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  const int n = degree();
  QVec out(n, Rational(0));
  Rational t;
  for (int i = 0; i < n; ++i) {
    if (sgn(c_[i]) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (sgn(o.c_[j]) == 0) continue;
      t = c_[i] * o.c_[j];
      const QVec& s = field_->product_coords(i, j);
      for (int k = 0; k < n; ++k)
        if (sgn(s[k]) != 0) out[k] += t * s[k];
    }
  }
  return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

bool FieldElement::is_one() const { return is_rational() && c_[0] == 1; }

bool FieldElement::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool FieldElement::is_integral() const { return sqrlat::is_integral(c_); }

QMat FieldElement::multiplication_matrix() const {
  const int n = degree();
  QMat m(n);
  for (int i = 0; i < n; ++i) m[i] = (field_->basis_element(i) * *this).c_;
  return m;
}

Rational FieldElement::trace() const {
  Rational t = 0;
  const QVec& tr = field_->basis_traces();
  for (std::size_t i = 0; i < c_.size(); ++i) t += c_[i] * tr[i];
  return t;
}

Rational FieldElement::norm() const { return determinant(multiplication_matrix()); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::invalid_input, "division_by_zero", "inverse of zero");
  QMat inv = sqrlat::inverse(multiplication_matrix());
  // y * M_x = coords(1) = e_0, so y = row 0 of M_x^{-1}
  return FieldElement(field_, inv[0]);
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement result = field_->one(), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

QVec FieldElement::power_coords() const { return vec_mat(c_, field_->integral_basis()); }

long double FieldElement::embed_ld(int j) const {
  long double s = 0, mag = 0;
  bool wide = false;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    long double t = to_long_double(c_[i]) * field_->embedding_entry(j, i);
    s += t;
    mag += std::fabs(t);
    wide = wide || mpz_sizeinbase(c_[i].get_num_mpz_t(), 2) > 60 || mpz_sizeinbase(c_[i].get_den_mpz_t(), 2) > 60;
  }
  if (!wide && std::fabs(s) >= 1e-3L * mag) return s;
  // cancellation: evaluate exactly at a 320-bit rational root approximation
  return to_long_double(poly_eval(power_coords(), field_->fine_root(j)));
}

double FieldElement::embed(int j) const { return static_cast<double>(embed_ld(j)); }

std::vector<double> FieldElement::embeddings() const {
  std::vector<double> v(c_.size());
  for (std::size_t j = 0; j < c_.size(); ++j) v[j] = embed(static_cast<int>(j));
  return v;
}

int FieldElement::sign(int j) const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(c_[0]);
  // floating filter: accepted only when the value exceeds its rounding error bound by a wide margin
  long double v = 0, mag = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    long double t = static_cast<long double>(c_[i].get_d()) * field_->embedding_entry(j, i);
    v += t;
    mag += std::fabs(t);
  }
  if (std::isfinite(mag) && std::fabs(v) > 1e-9L * mag) return v > 0 ? 1 : -1;
  QPoly q = power_coords();
  trim(q);
  return sign_at_root(q, field_->rational_poly(), field_->root_interval(j));
}

std::string FieldElement::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

TraceNorm trace_norm(const FieldElement& x) { return {x.trace(), x.norm()}; }

FieldElement invert(const FieldElement& x) { return x.inverse(); }

bool is_totally_positive(const FieldElement& x) {
  for (int j = 0; j < x.degree(); ++j)
    if (x.sign(j) <= 0) return false;
  return true;
}

bool is_totally_nonnegative(const FieldElement& x) {
  if (x.is_zero()) return true;
  for (int j = 0; j < x.degree(); ++j)
    if (x.sign(j) < 0) return false;
  return true;
}

FieldElement fundamental_unit(const NumberField& field) {
  auto D = field.quadratic_discriminant();
  if (field.degree() != 2 || !D)
    throw Error(ErrorKind::invalid_input, "not_quadratic", "fundamental_unit needs a real quadratic field");
  // Continued fraction of x0 = (P0 + sqrt(D))/Q0, the standard generator of O_K shifted by an integer.
  const Integer d(*D);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), d.get_mpz_t());
  const Integer P0 = *D % 2, Q0 = 2;
  Integer P = P0, Q = Q0;
  Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  for (int iter = 0; iter < 100000; ++iter) {
    Integer a;
    if (Q > 0) {
      mpz_fdiv_q(a.get_mpz_t(), Integer(P + s).get_mpz_t(), Q.get_mpz_t());
    } else {
      Integer aq = -Q;
      mpz_fdiv_q(a.get_mpz_t(), Integer(P + s).get_mpz_t(), aq.get_mpz_t());
      a = -(a + 1);
    }
    Integer p = a * p_prev + p_prev2, q = a * q_prev + q_prev2;
    p_prev2 = p_prev; p_prev = p;
    q_prev2 = q_prev; q_prev = q;
    Integer t = p * Q0 - q * P0;
    Integer nrm_num = t * t - q * q * d;  // Nr(p - q x0) * Q0^2
    if (nrm_num == Q0 * Q0 || nrm_num == -Q0 * Q0) {
      // eps = p - q * conj(x0) = t/Q0 + (q/Q0) sqrt(D)
      Rational c0(t, Q0), c1(q, Q0);
      c0.canonicalize();
      c1.canonicalize();
      return field.from_power_basis({c0, c1});
    }
    Integer Pn = a * Q - P;
    Integer Qn = (d - Pn * Pn) / Q;
    P = Pn;
    Q = Qn;
  }
  throw Error(ErrorKind::budget, "unit_search_budget", "continued fraction did not reach a unit");
}

namespace {

double log_height(const FieldElement& u) {
  double h = 0;
  for (double v : u.embeddings()) h = std::max(h, std::fabs(std::log(std::fabs(v))));
  return h;
}

bool unit_congruent(const FieldElement& u, const FieldElement& m_inv, bool positive) {
  if (u.is_one()) return false;
  if (!((u - u.field()->one()) * m_inv).is_integral()) return false;
  return !positive || is_totally_positive(u);
}

}  // namespace

FieldElement search_units(const NumberField& field, const FieldElement& m, const UnitSearchOptions& opt) {
  if (field.degree() < 2)
    throw Error(ErrorKind::invalid_input, "degree_too_small", "unit search needs degree >= 2");
  if (m.is_zero()) throw Error(ErrorKind::invalid_input, "zero_modulus", "modulus must be nonzero");
  const FieldElement m_inv = m.inverse();
  if (field.degree() == 2) {
    FieldElement eps = fundamental_unit(field), u = eps;
    for (int k = 1; k <= opt.max_power; ++k, u = u * eps)
      if (unit_congruent(u, m_inv, opt.totally_positive)) return u;
    throw Error(ErrorKind::budget, "unit_search_budget",
                "no unit = 1 mod m among the first " + std::to_string(opt.max_power) + " powers");
  }

  // Degree >= 3: norm +-1 elements in a coordinate box, then powers of the smallest ones.
  const int n = field.degree(), B = opt.coord_box;
  std::vector<std::vector<double>> E(n, std::vector<double>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) E[j][i] = static_cast<double>(field.embedding_entry(j, i));
  std::vector<FieldElement> units;
  std::vector<long> x(n, -B);
  while (true) {
    double nr = 1;
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += x[i] * E[j][i];
      nr *= s;
    }
    if (std::fabs(std::fabs(nr) - 1) < 1e-6) {
      QVec c(n);
      for (int i = 0; i < n; ++i) c[i] = x[i];
      FieldElement u = field.from_coords(c);
      if (abs(u.norm()) == 1) units.push_back(u);
    }
    int i = 0;
    while (i < n && x[i] == B) x[i++] = -B;
    if (i == n) break;
    ++x[i];
  }
  std::sort(units.begin(), units.end(),
            [](const FieldElement& a, const FieldElement& b) { return log_height(a) < log_height(b); });
  std::optional<FieldElement> best;
  auto consider = [&](const FieldElement& u) {
    if (unit_congruent(u, m_inv, opt.totally_positive) && (!best || log_height(u) < log_height(*best)))
      best = u;
  };
  for (const auto& u : units) consider(u);
  if (!best) {
    std::size_t limit = std::min<std::size_t>(units.size(), 24);
    for (std::size_t t = 0; t < limit; ++t) {
      if (units[t].is_one() || (-units[t]).is_one()) continue;
      FieldElement p = units[t];
      for (int k = 2; k <= opt.max_power; ++k) {
        p = p * units[t];
        if (log_height(p) > 60) break;
        consider(p);
      }
    }
  }
  if (!best)
    throw Error(ErrorKind::budget, "unit_search_budget", "no unit = 1 mod m within the search box");
  return *best;
}

FieldElement search_units(const NumberField& field, long m, const UnitSearchOptions& opt) {
  return search_units(field, field.from_int(m), opt);
}

}  // namespace sqrlat
