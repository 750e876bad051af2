#include "sqrlat/exact.hpp"

#include "sqrlat/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace sqrlat {

QMat identity_matrix(std::size_t n) {
  QMat m(n, QVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

QMat mat_mul(const QMat& a, const QMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  QMat c(n, QVec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (sgn(a[i][l]) == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

QVec vec_mat(const QVec& v, const QMat& m) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  QVec out(cols, Rational(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += v[i] * m[i][j];
  }
  return out;
}

Rational determinant(QMat m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

QMat inverse(QMat m) {
  std::size_t n = m.size();
  QMat inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::precondition, "singular_matrix", "matrix is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    Rational p = m[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

bool is_integral(const QMat& m) {
  return std::all_of(m.begin(), m.end(), [](const QVec& r) { return is_integral(r); });
}

Integer denominator_lcm(const QMat& m) {
  Integer l = 1;
  for (const auto& row : m)
    for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

ZMat hermite_normal_form(ZMat a) {
  if (a.empty()) return a;
  std::size_t rows = a.size(), cols = a[0].size();
  std::size_t r = 0;
  std::vector<std::size_t> pivot_cols;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end until at most one nonzero remains.
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (std::size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0)
      for (std::size_t j = c; j < cols; ++j) a[r][j] = -a[r][j];
    pivot_cols.push_back(c);
    ++r;
  }
  a.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = pivot_cols[i];
    for (std::size_t k = 0; k < i; ++k) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[k][c].get_mpz_t(), a[i][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a[k][j] -= q * a[i][j];
    }
  }
  return a;
}

KernelSplit integer_kernel(const ZVec& v) {
  // Column operations on v tracked by a unimodular matrix U (rows = transformed unit vectors).
  std::size_t n = v.size();
  ZVec w = v;
  ZMat u(n, ZVec(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  while (true) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] != 0 && (best == n || abs(w[i]) < abs(w[best]))) best = i;
    if (best == n) break;
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best || w[i] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), w[i].get_mpz_t(), w[best].get_mpz_t());
      w[i] -= q * w[best];
      for (std::size_t j = 0; j < n; ++j) u[i][j] -= q * u[best][j];
      if (w[i] != 0) done = false;
    }
    if (done) break;
  }
  KernelSplit out;
  out.gcd = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] == 0) {
      out.kernel.push_back(u[i]);
    } else {
      out.preimage = u[i];
      out.gcd = w[i];
      if (out.gcd < 0) {
        out.gcd = -out.gcd;
        for (auto& x : out.preimage) x = -x;
      }
    }
  }
  return out;
}

void trim(QPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

int degree(const QPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (sgn(p[i]) != 0) return i;
  return -1;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly c(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  trim(c);
  return c;
}

QPoly poly_mod(QPoly a, const QPoly& m) {
  int dm = degree(m);
  trim(a);
  while (degree(a) >= dm) {
    int da = degree(a);
    Rational f = a[da] / m[dm];
    for (int i = 0; i <= dm; ++i) a[da - dm + i] -= f * m[i];
    trim(a);
  }
  return a;
}

QPoly poly_derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

Rational poly_eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

long double poly_eval(const QPoly& p, long double x) {
  long double acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + static_cast<long double>(p[i].get_d());
  return acc;
}

namespace {

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, poly_derivative(p)};
  while (degree(chain.back()) > 0) {
    QPoly r = poly_mod(chain[chain.size() - 2], chain.back());
    if (degree(r) < 0) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    int s = sgn(poly_eval(q, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const QPoly& p) {
  int d = degree(p);
  Rational m = 0;
  for (int i = 0; i < d; ++i) m = std::max(m, Rational(abs(p[i] / p[d])));
  return m + 1;
}

void isolate(const QPoly& p, const std::vector<QPoly>& chain, const Rational& a, const Rational& b,
             int count, std::vector<RootInterval>& out) {
  if (count == 0) return;
  if (count == 1) {
    if (sgn(poly_eval(p, b)) == 0) {
      out.push_back({b, b});
      return;
    }
    if (sgn(poly_eval(p, a)) != 0) {
      out.push_back({a, b});
      return;
    }
  }
  Rational mid = (a + b) / 2;
  int left = sign_changes(chain, a) - sign_changes(chain, mid);
  isolate(p, chain, a, mid, left, out);
  isolate(p, chain, mid, b, count - left, out);
}

}  // namespace

int count_real_roots(const QPoly& p) {
  auto chain = sturm_chain(p);
  Rational m = cauchy_bound(p);
  return sign_changes(chain, -m) - sign_changes(chain, m);
}

std::vector<RootInterval> isolate_real_roots(const QPoly& p) {
  auto chain = sturm_chain(p);
  Rational m = cauchy_bound(p);
  std::vector<RootInterval> out;
  isolate(p, chain, -m, m, sign_changes(chain, -m) - sign_changes(chain, m), out);
  return out;
}

void refine_root(const QPoly& p, RootInterval& iv, const Rational& width) {
  if (iv.lo == iv.hi) return;
  int slo = sgn(poly_eval(p, iv.lo));
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int s = sgn(poly_eval(p, mid));
    if (s == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    if (s == slo)
      iv.lo = mid;
    else
      iv.hi = mid;
  }
}

namespace {

// Enclosure of q over [lo, hi] by interval Horner evaluation.
std::pair<Rational, Rational> enclose(const QPoly& q, const Rational& lo, const Rational& hi) {
  Rational a = 0, b = 0;
  for (std::size_t i = q.size(); i-- > 0;) {
    Rational p1 = a * lo, p2 = a * hi, p3 = b * lo, p4 = b * hi;
    a = std::min({p1, p2, p3, p4}) + q[i];
    b = std::max({p1, p2, p3, p4}) + q[i];
  }
  return {a, b};
}

}  // namespace

int sign_at_root(const QPoly& q, const QPoly& p, RootInterval iv) {
  if (degree(q) < 0) return 0;
  if (iv.lo == iv.hi) return sgn(poly_eval(q, iv.lo));
  for (int iter = 0; iter < 100000; ++iter) {
    auto [a, b] = enclose(q, iv.lo, iv.hi);
    if (sgn(a) > 0) return 1;
    if (sgn(b) < 0) return -1;
    refine_root(p, iv, (iv.hi - iv.lo) / 4);
    if (iv.lo == iv.hi) return sgn(poly_eval(q, iv.lo));
  }
  throw Error(ErrorKind::numerical, "sign_certification", "sign certification did not terminate");
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

long double to_long_double(const Rational& q) {
  double hi = q.get_d();
  Rational rest = q - Rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

}  // namespace sqrlat
