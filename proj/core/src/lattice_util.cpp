#include "lattice_util.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace sqrlat::detail {

void lll_reduce(ZMat& rows, const RealRows& emb_basis) {
  std::size_t r = rows.size();
  if (r < 2) return;
  std::size_t dim = emb_basis[0].size();
  auto embed = [&](const ZVec& k) {
    std::vector<long double> v(dim, 0.0L);
    for (std::size_t i = 0; i < k.size(); ++i) {
      long double c = static_cast<long double>(k[i].get_d());
      for (std::size_t j = 0; j < dim; ++j) v[j] += c * emb_basis[i][j];
    }
    return v;
  };
  auto dot = [](const std::vector<long double>& a, const std::vector<long double>& b) {
    long double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
  };
  for (int guard = 0; guard < 10000; ++guard) {
    std::vector<std::vector<long double>> v(r), star(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = embed(rows[i]);
    std::vector<std::vector<long double>> mu(r, std::vector<long double>(r, 0));
    std::vector<long double> bn(r);
    for (std::size_t i = 0; i < r; ++i) {
      star[i] = v[i];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(v[i], star[j]) / bn[j];
        for (std::size_t t = 0; t < dim; ++t) star[i][t] -= mu[i][j] * star[j][t];
      }
      bn[i] = dot(star[i], star[i]);
    }
    bool changed = false;
    for (std::size_t i = 1; i < r && !changed; ++i) {
      for (std::size_t j = i; j-- > 0;) {
        long double q = std::round(mu[i][j]);
        if (q != 0) {
          Integer qi(static_cast<double>(q));
          for (std::size_t t = 0; t < rows[i].size(); ++t) rows[i][t] -= qi * rows[j][t];
          changed = true;
          break;
        }
      }
      if (changed) break;
      if (bn[i] < (0.75L - mu[i][i - 1] * mu[i][i - 1]) * bn[i - 1]) {
        std::swap(rows[i], rows[i - 1]);
        changed = true;
      }
    }
    if (!changed) return;
  }
}

std::vector<std::vector<long>> lll_transform(const std::vector<std::vector<double>>& basis) {
  std::size_t n = basis.size();
  ZMat rows(n, ZVec(n, Integer(0)));
  RealRows emb(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i][i] = 1;
    emb[i].assign(basis[i].begin(), basis[i].end());
  }
  lll_reduce(rows, emb);
  std::vector<std::vector<long>> out(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = rows[i][j].get_si();
  return out;
}

Enumerator::Enumerator(const std::vector<std::vector<double>>& basis)
    : n_(static_cast<int>(basis.size())), U_(lll_transform(basis)) {
  int n = n_;
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int k = 0; k < n; ++k) s += static_cast<double>(U_[i][k]) * basis[k][j];
      b(i, j) = s;
    }
  // Q(u) = u G u^T with G = b b^T = R^T R, R upper triangular
  Eigen::MatrixXd g = b * b.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  Eigen::MatrixXd r = llt.matrixU();
  diag_.resize(n);
  mu_.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    diag_[i] = r(i, i) * r(i, i);
    for (int j = i + 1; j < n; ++j) mu_[i][j] = r(i, j) / r(i, i);
  }
}

void Enumerator::enumerate(double radius_sq,
                           const std::function<void(const std::vector<long>&, double)>& visit) const {
  int n = n_;
  std::vector<long> v(n, 0), out(n);
  std::vector<double> partial(n + 1, 0.0);
  // depth-first from the last coordinate down to the first
  std::function<void(int)> rec = [&](int i) {
    double center = 0;
    for (int j = i + 1; j < n; ++j) center -= mu_[i][j] * static_cast<double>(v[j]);
    double remaining = radius_sq - partial[i + 1];
    if (remaining < 0) return;
    double half = std::sqrt(remaining / diag_[i]);
    long lo = static_cast<long>(std::ceil(center - half - 1e-9));
    long hi = static_cast<long>(std::floor(center + half + 1e-9));
    for (long t = lo; t <= hi; ++t) {
      double d = static_cast<double>(t) - center;
      double q = partial[i + 1] + diag_[i] * d * d;
      if (q > radius_sq * (1 + 1e-12)) continue;
      v[i] = t;
      partial[i] = q;
      if (i == 0) {
        for (int c = 0; c < n; ++c) {
          long s = 0;
          for (int k = 0; k < n; ++k) s += v[k] * U_[k][c];
          out[c] = s;
        }
        visit(out, q);
      } else {
        rec(i - 1);
      }
    }
    v[i] = 0;
  };
  rec(n - 1);
}

void fincke_pohst(const std::vector<std::vector<double>>& basis, double radius_sq,
                  const std::function<void(const std::vector<long>&, double)>& visit) {
  Enumerator(basis).enumerate(radius_sq, visit);
}

}  // namespace sqrlat::detail
