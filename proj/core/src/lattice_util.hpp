#pragma once

#include "sqrlat/exact.hpp"

#include <functional>
#include <vector>

namespace sqrlat::detail {

using RealRows = std::vector<std::vector<long double>>;

// LLL reduction (delta = 3/4) of integer combinations of emb_basis rows, by Euclidean norm.
void lll_reduce(ZMat& rows, const RealRows& emb_basis);

// Unimodular transform U (integer rows) with U * basis LLL-reduced.
std::vector<std::vector<long>> lll_transform(const std::vector<std::vector<double>>& basis);

// LLL-reduced Cholesky data for repeated short-vector enumeration over one basis.
class Enumerator {
 public:
  explicit Enumerator(const std::vector<std::vector<double>>& basis);
  // squared Gram-Schmidt norms of the reduced basis
  const std::vector<double>& gs_norms() const { return diag_; }
  void enumerate(double radius_sq, const std::function<void(const std::vector<long>&, double)>& visit) const;

 private:
  int n_ = 0;
  std::vector<std::vector<long>> U_;
  std::vector<double> diag_;
  std::vector<std::vector<double>> mu_;
};

// Calls visit(u, q) for every integer vector u with q = |u * basis|^2 <= radius_sq.
// The basis is square and nonsingular. Visiting order is deterministic.
void fincke_pohst(const std::vector<std::vector<double>>& basis, double radius_sq,
                  const std::function<void(const std::vector<long>&, double)>& visit);

}  // namespace sqrlat::detail
