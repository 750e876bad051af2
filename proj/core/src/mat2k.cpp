#include "sqrlat/mat2k.hpp"

#include <sstream>

namespace sqrlat {

Mat2K::Mat2K(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (!det().is_one()) throw Error(ErrorKind::precondition, "det_not_one", "matrix determinant is not 1: " + str());
}

Mat2K Mat2K::identity(const FieldPtr& K) { return Mat2K(K->one(), K->zero(), K->zero(), K->one()); }
Mat2K Mat2K::S(const FieldPtr& K) { return Mat2K(K->zero(), -K->one(), K->one(), K->zero()); }

Mat2K Mat2K::T(const FieldElement& beta) {
  const auto& K = beta.field();
  return Mat2K(K->one(), beta, K->zero(), K->one());
}

Mat2K Mat2K::V(const FieldElement& beta) {
  const auto& K = beta.field();
  return Mat2K(K->one(), K->zero(), beta, K->one());
}

Mat2K Mat2K::M(const FieldElement& unit) {
  const auto& K = unit.field();
  return Mat2K(unit, K->zero(), K->zero(), unit.inverse());
}

Mat2K Mat2K::operator*(const Mat2K& o) const {
  Mat2K r;
  r.e_ = {a() * o.a() + b() * o.c(), a() * o.b() + b() * o.d(), c() * o.a() + d() * o.c(), c() * o.b() + d() * o.d()};
  return r;
}

Mat2K Mat2K::inverse() const {
  Mat2K r;
  r.e_ = {d(), -b(), -c(), a()};
  return r;
}

Mat2K Mat2K::pow(long e) const {
  Mat2K base = e < 0 ? inverse() : *this;
  Mat2K r = identity(field());
  for (unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e); k; k >>= 1) {
    if (k & 1) r = r * base;
    base = base * base;
  }
  return r;
}

FieldElement Mat2K::det() const { return a() * d() - b() * c(); }

bool Mat2K::is_integral() const {
  for (const auto& x : e_)
    if (!x.is_integral()) return false;
  return true;
}

bool Mat2K::is_identity() const {
  return b().is_zero() && c().is_zero() && a() == d() && a().is_rational() && abs(a().coords()[0]) == 1;
}

Mat2K Mat2K::normalized() const {
  for (const auto& x : e_)
    for (const auto& q : x.coords()) {
      int s = sgn(q);
      if (s > 0) return *this;
      if (s < 0) {
        Mat2K r;
        r.e_ = {-a(), -b(), -c(), -d()};
        return r;
      }
    }
  return *this;
}

bool Mat2K::operator==(const Mat2K& o) const {
  Mat2K x = normalized(), y = o.normalized();
  for (int i = 0; i < 4; ++i)
    if (x.e_[i] != y.e_[i]) return false;
  return true;
}

std::array<double, 4> Mat2K::embed(int j) const { return {a().embed(j), b().embed(j), c().embed(j), d().embed(j)}; }

Complex mobius(double a, double b, double c, double d, Complex z) {
  Complex den = c * z + d;
  Complex w = (a * z + b) / den;
  return {w.real(), z.imag() / std::norm(den)};
}

Complex Mat2K::act(int j, Complex z) const {
  auto m = embed(j);
  return mobius(m[0], m[1], m[2], m[3], z);
}

std::vector<std::complex<long double>> Mat2K::act_precise(const std::vector<Complex>& z) const {
  // Re(gz) |cz+d|^2 = ac|z|^2 + (ad+bc)x + bd,  |cz+d|^2 = c^2|z|^2 + 2cd x + d^2,  Im(gz) = y / |cz+d|^2
  FieldElement ac = a() * c(), mid = a() * d() + b() * c(), bd = b() * d();
  FieldElement cc = c() * c(), cd2 = c() * d() * Rational(2), dd = d() * d();
  std::vector<std::complex<long double>> w(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    Rational x(z[j].real()), y(z[j].imag());
    Rational r2 = x * x + y * y;
    FieldElement num = ac * r2 + mid * x + bd;
    FieldElement den = cc * r2 + cd2 * x + dd;
    int jj = static_cast<int>(j);
    long double dv = den.embed_ld(jj);
    w[j] = {num.embed_ld(jj) / dv, static_cast<long double>(z[j].imag()) / dv};
  }
  return w;
}

std::vector<Complex> Mat2K::act(const std::vector<Complex>& z) const {
  std::vector<Complex> w(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) w[j] = act(static_cast<int>(j), z[j]);
  return w;
}

std::string Mat2K::str() const {
  std::ostringstream os;
  os << "(" << a().str() << " " << b().str() << "; " << c().str() << " " << d().str() << ")";
  return os.str();
}

}  // namespace sqrlat
