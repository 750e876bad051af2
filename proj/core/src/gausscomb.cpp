#include "sqrlat/gausscomb.hpp"

#include "sqrlat/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sqrlat {

namespace {

double param_scale(const std::vector<Complex>& z) {
  double s = 0;
  for (const auto& v : z) s = std::max(s, std::abs(v));
  return s;
}

bool param_less(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j].real() != b[j].real()) return a[j].real() < b[j].real();
    if (a[j].imag() != b[j].imag()) return a[j].imag() < b[j].imag();
  }
  return false;
}

}  // namespace

GaussianCombo::GaussianCombo(std::vector<int> dims, std::vector<int> delta)
    : dims_(std::move(dims)), delta_(std::move(delta)) {
  if (dims_.empty() || dims_.size() != delta_.size())
    throw Error(ErrorKind::invalid_input, "bad_shape", "dims and delta must be nonempty and of equal length");
  for (int d : dims_)
    if (d <= 0) throw Error(ErrorKind::invalid_input, "bad_shape", "block dimensions must be positive");
  for (int s : delta_)
    if (s != 1 && s != -1) throw Error(ErrorKind::invalid_input, "bad_shape", "signs must be +1 or -1");
}

GaussianCombo GaussianCombo::single(std::vector<int> dims, std::vector<int> delta, Complex coeff,
                                    std::vector<Complex> z) {
  GaussianCombo c(std::move(dims), std::move(delta));
  c.add_term(coeff, std::move(z));
  return c;
}

double GaussianCombo::max_abs_coeff() const {
  double m = 0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

ComplexLD GaussianTerm::param(std::size_t j) const {
  ComplexLD v(z[j].real(), z[j].imag());
  if (!z_lo.empty()) v += ComplexLD(z_lo[j].real(), z_lo[j].imag());
  return v;
}

void GaussianCombo::add_term(Complex coeff, std::vector<Complex> z) {
  if (z.size() != dims_.size()) throw Error(ErrorKind::invalid_input, "bad_shape", "parameter length mismatch");
  for (std::size_t j = 0; j < z.size(); ++j)
    if (!(delta_[j] * z[j].imag() > 0))
      throw Error(ErrorKind::invalid_input, "outside_half_plane", "Gaussian parameter violates Im(delta z) > 0");
  terms_.push_back({coeff, std::move(z), {}});
}

void GaussianCombo::add_term_extended(Complex coeff, const std::vector<ComplexLD>& z) {
  std::vector<Complex> hi(z.size()), lo(z.size());
  bool any = false;
  for (std::size_t j = 0; j < z.size(); ++j) {
    double re = static_cast<double>(z[j].real()), im = static_cast<double>(z[j].imag());
    hi[j] = Complex(re, im);
    lo[j] = Complex(static_cast<double>(z[j].real() - re), static_cast<double>(z[j].imag() - im));
    any = any || lo[j] != Complex(0);
  }
  add_term(coeff, std::move(hi));
  if (any) terms_.back().z_lo = std::move(lo);
}

Complex GaussianCombo::eval(const std::vector<double>& radii) const {
  std::vector<long double> sq(radii.size());
  for (std::size_t j = 0; j < radii.size(); ++j) sq[j] = static_cast<long double>(radii[j]) * radii[j];
  return eval_squared(sq);
}

Complex GaussianCombo::eval_squared(const std::vector<long double>& squared) const {
  using CL = std::complex<long double>;
  CL sum = 0;
  for (const auto& t : terms_) {
    long double re = 0, im = 0;
    for (std::size_t j = 0; j < t.z.size(); ++j) {
      long double r2 = squared[j] * delta_[j];
      ComplexLD p = t.param(j);
      re += r2 * p.real();
      im += r2 * p.imag();
    }
    // exp(pi i (re + i im)), phase reduced mod 2 before scaling by pi
    long double phase = std::numbers::pi_v<long double> * std::remainder(re, 2.0L);
    long double mag = std::exp(-std::numbers::pi_v<long double> * im);
    sum += CL(t.coeff.real(), t.coeff.imag()) * CL(mag * std::cos(phase), mag * std::sin(phase));
  }
  return Complex(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

void GaussianCombo::check_compatible(const GaussianCombo& o) const {
  if (dims_ != o.dims_ || delta_ != o.delta_)
    throw Error(ErrorKind::invalid_input, "bad_shape", "combining Gaussian combos of different shapes");
}

GaussianCombo GaussianCombo::operator+(const GaussianCombo& o) const {
  check_compatible(o);
  GaussianCombo r = *this;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  return r;
}

GaussianCombo GaussianCombo::operator-(const GaussianCombo& o) const { return *this + o * Complex(-1); }

GaussianCombo GaussianCombo::operator*(Complex s) const {
  GaussianCombo r = *this;
  for (auto& t : r.terms_) t.coeff *= s;
  return r;
}

GaussianCombo fourier(const GaussianCombo& combo) {
  GaussianCombo out(combo.dims(), combo.delta());
  for (const auto& t : combo.terms()) {
    Complex c = t.coeff;
    std::vector<ComplexLD> w(t.z.size());
    for (std::size_t j = 0; j < t.z.size(); ++j) {
      double dj = combo.delta()[j];
      c *= pow_over_i(dj * t.z[j], -0.5 * combo.dims()[j]);
      ComplexLD p = t.param(j);
      long double q = std::norm(p);
      w[j] = ComplexLD(-p.real() / q, p.imag() / q);
    }
    out.add_term_extended(c, w);
  }
  return out;
}

GaussianCombo simplify(const GaussianCombo& combo, const SimplifyOptions& opt) {
  std::vector<GaussianTerm> terms = combo.terms();
  std::stable_sort(terms.begin(), terms.end(),
                   [](const GaussianTerm& a, const GaussianTerm& b) { return param_less(a.z, b.z); });
  std::vector<GaussianTerm> merged;
  for (const auto& t : terms) {
    bool done = false;
    for (auto& m : merged) {
      double tol = opt.tau_z * (1 + std::max(param_scale(m.z), param_scale(t.z)));
      bool close = true;
      for (std::size_t j = 0; j < t.z.size() && close; ++j) close = std::abs(m.z[j] - t.z[j]) <= tol;
      if (close) {
        m.coeff += t.coeff;
        done = true;
        break;
      }
    }
    if (!done) merged.push_back(t);
  }
  double cmax = combo.max_abs_coeff();
  GaussianCombo out(combo.dims(), combo.delta());
  for (auto& m : merged) {
    double a = std::abs(m.coeff);
    if (a == 0 || a < opt.tau_c * cmax) continue;
    out.add_term(m.coeff, std::move(m.z));
    out.set_low_parts(out.size() - 1, std::move(m.z_lo));
  }
  return out;
}

double eigen_residual(const GaussianCombo& combo, int eps, double tau_z) {
  double scale = combo.max_abs_coeff();
  if (scale == 0) return 0;
  GaussianCombo diff = fourier(combo) - combo * Complex(eps);
  return simplify(diff, {tau_z, 0.0}).max_abs_coeff() / scale;
}

std::string to_json(const GaussianCombo& combo) {
  nlohmann::json j;
  j["dims"] = combo.dims();
  j["delta"] = combo.delta();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : combo.terms()) {
    nlohmann::json z = nlohmann::json::array();
    for (const auto& v : t.z) z.push_back({v.real(), v.imag()});
    nlohmann::json term = {{"c", {t.coeff.real(), t.coeff.imag()}}, {"z", z}};
    if (!t.z_lo.empty()) {
      nlohmann::json lo = nlohmann::json::array();
      for (const auto& v : t.z_lo) lo.push_back({v.real(), v.imag()});
      term["z_lo"] = lo;
    }
    j["terms"].push_back(term);
  }
  return j.dump();
}

GaussianCombo combo_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    GaussianCombo c(j.at("dims").get<std::vector<int>>(), j.at("delta").get<std::vector<int>>());
    for (const auto& t : j.at("terms")) {
      auto cv = t.at("c").get<std::vector<double>>();
      std::vector<Complex> z;
      for (const auto& v : t.at("z")) {
        auto p = v.get<std::vector<double>>();
        z.emplace_back(p.at(0), p.at(1));
      }
      c.add_term(Complex(cv.at(0), cv.at(1)), std::move(z));
      if (t.contains("z_lo")) {
        std::vector<Complex> lo;
        for (const auto& v : t.at("z_lo")) {
          auto p = v.get<std::vector<double>>();
          lo.emplace_back(p.at(0), p.at(1));
        }
        if (lo.size() != c.dims().size()) throw Error(ErrorKind::invalid_input, "bad_json", "z_lo length mismatch");
        c.set_low_parts(c.size() - 1, std::move(lo));
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::invalid_input, "bad_json", e.what());
  } catch (const std::out_of_range& e) {
    throw Error(ErrorKind::invalid_input, "bad_json", e.what());
  }
}

}  // namespace sqrlat
