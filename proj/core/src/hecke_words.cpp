#include "sqrlat/hecke.hpp"

#include "sqrlat/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace sqrlat {

bool HeckeWord::valid() const {
  if (syllables.empty()) return false;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (syllables[i].first == 0) return false;
    if (i + 1 < syllables.size() && syllables[i].second == 0) return false;
  }
  return true;
}

bool HeckeWord::in_R() const { return valid() && syllables.back().second == 0; }

bool HeckeWord::in_R_tilde() const { return syllables.empty() || (valid() && syllables.back().second != 0); }

std::string HeckeWord::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    if (i) os << ',';
    os << '(' << syllables[i].first << ',' << syllables[i].second << ')';
  }
  os << ']';
  return os.str();
}

HeckeWord HeckeWord::operator*(const HeckeWord& o) const {
  HeckeWord r = *this;
  r.syllables.insert(r.syllables.end(), o.syllables.begin(), o.syllables.end());
  return r;
}

namespace {

// right multiplication by V^(x) = (1, 0; x, 1) and T^(x) = (1, x; 0, 1)
inline void right_V(Mat2& m, double x) {
  m[0] += x * m[1];
  m[2] += x * m[3];
}
inline void right_T(Mat2& m, double x) {
  m[1] += x * m[0];
  m[3] += x * m[2];
}

inline double norm_cd(const Mat2& m) { return m[2] * m[2] + m[3] * m[3]; }

}  // namespace

Mat2 word_matrix(const HeckeWord& w, double lambda) {
  Mat2 m{1, 0, 0, 1};
  for (auto [e, f] : w.syllables) {
    right_V(m, static_cast<double>(e) * lambda);
    right_T(m, static_cast<double>(f) * lambda);
  }
  return m;
}

Complex mobius(const Mat2& m, Complex z) { return (m[0] * z + m[1]) / (m[2] * z + m[3]); }

int LambdaPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[i] != 0) return i;
  return -1;
}

double LambdaPoly::operator()(double lambda) const {
  double s = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) s = s * lambda + static_cast<double>(*it);
  return s;
}

namespace {

// p += e * lambda * q
void add_shifted(LambdaPoly& p, const LambdaPoly& q, long e) {
  if (p.coeffs.size() < q.coeffs.size() + 1) p.coeffs.resize(q.coeffs.size() + 1, 0);
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) p.coeffs[i + 1] += e * q.coeffs[i];
}

}  // namespace

std::array<LambdaPoly, 4> word_matrix_poly(const HeckeWord& w) {
  std::array<LambdaPoly, 4> m{LambdaPoly{{1}}, LambdaPoly{{0}}, LambdaPoly{{0}}, LambdaPoly{{1}}};
  for (auto [e, f] : w.syllables) {
    add_shifted(m[0], m[1], e);
    add_shifted(m[2], m[3], e);
    add_shifted(m[1], m[0], f);
    add_shifted(m[3], m[2], f);
  }
  return m;
}

namespace {

struct Enumerator {
  const WordEnumConfig& cfg;
  const std::function<void(const HeckeWord&, const Mat2&)>& visit;
  HeckeWord word;

  void run(const Mat2& prefix, int depth) {
    const long B = cfg.max_exponent;
    for (long e = -B; e <= B; ++e) {
      if (e == 0) continue;
      Mat2 mv = prefix;
      right_V(mv, static_cast<double>(e) * cfg.lambda);
      if (norm_cd(mv) > cfg.prune) continue;
      word.syllables.emplace_back(e, 0);
      visit(word, mv);
      for (long f = -B; f <= B; ++f) {
        if (f == 0) continue;
        Mat2 mt = mv;
        right_T(mt, static_cast<double>(f) * cfg.lambda);
        if (norm_cd(mt) > cfg.prune) continue;
        word.syllables.back().second = f;
        visit(word, mt);
        if (depth + 1 < cfg.max_syllables) run(mt, depth + 1);
      }
      word.syllables.pop_back();
    }
  }
};

}  // namespace

void enumerate_words(const WordEnumConfig& cfg, const std::function<void(const HeckeWord&, const Mat2&)>& visit) {
  if (cfg.max_syllables < 1 || cfg.max_exponent < 1) return;
  Enumerator en{cfg, visit, {}};
  en.run(Mat2{1, 0, 0, 1}, 0);
}

std::vector<std::pair<HeckeWord, Mat2>> list_words(const WordEnumConfig& cfg) {
  std::vector<std::pair<HeckeWord, Mat2>> out;
  enumerate_words(cfg, [&](const HeckeWord& w, const Mat2& m) { out.emplace_back(w, m); });
  return out;
}

Complex j_k(const HeckeWord& w, double lambda, Complex z, double k, bool right_S) {
  if (!(z.imag() > 0)) throw Error(ErrorKind::precondition, "domain", "j_k needs Im z > 0");
  using CL = std::complex<long double>;
  const long double lam = lambda;
  auto narrow = [](CL v) { return Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())); };
  Complex J = 1;
  CL u(z.real(), z.imag());
  if (right_S) {
    J *= pow_over_i(z, k);
    u = -1.0L / u;
  }
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    u += static_cast<long double>(it->second) * lam;
    if (it->first != 0) {
      // V^x = S T^-x S
      J *= pow_over_i(narrow(u), k);
      u = -1.0L / u;
      u -= static_cast<long double>(it->first) * lam;
      J *= pow_over_i(narrow(u), k);
      u = -1.0L / u;
    }
  }
  return J;
}

bool LemmaReport::ok() const {
  for (auto v : violations)
    if (v) return false;
  return true;
}

namespace {

struct LemmaWalker {
  const LemmaConfig& cfg;
  LemmaReport& rep;
  std::vector<double> lams;
  std::vector<Complex> points;
  HeckeWord word;
  // per depth: matrices at every lambda and the c, d polynomials
  std::vector<std::vector<Mat2>> mats;
  std::vector<std::array<LambdaPoly, 2>> polys;

  void violate(int item, double lambda, const std::string& detail) {
    static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi", "bound"};
    ++rep.violations[item];
    if (rep.witnesses.size() < 16) rep.witnesses.push_back({names[item], word, lambda, detail});
  }

  void check(const std::vector<Mat2>& ms, const std::array<LambdaPoly, 2>& cd) {
    ++rep.words;
    const bool fzero = word.syllables.back().second == 0;
    const int n = static_cast<int>(word.length());
    for (std::size_t l = 0; l < lams.size(); ++l) {
      const Mat2& m = ms[l];
      double a = std::fabs(m[0]), b = std::fabs(m[1]), c = std::fabs(m[2]), d = std::fabs(m[3]);
      double tol = 1e-12 * std::max({a, b, c, d, 1.0});
      if (fzero && c < d - tol) violate(0, lams[l], "|c| < |d|");
      if (!fzero && d < c - tol) violate(1, lams[l], "|d| < |c|");
      if (c <= tol || d <= tol) violate(2, lams[l], "zero entry");
      if (a > c + tol || b > d + tol) violate(3, lams[l], "|a| > |c| or |b| > |d|");
      if (l > 0) {
        const Mat2& p = ms[l - 1];
        if (c < std::fabs(p[2]) - tol || d < std::fabs(p[3]) - tol) violate(5, lams[l], "|c| or |d| decreased");
      }
    }
    if (cd[0].degree() < 2 * n - 2 || cd[1].degree() < 2 * n - 2) violate(4, 0, "degree below 2n-2");
    if (n <= cfg.bound_max_syllables) {
      for (std::size_t l = 0; l < lams.size(); ++l)
        for (Complex z : points) {
          ++rep.bound_checks;
          Complex Sz = -1.0 / z;
          double lhs = std::max({std::abs(mobius(ms[l], z)), std::abs(mobius(ms[l], Sz)), std::abs(Sz)});
          if (lhs > (1 + 1 / z.imag()) * (1 + 1e-12)) violate(6, lams[l], "bound at z");
        }
    }
  }

  void run(int depth) {
    const long B = cfg.max_exponent;
    const auto& pm = mats[depth];
    const auto& pp = polys[depth];
    std::vector<Mat2> mv(lams.size()), mt(lams.size());
    for (long e = -B; e <= B; ++e) {
      if (e == 0) continue;
      for (std::size_t l = 0; l < lams.size(); ++l) {
        mv[l] = pm[l];
        right_V(mv[l], static_cast<double>(e) * lams[l]);
      }
      std::array<LambdaPoly, 2> cv = pp;
      add_shifted(cv[0], pp[1], e);
      word.syllables.emplace_back(e, 0);
      check(mv, cv);
      for (long f = -B; f <= B; ++f) {
        if (f == 0) continue;
        for (std::size_t l = 0; l < lams.size(); ++l) {
          mt[l] = mv[l];
          right_T(mt[l], static_cast<double>(f) * lams[l]);
        }
        std::array<LambdaPoly, 2> ct = cv;
        add_shifted(ct[1], cv[0], f);
        word.syllables.back().second = f;
        check(mt, ct);
        if (depth + 1 < cfg.max_syllables) {
          mats[depth + 1] = mt;
          polys[depth + 1] = ct;
          run(depth + 1);
        }
      }
      word.syllables.pop_back();
    }
  }
};

}  // namespace

LemmaReport check_word_lemma(const LemmaConfig& cfg) {
  if (cfg.lambdas.empty()) throw Error(ErrorKind::invalid_input, "lambda", "empty lambda grid");
  for (double l : cfg.lambdas)
    if (!(l >= 2)) throw Error(ErrorKind::invalid_input, "lambda", "lambda must be >= 2");
  LemmaReport rep;
  LemmaWalker w{cfg, rep, cfg.lambdas, cfg.bound_points, {}, {}, {}};
  std::sort(w.lams.begin(), w.lams.end());
  if (w.points.empty()) w.points = {{0, 1}, {0.3, 0.2}, {-0.45, 0.05}, {1.7, 2.5}, {-0.9, 0.4}, {0.05, 8}};
  for (Complex z : w.points)
    if (!(z.imag() > 0)) throw Error(ErrorKind::invalid_input, "domain", "bound points need Im z > 0");
  if (cfg.max_syllables < 1 || cfg.max_exponent < 1) return rep;
  w.mats.assign(cfg.max_syllables + 1, std::vector<Mat2>(w.lams.size(), Mat2{1, 0, 0, 1}));
  w.polys.assign(cfg.max_syllables + 1, {LambdaPoly{{0}}, LambdaPoly{{1}}});
  w.run(0);
  return rep;
}

namespace {

using QMat2 = std::array<Rational, 4>;

std::string normalized_key(QMat2 m) {
  for (const auto& x : m) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : m) y = -y;
    break;
  }
  std::string s;
  for (const auto& x : m) {
    s += x.get_str();
    s += ';';
  }
  return s;
}

}  // namespace

FreenessReport freeness_check(int max_syllables, long max_exponent, const Rational& lambda) {
  FreenessReport rep;
  std::unordered_map<std::string, HeckeWord> seen;
  const std::string identity = normalized_key({Rational(1), Rational(0), Rational(0), Rational(1)});
  WordEnumConfig cfg{max_syllables, max_exponent, to_double(lambda)};
  enumerate_words(cfg, [&](const HeckeWord& w, const Mat2&) {
    ++rep.words;
    QMat2 m{Rational(1), Rational(0), Rational(0), Rational(1)};
    for (auto [e, f] : w.syllables) {
      Rational x = lambda * e, t = lambda * f;
      m[0] += x * m[1];
      m[2] += x * m[3];
      m[1] += t * m[0];
      m[3] += t * m[2];
    }
    std::string key = normalized_key(m);
    if (key == identity) {
      rep.identity_hit = true;
      if (!rep.witness) rep.witness = std::make_pair(w, HeckeWord{});
    }
    auto [it, fresh] = seen.emplace(std::move(key), w);
    if (!fresh) {
      ++rep.collisions;
      if (!rep.witness) rep.witness = std::make_pair(it->second, w);
    }
  });
  return rep;
}

PingPongReport ping_pong_certificate(const Rational& lambda, int samples, long max_power) {
  if (lambda < 2) throw Error(ErrorKind::invalid_input, "lambda", "ping-pong needs lambda >= 2");
  if (samples < 1 || max_power < 1) throw Error(ErrorKind::invalid_input, "samples", "samples and max_power must be positive");
  PingPongReport rep;
  const Rational R = 1 / (lambda - 1);
  const Rational bound = (lambda - 1) * (lambda - 1);
  std::vector<std::pair<Rational, Rational>> pts{{-R, Rational(0)}};
  // z = R ((1 - t^2) + 2 t i) / (1 + t^2) covers the circle minus -R as t runs over Q
  for (int j = -4 * samples; j <= 4 * samples; ++j) {
    Rational t(j, samples);
    Rational den = 1 + t * t;
    Rational x = R * (1 - t * t) / den, y = R * 2 * t / den;
    pts.emplace_back(x, y);
    pts.emplace_back(x / 2, y / 3);
  }
  pts.emplace_back(Rational(0), Rational(0));
  bool first = true;
  for (const auto& [x, y] : pts) {
    for (long m = -max_power; m <= max_power; ++m) {
      if (m == 0) continue;
      Rational u = x + lambda * m;
      Rational margin = u * u + y * y - bound;
      ++rep.checks;
      if (first || margin < rep.min_margin) rep.min_margin = margin;
      first = false;
      if (sgn(margin) < 0) rep.holds = false;
    }
  }
  return rep;
}

namespace {

struct RepBuilder {
  double lambda;
  int N;
  long B;
  double X;
  RepresentativeSet& out;
  HeckeWord word;

  void note_boundary(double v) { out.excluded_norm = std::min(out.excluded_norm, v); }

  // prefix has `depth` full syllables, last f != 0 (or is empty)
  void run(const Mat2& prefix, int depth) {
    for (int sign : {-1, 1}) {
      for (long mag = 1;; ++mag) {
        long e = sign * mag;
        Mat2 mv = prefix;
        right_V(mv, static_cast<double>(e) * lambda);
        double nv = norm_cd(mv);
        if (nv > X) break;  // c^2 + d^2 grows with |e| for a fixed sign
        word.syllables.emplace_back(e, 0);
        out.R.push_back({word, mv});
        if (depth + 1 == N && mag == 1) note_boundary(nv);
        if (depth + 1 < N && mag == B + 1) note_boundary(nv);
        for (int fsign : {-1, 1}) {
          for (long fmag = 1;; ++fmag) {
            long f = fsign * fmag;
            Mat2 mt = mv;
            right_T(mt, static_cast<double>(f) * lambda);
            double nt = norm_cd(mt);
            if (nt > X) break;
            word.syllables.back().second = f;
            out.R_tilde.push_back({word, mt});
            if (depth + 1 < N) {
              if (mag <= B && fmag <= B)
                run(mt, depth + 1);
              else if (mag <= B && fmag == B + 1)
                note_boundary(nt);
            }
          }
        }
        word.syllables.back().second = 0;
        word.syllables.pop_back();
      }
    }
  }
};

}  // namespace

RepresentativeSet series_representatives(double lambda, int max_syllables, long max_exponent, double prune) {
  if (!(lambda >= 2)) throw Error(ErrorKind::invalid_input, "lambda", "lambda must be >= 2");
  if (max_syllables < 1 || max_exponent < 1) throw Error(ErrorKind::invalid_input, "truncation", "N and B must be >= 1");
  if (!(prune >= 1)) throw Error(ErrorKind::invalid_input, "prune", "prune threshold must be >= 1");
  RepresentativeSet rs;
  rs.lambda = lambda;
  rs.excluded_norm = prune;
  rs.R_tilde.push_back({HeckeWord{}, Mat2{1, 0, 0, 1}});
  RepBuilder b{lambda, max_syllables, max_exponent, prune, rs, {}};
  b.run(Mat2{1, 0, 0, 1}, 0);
  return rs;
}

}  // namespace sqrlat
