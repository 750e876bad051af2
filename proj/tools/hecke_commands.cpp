#include "cli.hpp"

#include "sqrlat/error.hpp"
#include "sqrlat/hecke.hpp"

#include <cmath>
#include <memory>

namespace sqrlat::cli {

namespace {

struct SeriesArgs {
  double lambda = 2.5;
  int N = 10;
  long B = 8;
  double prune = 1e5;
  double y = 0;
  double quad_tol = 1e-10;

  void attach(CLI::App* sub) {
    option(sub, "--lambda", lambda, "Hecke group parameter, > 2 for the series", kParameters);
    option(sub, "--N", N, "syllables per word", kTruncation);
    option(sub, "--B", B, "bound on inner exponents", kTruncation);
    option(sub, "--prune", prune, "skip words with c^2 + d^2 above this", kTruncation);
    option(sub, "--y", y, "contour height, 0 for k / (pi n_max)", kTruncation);
    option(sub, "--quad-tol", quad_tol, "trapezoid convergence, relative", kTolerances);
  }

  SeriesConfig config(double k) const {
    SeriesConfig c;
    c.k = k;
    c.lambda = lambda;
    c.max_syllables = N;
    c.max_exponent = B;
    c.prune = prune;
    c.y = y;
    c.quad_tol = quad_tol;
    return c;
  }
};

json series_summary(const HeckeSeries& s) {
  return {{"orbits", s.orbits()},
          {"orbits_tilde", s.orbits_tilde()},
          {"excluded_norm", s.representatives().excluded_norm}};
}

// "lo:hi:count", endpoints included
std::vector<double> parse_grid(const std::string& text) {
  std::string commas = text;
  for (char& ch : commas)
    if (ch == ':') ch = ',';
  auto spec = parse_doubles(commas);
  if (spec.size() != 3 || spec[2] < 2 || spec[2] != std::floor(spec[2]))
    throw Error(ErrorKind::invalid_input, "malformed_grid", "expected lo:hi:count with count >= 2, got '" + text + "'");
  const int count = static_cast<int>(spec[2]);
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(spec[0] + (spec[1] - spec[0]) * i / (count - 1));
  return grid;
}

}  // namespace

void add_hecke_commands(Registry& reg) {
  {
    struct Args {
      SeriesArgs series;
      int d = 8;
      long nmax = 40;
      std::string tau = "0,1";
      std::string radii = "0.7,1.3,2.1";
      double tol = 1e-4;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("interp", "radial interpolation residual for a Gaussian", [a] {
      HeckeSeries s(a->series.config(a->d / 2.0));
      auto rep = verify_interpolation(s, parse_complex(a->tau), parse_doubles(a->radii), a->nmax);
      Outcome out;
      out.result = series_summary(s);
      out.result["radii"] = rep.radii;
      out.result["residuals"] = rep.residuals;
      out.result["max_residual"] = rep.max_residual;
      out.result["n_max"] = rep.n_max;
      out.verified = rep.max_residual < a->tol;
      out.result["verified"] = out.verified;
      return out;
    });
    option(sub, "--d", a->d, "dimension, weight k = d/2", kParameters);
    a->series.attach(sub);
    option(sub, "--nmax", a->nmax, "largest coefficient index", kTruncation);
    option(sub, "--tau", a->tau, "Gaussian parameter re,im with im > 0", kParameters);
    option(sub, "--radii", a->radii, "radii |x| to test", kParameters);
    option(sub, "--tol", a->tol, "largest allowed residual", kTolerances);
  }

  {
    struct Args {
      SeriesArgs series;
      double k = 4;
      long n_lo = -1;
      long n_hi = 40;
      std::string r = "1.3";
      std::string method = "quadrature";
      std::string out = "-";
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("coeffs", "Fourier coefficients a_n(r), a~_n(r) as CSV", [a] {
      HeckeSeries s(a->series.config(a->k));
      std::vector<CoefficientTable> tables;
      for (double r : parse_doubles(a->r))
        tables.push_back(a->method == "closed" ? orbit_coefficients(s, a->n_lo, a->n_hi, r)
                                               : coefficients(s, a->n_lo, a->n_hi, r));
      Outcome out;
      out.result = series_summary(s);
      json meta = json::array();
      for (const auto& t : tables) meta.push_back({{"r", t.r}, {"y", t.y}, {"points", t.points}});
      out.result["tables"] = meta;
      out.csv = coefficients_csv(tables);
      out.out_path = a->out;
      return out;
    });
    option(sub, "--k", a->k, "weight, any real > 2", kParameters);
    a->series.attach(sub);
    option(sub, "--n-lo", a->n_lo, "first index", kTruncation);
    option(sub, "--n-hi", a->n_hi, "last index", kTruncation);
    option(sub, "--r", a->r, "radii, comma separated", kParameters);
    option(sub, "--method", a->method, "quadrature or closed (orbit-wise Bessel form)", kParameters)
        ->check(CLI::IsMember({"quadrature", "closed"}));
    option(sub, "--out", a->out, "CSV path, - for standard output", kOutputs);
  }

  {
    struct Args {
      double kappa = 2.25;
      double lambda = 2;
      int N = 16;
      long B = 16;
      double prune = 1e5;
      double stability_tol = 3;
      bool growth = false;
      bool pointwise = false;
      SeriesArgs series;
      double k = 4;
      long n_lo = 8;
      long n_hi = 64;
      std::string r_grid = "0:2:41";
      std::string radii = "3,5,8";
      double slope_tol = 0.3;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("bounds", "fitted constants of the U-sum and coefficient growth bounds", [a] {
      UBoundsConfig uc;
      uc.kappa = a->kappa;
      uc.lambda = a->lambda;
      uc.max_syllables = a->N;
      uc.max_exponent = a->B;
      uc.prune = a->prune;
      UBoundsReport u = U_bounds(uc);
      Outcome out;
      json fitted = json::array();
      for (const auto& [y, C] : u.fitted) fitted.push_back({{"y", y}, {"C", C}});
      out.result["U"] = {{"fitted", fitted},
                         {"stability", u.stability},
                         {"periodicity_residual", u.periodicity_residual},
                         {"orbits", u.orbits},
                         {"orbits_tilde", u.orbits_tilde}};
      out.verified = u.stability < a->stability_tol;

      if (a->growth || a->pointwise) {
        HeckeSeries s(a->series.config(a->k));
        out.result["series"] = series_summary(s);
        if (a->growth) {
          std::vector<double> grid = parse_grid(a->r_grid);
          GrowthFit f = uniform_growth(s, a->n_lo, a->n_hi, grid);
          out.result["growth"] = {{"n", f.n},
                                  {"sup_a", f.sup_a},
                                  {"sup_a_tilde", f.sup_a_tilde},
                                  {"argmax_r", f.argmax_r},
                                  {"slope", f.slope},
                                  {"slope_sum", f.slope_sum},
                                  {"expected_slope", a->k}};
          out.verified = out.verified && std::fabs(f.slope - a->k) <= a->slope_tol;
        }
        if (a->pointwise) {
          PointwiseFit p = pointwise_shape(s, a->n_lo, a->n_hi, parse_doubles(a->radii));
          out.result["pointwise"] = {{"r", p.r}, {"fitted", p.fitted}, {"stability", p.stability}};
          out.verified = out.verified && p.stability < a->stability_tol;
        }
      }
      out.result["verified"] = out.verified;
      return out;
    });
    option(sub, "--kappa", a->kappa, "exponent of the U-sum, >= 9/4", kParameters);
    option(sub, "--u-lambda", a->lambda, "Hecke parameter of the U-sum", kParameters);
    option(sub, "--u-N", a->N, "syllables per word for the U-sum", kTruncation);
    option(sub, "--u-B", a->B, "inner exponent bound for the U-sum", kTruncation);
    option(sub, "--u-prune", a->prune, "norm cutoff for the U-sum", kTruncation);
    option(sub, "--stability-tol", a->stability_tol, "allowed max/min ratio of fitted constants", kTolerances);
    sub->add_flag("--growth", a->growth, "fit the slope of sup_r |a_n|")->group(kParameters);
    sub->add_flag("--pointwise", a->pointwise, "fit the pointwise constant at fixed radii")->group(kParameters);
    a->series.attach(sub);
    option(sub, "--k", a->k, "weight of the series", kParameters);
    option(sub, "--n-lo", a->n_lo, "first index of the fit", kTruncation);
    option(sub, "--n-hi", a->n_hi, "last index of the fit", kTruncation);
    option(sub, "--r-grid", a->r_grid, "lo:hi:count radii for the supremum", kTruncation);
    option(sub, "--radii", a->radii, "radii for the pointwise fit", kParameters);
    option(sub, "--slope-tol", a->slope_tol, "allowed |slope - k|", kTolerances);
  }

  {
    struct Args {
      int N = 5;
      long B = 3;
      std::string lambdas = "2,2.2,3,5";
      int bound_N = 3;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("lemma51", "check the Hecke word inequalities over a finite box", [a] {
      LemmaConfig c;
      c.max_syllables = a->N;
      c.max_exponent = a->B;
      c.lambdas = parse_doubles(a->lambdas);
      c.bound_max_syllables = a->bound_N;
      LemmaReport rep = check_word_lemma(c);
      static const char* items[] = {"i", "ii", "iii", "iv", "v", "vi", "bound"};
      Outcome out;
      out.result["words"] = rep.words;
      out.result["bound_checks"] = rep.bound_checks;
      json v = json::object();
      for (int i = 0; i < 7; ++i) v[items[i]] = rep.violations[i];
      out.result["violations"] = v;
      json w = json::array();
      for (const auto& x : rep.witnesses)
        w.push_back({{"item", x.item}, {"word", x.word.str()}, {"lambda", x.lambda}, {"detail", x.detail}});
      out.result["witnesses"] = w;
      out.verified = rep.ok();
      out.result["verified"] = out.verified;
      return out;
    });
    option(sub, "--N", a->N, "syllables per word", kTruncation);
    option(sub, "--B", a->B, "exponent bound", kTruncation);
    option(sub, "--lambdas", a->lambdas, "lambda grid, at least 2", kParameters);
    option(sub, "--bound-N", a->bound_N, "syllables for the |gz| bound check", kTruncation);
  }
}

}  // namespace sqrlat::cli
