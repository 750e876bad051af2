#include "cli.hpp"

#include "sqrlat/error.hpp"
#include "sqrlat/gausscomb.hpp"
#include "sqrlat/hilbert.hpp"
#include "sqrlat/idlat.hpp"
#include "sqrlat/theta.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace sqrlat::cli {

namespace {

json field_summary(const NumberField& K) {
  json j;
  j["degree"] = K.degree();
  j["discriminant"] = to_json(K.discriminant());
  json poly = json::array();
  for (const auto& c : K.defining_poly()) poly.push_back(to_json(c));
  j["defining_poly_ascending"] = poly;
  json basis = json::array();
  for (const auto& row : K.integral_basis()) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_json(q));
    basis.push_back(r);
  }
  j["integral_basis_power_coords"] = basis;
  return j;
}

// power-basis coordinates as a polynomial in the generator
std::string power_string(const QVec& coeffs, const std::string& symbol) {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    std::string term = coeffs[i].get_str();
    if (i > 0) term = (coeffs[i] == 1 ? "" : coeffs[i] == -1 ? "-" : term + "*") + symbol;
    if (i > 1) term += "^" + std::to_string(i);
    if (!out.empty()) out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else out = term;
  }
  return out.empty() ? "0" : out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_input, "io", "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorKind::invalid_input, "io", "write to " + path + " failed");
}

// 1/generator by default: 1/sqrt(D) for quadratic fields.
FieldElement ellipsoid_c(const FieldPtr& K, const std::string& coords) {
  return coords.empty() ? invert(K->generator()) : parse_element(K, coords);
}

json residual_block(const VerificationReport& rep) { return json::parse(rep.to_json()); }

}  // namespace

void add_arithmetic_commands(Registry& reg) {
  const Globals& g = reg.globals();

  {
    auto field = std::make_shared<FieldArgs>();
    CLI::App* sub = reg.add("field", "degree, discriminant, integral basis and fundamental unit", [field, &g] {
      FieldPtr K = build_field(*field, g.precision);
      Outcome out;
      out.result = field_summary(*K);
      const std::string symbol = K->quadratic_discriminant()
                                     ? "sqrt(" + std::to_string(*K->quadratic_discriminant()) + ")"
                                     : "alpha";
      json omega = json::array();
      for (const auto& row : K->integral_basis()) omega.push_back(power_string(row, symbol));
      out.result["omega"] = omega;
      out.result["describe"] = K->describe();
      json roots = json::array();
      for (int j = 0; j < K->degree(); ++j) roots.push_back(K->root(j));
      out.result["embeddings_of_generator"] = roots;
      if (K->degree() == 2) {
        FieldElement u = fundamental_unit(*K);
        out.result["fundamental_unit"] = power_string(u.power_coords(), symbol);
        out.result["fundamental_unit_norm"] = to_json(u.norm());
      } else {
        out.result["fundamental_unit"] = nullptr;
      }
      return out;
    });
    field->attach(sub);
  }

  {
    struct Args {
      FieldArgs field;
      long m_max = 50;
      std::string out = "-";
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("points", "points of sqrt(O_K^dual) up to trace m_max as CSV", [a, &g] {
      FieldPtr K = build_field(a->field, g.precision);
      if (a->m_max < 0) throw Error(ErrorKind::invalid_input, "negative_level", "--m-max must be >= 0");
      PointSet ps = sqrt_points(inverse_different(K), a->m_max);
      std::ostringstream csv;
      write_points_csv(ps, csv);
      Outcome out;
      out.csv = csv.str();
      out.out_path = a->out;
      out.result = {{"points", ps.size()}, {"levels", ps.levels.size()}, {"dim", ps.dim}};
      return out;
    });
    a->field.attach(sub);
    option(sub, "--m-max", a->m_max, "largest trace", kTruncation);
    option(sub, "--out", a->out, "CSV path, - for standard output", kOutputs);
  }

  {
    struct Args {
      FieldArgs field;
      std::string c;
      double level_max = 20;
      std::string out = "-";
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("ellipsoid", "points of the ellipsoid set E(c, O_K) as CSV", [a, &g] {
      FieldPtr K = build_field(a->field, g.precision);
      FieldElement c = ellipsoid_c(K, a->c);
      FractionalIdeal unit = FractionalIdeal::unit(K);
      check_hecke_square(c, unit);
      PointSet ps = ellipsoid_points(c, unit, a->level_max);
      std::ostringstream csv;
      write_points_csv(ps, csv);
      Outcome out;
      out.csv = csv.str();
      out.out_path = a->out;
      out.result = {{"c", c.str()}, {"points", ps.size()}, {"levels", ps.levels.size()}, {"dim", ps.dim}};
      return out;
    });
    a->field.attach(sub);
    option(sub, "--c", a->c, "c in integral-basis coordinates, e.g. 0,1/8; default 1/generator", kField);
    option(sub, "--level-max", a->level_max, "largest squared norm", kTruncation);
    option(sub, "--out", a->out, "CSV path, - for standard output", kOutputs);
  }

  {
    struct Args {
      FieldArgs field;
      int eps = 1;
      std::string dims;
      long verify_level = 40;
      double tol = 1e-10;
      double eigen_tol = 1e-13;
      double rho_tol = 1e-3;
      std::string combo_out;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("nonuniq", "sphere eigenfunction vanishing on sqrt(O_K^dual), with verification", [a, &g] {
      FieldPtr K = build_field(a->field, g.precision);
      std::vector<int> dims = a->dims.empty() ? std::vector<int>(K->degree(), 1) : parse_ints(a->dims);
      Construction con = construct_thm1(K, dims, a->eps, std::nullopt, g.seed, a->verify_level);
      RhoResult rho = rho_constant(gamma_matrices(find_unit_datum(K, true)), dims);
      const double rho_err = std::abs(rho.rho_numeric_1e4 - Complex(1, 0));
      Outcome out;
      out.result = residual_block(con.report);
      out.result["terms"] = con.combo.terms().size();
      out.result["max_abs_coeff"] = con.combo.max_abs_coeff();
      out.result["rho"] = to_json(rho.rho);
      out.result["rho_numeric"] = to_json(rho.rho_numeric_1e4);
      json z = json::array();
      for (const auto& w : con.z) z.push_back(to_json(w));
      out.result["z"] = z;
      out.verified = con.report.max_vanishing_residual < a->tol && con.report.eigen_residual < a->eigen_tol &&
                     con.report.det_ok && con.report.beta_integral && con.report.rho.value_or(0) == 1 &&
                     rho_err < a->rho_tol;
      out.result["verified"] = out.verified;
      if (!a->combo_out.empty()) write_text(a->combo_out, to_json(con.combo));
      return out;
    });
    a->field.attach(sub);
    option(sub, "--eps", a->eps, "Fourier eigenvalue, 1 or -1", kParameters)->check(CLI::IsMember({1, -1}));
    option(sub, "--dims", a->dims, "block dimensions d_j, e.g. 1,1; default all 1", kParameters);
    option(sub, "--verify-level", a->verify_level, "check every point with trace <= this", kTruncation);
    option(sub, "--tol", a->tol, "vanishing residual relative to max|coeff|", kTolerances);
    option(sub, "--eigen-tol", a->eigen_tol, "Fourier eigen residual", kTolerances);
    option(sub, "--rho-tol", a->rho_tol, "|rho_numeric - 1|", kTolerances);
    option(sub, "--combo-out", a->combo_out, "write the combination as JSON here", kOutputs);
  }

  {
    struct Args {
      FieldArgs field;
      std::string c;
      int eps = 1;
      double level_max = 20;
      int theta_samples = 20;
      double tol = 1e-8;
      double eigen_tol = 1e-8;
      double theta_tol = 1e-10;
      std::string combo_out;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("nonuniq2", "ellipsoid eigenfunction vanishing on E(c, O_K), with verification", [a, &g] {
      FieldPtr K = build_field(a->field, g.precision);
      ThetaContext ctx(ellipsoid_c(K, a->c), FractionalIdeal::unit(K));
      const double theta_residual = theta_self_test(ctx, a->theta_samples, g.seed);
      Construction con = construct_thm2(ctx, a->eps, std::nullopt, g.seed, a->level_max);
      Outcome out;
      out.result = residual_block(con.report);
      out.result["terms"] = con.combo.terms().size();
      out.result["theta_self_test"] = theta_residual;
      json z = json::array();
      for (const auto& w : con.z) z.push_back(to_json(w));
      out.result["z"] = z;
      out.verified = con.report.max_vanishing_residual < a->tol && con.report.eigen_residual < a->eigen_tol &&
                     con.report.det_ok && con.report.beta_integral && theta_residual < a->theta_tol;
      out.result["verified"] = out.verified;
      if (!a->combo_out.empty()) write_text(a->combo_out, to_json(con.combo));
      return out;
    });
    a->field.attach(sub);
    option(sub, "--c", a->c, "c in integral-basis coordinates; default 1/generator", kField);
    option(sub, "--eps", a->eps, "Fourier eigenvalue, 1 or -1", kParameters)->check(CLI::IsMember({1, -1}));
    option(sub, "--level-max", a->level_max, "check every point with squared norm <= this", kTruncation);
    option(sub, "--theta-samples", a->theta_samples, "random points for the theta self-test", kTruncation);
    option(sub, "--tol", a->tol, "vanishing residual relative to max|coeff|", kTolerances);
    option(sub, "--eigen-tol", a->eigen_tol, "Fourier eigen residual", kTolerances);
    option(sub, "--theta-tol", a->theta_tol, "theta functional-equation residual", kTolerances);
    option(sub, "--combo-out", a->combo_out, "write the combination as JSON here", kOutputs);
  }

  {
    struct Args {
      FieldArgs field;
      std::string m = "50,100,200";
      double band = 0.1;
    };
    auto a = std::make_shared<Args>();
    CLI::App* sub = reg.add("count", "points of sqrt(O_K^dual) on spheres against the leading asymptotic", [a, &g] {
      FieldPtr K = build_field(a->field, g.precision);
      std::vector<long> ms = parse_longs(a->m);
      if (ms.empty()) throw Error(ErrorKind::invalid_input, "no_levels", "--m needs at least one level");
      auto rows = count_vs_asymptotic(inverse_different(K), ms);
      Outcome out;
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"m", r.m},
                       {"count", r.count},
                       {"asymptotic", r.asymptotic},
                       {"ratio", std::isnan(r.ratio) ? json(nullptr) : json(r.ratio)},
                       {"ratio_half_constant", std::isnan(r.ratio) ? json(nullptr) : json(2 * r.ratio)}});
      out.result["rows"] = arr;
      const double last = rows.back().ratio;
      out.verified = !std::isnan(last) && std::fabs(last - 1) <= a->band;
      out.result["verified"] = out.verified;
      return out;
    });
    a->field.attach(sub);
    option(sub, "--m", a->m, "trace levels, comma separated; the last one is checked", kTruncation);
    option(sub, "--band", a->band, "allowed |ratio - 1| at the last level", kTolerances);
  }
}

}  // namespace sqrlat::cli
