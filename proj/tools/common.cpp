#include "cli.hpp"

#include "sqrlat/error.hpp"

#include <sstream>

namespace sqrlat::cli {

CLI::App* Registry::add(const std::string& name, const std::string& description, Runner run) {
  CLI::App* sub = app_.add_subcommand(name, description);
  runners_.emplace_back(sub, std::move(run));
  return sub;
}

const Runner* Registry::runner(const CLI::App* sub) const {
  for (const auto& [s, r] : runners_)
    if (s == sub) return &r;
  return nullptr;
}

void FieldArgs::attach(CLI::App* sub) {
  auto* q = option(sub, "--quadratic", quadratic, "real quadratic field Q(sqrt D)", kField);
  auto* p = option(sub, "--poly", poly, "monogenic field from integer coefficients, highest degree first", kField);
  q->excludes(p);
}

FieldPtr build_field(const FieldArgs& args, int precision) {
  if (args.quadratic != 0) return make_quadratic_field(args.quadratic, precision);
  if (!args.poly.empty()) return make_monogenic_field(parse_polynomial(args.poly), precision);
  throw Error(ErrorKind::invalid_input, "no_field", "give --quadratic D or --poly c_n,...,c_0");
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

template <class T, class Conv>
std::vector<T> parse_list(const std::string& text, Conv conv) {
  std::vector<T> out;
  if (text.empty()) return out;
  for (const auto& item : split(text, ',')) {
    try {
      std::size_t used = 0;
      T v = conv(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::invalid_input, "malformed_list", "cannot parse '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

}  // namespace

std::vector<double> parse_doubles(const std::string& text) {
  return parse_list<double>(text, [](const std::string& s, std::size_t* n) { return std::stod(s, n); });
}

std::vector<long> parse_longs(const std::string& text) {
  return parse_list<long>(text, [](const std::string& s, std::size_t* n) { return std::stol(s, n); });
}

std::vector<int> parse_ints(const std::string& text) {
  return parse_list<int>(text, [](const std::string& s, std::size_t* n) { return std::stoi(s, n); });
}

Complex parse_complex(const std::string& text) {
  auto v = parse_doubles(text);
  if (v.size() != 2) throw Error(ErrorKind::invalid_input, "malformed_complex", "expected re,im but got '" + text + "'");
  return {v[0], v[1]};
}

std::vector<std::vector<double>> parse_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : split(text, ';')) rows.push_back(parse_doubles(row));
  for (const auto& r : rows)
    if (r.size() != rows.size())
      throw Error(ErrorKind::invalid_input, "malformed_basis", "expected a square basis but got '" + text + "'");
  return rows;
}

FieldElement parse_element(const FieldPtr& field, const std::string& coords) {
  QVec c;
  for (const auto& item : split(coords, ',')) {
    Rational q;
    if (item.empty() || q.set_str(item, 10) != 0)
      throw Error(ErrorKind::invalid_input, "malformed_rational", "cannot parse '" + item + "' as a rational");
    if (q.get_den() == 0)
      throw Error(ErrorKind::invalid_input, "malformed_rational", "zero denominator in '" + item + "'");
    q.canonicalize();
    c.push_back(q);
  }
  if (static_cast<int>(c.size()) != field->degree())
    throw Error(ErrorKind::invalid_input, "wrong_degree",
                "element needs " + std::to_string(field->degree()) + " coordinates");
  return field->from_coords(c);
}

json to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json to_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(q.get_num());
  return q.get_str();
}

namespace {

json typed_value(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (!v.is_discarded() && v.is_number()) return v;
  return text;
}

void record(json& config, const CLI::Option* opt) {
  if (opt->get_single_name() == "help" || opt->get_single_name() == "config") return;
  const std::string& group = opt->get_group();
  if (group == kField && opt->count() == 0) return;
  json value;
  if (opt->get_type_size() == 0) {
    value = opt->count() > 0;
  } else if (opt->count() > 0) {
    value = typed_value(opt->results().back());
  } else {
    value = typed_value(opt->get_default_str());
  }
  if (group == kParameters || group.empty()) {
    config[opt->get_single_name()] = value;
  } else {
    config[group][opt->get_single_name()] = value;
  }
}

}  // namespace

json run_config(const CLI::App& app, const CLI::App& sub) {
  json config = json::object();
  config["command"] = sub.get_name();
  for (const auto* opt : app.get_options()) record(config, opt);
  for (const auto* opt : sub.get_options()) record(config, opt);
  return config;
}

std::vector<std::string> replay_arguments(const json& config) {
  if (!config.is_object() || !config.contains("command") || !config["command"].is_string())
    throw Error(ErrorKind::invalid_input, "malformed_config", "a run config needs a string 'command'");
  std::vector<std::string> args{config["command"].get<std::string>()};
  auto emit = [&](const std::string& name, const json& v) {
    if (v.is_boolean()) {
      if (v.get<bool>()) args.push_back("--" + name);
      return;
    }
    if (v.is_string() && v.get<std::string>().empty()) return;
    args.push_back("--" + name);
    args.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  };
  for (const auto& [key, v] : config.items()) {
    if (key == "command") continue;
    if (v.is_object()) {
      for (const auto& [name, inner] : v.items()) emit(name, inner);
    } else {
      emit(key, v);
    }
  }
  return args;
}

}  // namespace sqrlat::cli
