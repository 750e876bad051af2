#pragma once

#include "sqrlat/branch.hpp"
#include "sqrlat/exact.hpp"
#include "sqrlat/numfield.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sqrlat::cli {

using nlohmann::json;

struct Outcome {
  json result = json::object();
  bool verified = true;
  std::optional<std::string> csv;  // written to out_path, "-" for standard output
  std::string out_path = "-";
};

struct Globals {
  int threads = 1;
  std::uint64_t seed = 0;
  int precision = 64;
};

using Runner = std::function<Outcome()>;

class Registry {
 public:
  Registry(CLI::App& app, Globals& globals) : app_(app), globals_(globals) {}

  CLI::App* add(const std::string& name, const std::string& description, Runner run);
  const Globals& globals() const { return globals_; }
  const Runner* runner(const CLI::App* sub) const;

 private:
  CLI::App& app_;
  Globals& globals_;
  std::vector<std::pair<CLI::App*, Runner>> runners_;
};

// Option groups double as RunConfig sections.
inline constexpr const char* kField = "field";
inline constexpr const char* kTolerances = "tolerances";
inline constexpr const char* kTruncation = "truncation";
inline constexpr const char* kOutputs = "outputs";
inline constexpr const char* kParameters = "parameters";

template <class T>
CLI::Option* option(CLI::App* sub, const std::string& flag, T& var, const std::string& help, const char* group) {
  return sub->add_option(flag, var, help)->capture_default_str()->group(group);
}

struct FieldArgs {
  long quadratic = 0;
  std::string poly;

  void attach(CLI::App* sub);
  bool given() const { return quadratic != 0 || !poly.empty(); }
};
// Throws invalid_input "no_field" when neither flag was given.
FieldPtr build_field(const FieldArgs& args, int precision);

std::vector<double> parse_doubles(const std::string& text);
std::vector<long> parse_longs(const std::string& text);
std::vector<int> parse_ints(const std::string& text);
Complex parse_complex(const std::string& text);                     // "re,im"
std::vector<std::vector<double>> parse_rows(const std::string& text);  // "1,0;0,1"
FieldElement parse_element(const FieldPtr& field, const std::string& coords);  // "1/8,0" in the integral basis

json to_json(const Complex& z);
json to_json(const Integer& x);
json to_json(const Rational& q);

void add_arithmetic_commands(Registry& reg);
void add_group_commands(Registry& reg);
void add_hecke_commands(Registry& reg);

// Every option of the selected subcommand and the globals, keyed by group.
json run_config(const CLI::App& app, const CLI::App& sub);
// Command line equivalent to a RunConfig.
std::vector<std::string> replay_arguments(const json& config);

}  // namespace sqrlat::cli
