#include "cli.hpp"

#include "sqrlat/error.hpp"
#include "sqrlat/parallel.hpp"

#include <fstream>
#include <iostream>

namespace {

using sqrlat::cli::json;

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kError = 2;

int report_error(const std::string& kind, const std::string& code, const std::string& message) {
  json err = {{"error", {{"kind", kind}, {"code", code}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  return kError;
}

// "--config run.json" stands for the command line recorded in that RunConfig.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] != "--config") continue;
    if (i + 1 >= args.size() || args.size() != 2)
      throw sqrlat::Error(sqrlat::ErrorKind::invalid_input, "config_usage", "use --config FILE on its own");
    std::ifstream in(args[i + 1]);
    if (!in) throw sqrlat::Error(sqrlat::ErrorKind::invalid_input, "io", "cannot read " + args[i + 1]);
    json cfg = json::parse(in, nullptr, false);
    if (cfg.is_discarded())
      throw sqrlat::Error(sqrlat::ErrorKind::invalid_input, "malformed_config", args[i + 1] + " is not JSON");
    if (cfg.contains("config")) cfg = cfg["config"];
    return sqrlat::cli::replay_arguments(cfg);
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sqrlat::cli;

  CLI::App app{"sqrlat: Fourier non-uniqueness sets from totally real fields and Hecke-group interpolation"};
  app.footer(
      "Every run prints its resolved RunConfig; `sqrlat --config run.json` repeats it. With --threads 1 the output "
      "is bit-for-bit reproducible.\nNot implemented: removing finitely many spheres from a uniqueness set.");
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  try {
    globals.precision = sqrlat::default_precision_bits();
  } catch (const sqrlat::Error& e) {
    return report_error(sqrlat::to_string(e.kind()), e.code(), e.what());
  }
  app.add_option("--threads", globals.threads, "worker threads, 1 is deterministic")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->group(kParameters);
  app.add_option("--seed", globals.seed, "seed for sampled points")->capture_default_str()->group(kParameters);
  app.add_option("--precision", globals.precision, "root isolation precision in bits (env SQRLAT_PRECISION)")
      ->capture_default_str()
      ->check(CLI::Range(16, 1 << 16))
      ->group(kParameters);
  app.add_option("--config", "replay a RunConfig JSON written by an earlier run")->group(kParameters);

  Registry reg(app, globals);
  add_arithmetic_commands(reg);
  add_group_commands(reg);
  add_hecke_commands(reg);

  std::vector<std::string> args;
  try {
    args = expand_config({argv + 1, argv + argc});
  } catch (const sqrlat::Error& e) {
    return report_error(sqrlat::to_string(e.kind()), e.code(), e.what());
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("invalid_input", "cli", e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Runner* run = reg.runner(sub);
  json config = run_config(app, *sub);

  try {
    sqrlat::set_thread_count(globals.threads);
    Outcome out = (*run)();
    json doc = {{"config", config}, {"result", out.result}};
    bool csv_on_stdout = false;
    if (out.csv) {
      if (out.out_path == "-") {
        std::cout << *out.csv;
        csv_on_stdout = true;
      } else {
        std::ofstream f(out.out_path);
        if (!f) return report_error("invalid_input", "io", "cannot open " + out.out_path + " for writing");
        f << *out.csv;
        if (!f) return report_error("invalid_input", "io", "write to " + out.out_path + " failed");
      }
    }
    (csv_on_stdout ? std::cerr : std::cout) << doc.dump(2) << "\n";
    return out.verified ? kOk : kVerificationFailed;
  } catch (const sqrlat::Error& e) {
    return report_error(sqrlat::to_string(e.kind()), e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", "exception", e.what());
  }
}
