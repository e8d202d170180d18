#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tneutral/commands.hpp"
#include "tneutral/config.hpp"
#include "tneutral/error.hpp"
#include "tneutral/kernels.hpp"

int main(int argc, char** argv) {
  using namespace tneutral;

  CLI::App app{"Thermodynamic formalism and r-neutralized entropy toolkit"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  long long seed = -1;
  int threads = 0;

  for (const char* name : {"pressure", "mmrne", "verify", "horseshoe"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value config file")->required();
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_option("--seed", seed, "overrides the config seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", threads, "OpenMP threads (env THERMO_NEUTRAL_THREADS)")
        ->check(CLI::PositiveNumber);
  }
  app.get_subcommand("pressure")->description("pressure surface Q(p,q) with exponents");
  app.get_subcommand("mmrne")->description("maximizers of h + r dim over an r grid");
  app.get_subcommand("verify")->description("sampled r-neutralized local entropy");
  app.get_subcommand("horseshoe")->description("Bernoulli family of a linear horseshoe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  if (threads == 0) {
    if (const char* env = std::getenv("THERMO_NEUTRAL_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        std::cerr << "error: THERMO_NEUTRAL_THREADS must be a positive integer\n";
        return 2;
      }
    }
  }
  set_thread_count(threads);

  try {
    auto cfg = load_run_config(ConfigFile::load(config_path));
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_path.empty()) cfg.output_path = out_path;

    const auto result = run_command(command, cfg);
    if (cfg.output_path) {
      std::ofstream out(*cfg.output_path, std::ios::binary);
      if (!out) throw Error(ErrorKind::Config, "cannot write " + *cfg.output_path);
      out << result.csv;
      for (const auto& line : result.summary) std::cout << line << '\n';
    } else {
      std::cout << result.csv;
      for (const auto& line : result.summary) std::cerr << line << '\n';
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
