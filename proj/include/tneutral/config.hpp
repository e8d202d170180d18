#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tneutral/horseshoe.hpp"
#include "tneutral/sft.hpp"
#include "tneutral/surface.hpp"

namespace tneutral {

// Flat `dotted.key = value` text, one key per line, `#` starts a comment.
class ConfigFile {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static ConfigFile parse(std::istream& in, const std::string& source = "<config>");
  static ConfigFile parse_string(const std::string& text, const std::string& source = "<config>");
  static ConfigFile load(const std::string& path);

  const Entry* find(const std::string& key) const;
  const std::string& source() const noexcept { return source_; }
  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

  // Throws Error(Config) with "source:line: key: message".
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  std::string source_;
  std::map<std::string, Entry> entries_;
};

struct AxisGrid {
  double min = -2.0;
  double max = 2.0;
  int count = 5;
};

enum class VerifyMeasure { Parry, Bernoulli, Equilibrium };
enum class MmrneMode { Auto, Family, Bernoulli };

struct RunConfig {
  std::optional<Horseshoe> horseshoe;        // system.kind = horseshoe
  std::optional<Sft> sft;                    // always set once a system is given
  std::optional<TwoPotentialSystem> system;  // set when both potentials are known

  double theta = 0.36787944117144233;  // e^{-1}
  std::vector<double> r_values{1.0};

  AxisGrid p_grid;
  AxisGrid q_grid;
  double derivative_step = 1e-5;

  std::int64_t n = 200;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  VerifyMeasure measure = VerifyMeasure::Parry;
  std::vector<double> bernoulli;  // probabilities for VerifyMeasure::Bernoulli
  double measure_p = 0.0;         // parameters for VerifyMeasure::Equilibrium
  double measure_q = 0.0;

  double eigen_tol = 1e-13;
  double search_tol = 1e-8;
  double box = 5.0;
  int family_grid = 41;
  MmrneMode mmrne_mode = MmrneMode::Auto;

  int bernoulli_grid = 2001;
  int curve_points = 101;
  double scan_max = 10.0;

  std::optional<std::string> output_path;
};

// Validates every key and every referenced invariant (adjacency shape,
// primitivity, hyperbolicity, eta ranges).
RunConfig load_run_config(const ConfigFile& file);

// Parsers shared with the tests.
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::vector<double>> parse_matrix(const std::string& text);

}  // namespace tneutral
