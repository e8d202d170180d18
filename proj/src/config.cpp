#include "tneutral/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "tneutral/csv.hpp"
#include "tneutral/error.hpp"

namespace tneutral {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_real(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "'" + s + "' is not a number");
  }
  if (used != s.size()) throw Error(ErrorKind::Config, "'" + s + "' is not a number");
  return v;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "system.kind",     "system.eta1",      "system.eta2",     "system.adjacency",
      "system.phi_u",    "system.phi_s",     "metric.theta",    "metric.log_theta",
      "r",               "grid.p.min",       "grid.p.max",      "grid.p.count",
      "grid.q.min",      "grid.q.max",       "grid.q.count",    "derivative.step",
      "verify.n",        "verify.samples",   "verify.measure",  "verify.bernoulli",
      "verify.p",        "verify.q",         "seed",            "tol.eigen",
      "tol.search",      "mmrne.box",        "mmrne.grid",      "mmrne.mode",
      "horseshoe.grid",  "horseshoe.curve_points",              "horseshoe.scan_max",
      "output.path"};
  return keys;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!trim(token).empty()) out.push_back(parse_real(token));
      token.clear();
    } else {
      token += c;
    }
  }
  if (out.empty()) throw Error(ErrorKind::Config, "expected at least one number");
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  int index = 0;
  while (std::getline(ss, row, ';')) {
    try {
      rows.push_back(parse_real_list(row));
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, "row " + std::to_string(index) + ": " + e.what());
    }
    ++index;
  }
  return rows;
}

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile cfg;
  cfg.source_ = source;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Config,
                  source + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().contains(key)) {
      throw Error(ErrorKind::Config,
                  source + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (cfg.entries_.contains(key)) {
      throw Error(ErrorKind::Config, source + ":" + std::to_string(lineno) + ": key '" + key +
                                         "' repeats line " +
                                         std::to_string(cfg.entries_[key].line));
    }
    cfg.entries_[key] = Entry{value, lineno};
  }
  return cfg;
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse(in, source);
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path);
  return parse(in, path);
}

const ConfigFile::Entry* ConfigFile::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void ConfigFile::fail(const std::string& key, const std::string& message) const {
  const Entry* e = find(key);
  const std::string where = e ? source_ + ":" + std::to_string(e->line) : source_;
  throw Error(ErrorKind::Config, where + ": " + key + ": " + message);
}

namespace {

class Reader {
 public:
  explicit Reader(const ConfigFile& f) : f_(f) {}

  template <class Fn>
  auto with(const std::string& key, Fn fn) const {
    try {
      return fn(f_.find(key)->value);
    } catch (const Error& e) {
      f_.fail(key, e.what());
    }
  }

  bool has(const std::string& key) const { return f_.find(key) != nullptr; }

  void real(const std::string& key, double& out) const {
    if (has(key)) out = with(key, parse_real);
  }

  template <class Int>
  void integer(const std::string& key, Int& out, long long min_value) const {
    if (!has(key)) return;
    const double v = with(key, parse_real);
    if (v != std::floor(v) || v < static_cast<double>(min_value)) {
      f_.fail(key, "expected an integer >= " + std::to_string(min_value));
    }
    out = static_cast<Int>(v);
  }

  std::string text(const std::string& key) const { return f_.find(key)->value; }

  const ConfigFile& file() const { return f_; }

 private:
  const ConfigFile& f_;
};

LocallyConstantPotential read_potential(const Reader& rd, const std::string& key, std::size_t k) {
  const auto rows = rd.with(key, parse_matrix);
  if (rows.size() == 1) {
    if (rows[0].size() != k) {
      rd.file().fail(key, "expected " + std::to_string(k) + " values, got " +
                              std::to_string(rows[0].size()));
    }
    return LocallyConstantPotential::symbolwise(rows[0]);
  }
  if (rows.size() != k) {
    rd.file().fail(key, "expected 1 or " + std::to_string(k) + " rows, got " +
                            std::to_string(rows.size()));
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i].size() != k) {
      rd.file().fail(key, "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                              " entries, expected " + std::to_string(k));
    }
  }
  return LocallyConstantPotential::edgewise(Matrix::from_rows(rows));
}

}  // namespace

RunConfig load_run_config(const ConfigFile& file) {
  const Reader rd(file);
  RunConfig cfg;

  const std::string kind = rd.has("system.kind") ? rd.text("system.kind") : "";
  if (kind == "horseshoe") {
    double eta1 = 0.0;
    double eta2 = 0.0;
    if (!rd.has("system.eta1")) file.fail("system.eta1", "required for a horseshoe system");
    if (!rd.has("system.eta2")) file.fail("system.eta2", "required for a horseshoe system");
    rd.real("system.eta1", eta1);
    rd.real("system.eta2", eta2);
    try {
      cfg.horseshoe = Horseshoe::make(eta1, eta2);
    } catch (const Error& e) {
      file.fail("system.eta2", e.what());
    }
    cfg.system = induced_system(*cfg.horseshoe);
    cfg.sft = cfg.system->sft();
  } else if (kind == "sft") {
    if (!rd.has("system.adjacency")) file.fail("system.adjacency", "required for an sft system");
    const auto rows = rd.with("system.adjacency", parse_matrix);
    std::vector<std::vector<int>> adj;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      std::vector<int> row;
      for (double v : rows[i]) {
        if (v != 0.0 && v != 1.0) {
          file.fail("system.adjacency", "row " + std::to_string(i) + " has entry " +
                                            format_real(v) + " (expected 0 or 1)");
        }
        row.push_back(static_cast<int>(v));
      }
      adj.push_back(std::move(row));
    }
    try {
      cfg.sft = Sft::build(adj);
    } catch (const Error& e) {
      file.fail("system.adjacency", e.what());
    }
    const bool has_u = rd.has("system.phi_u");
    const bool has_s = rd.has("system.phi_s");
    if (has_u != has_s) {
      file.fail(has_u ? "system.phi_u" : "system.phi_s",
                "phi_u and phi_s must be given together");
    }
    if (has_u) {
      auto phi_u = read_potential(rd, "system.phi_u", cfg.sft->k());
      auto phi_s = read_potential(rd, "system.phi_s", cfg.sft->k());
      try {
        cfg.system.emplace(*cfg.sft, std::move(phi_u), std::move(phi_s));
      } catch (const Error& e) {
        file.fail("system.phi_u", e.what());
      }
    }
  } else if (!kind.empty()) {
    file.fail("system.kind", "expected 'horseshoe' or 'sft', got '" + kind + "'");
  }

  if (rd.has("metric.theta") && rd.has("metric.log_theta")) {
    file.fail("metric.log_theta", "give either metric.theta or metric.log_theta");
  }
  rd.real("metric.theta", cfg.theta);
  if (rd.has("metric.log_theta")) {
    double lt = 0.0;
    rd.real("metric.log_theta", lt);
    cfg.theta = std::exp(lt);
  }
  if (!(cfg.theta > 0.0 && cfg.theta < 1.0)) {
    file.fail(rd.has("metric.theta") ? "metric.theta" : "metric.log_theta",
              "theta must lie in (0, 1)");
  }

  if (rd.has("r")) {
    cfg.r_values = rd.with("r", parse_real_list);
    for (double r : cfg.r_values) {
      if (!(r >= 0.0)) file.fail("r", "r values must be >= 0");
    }
  }

  rd.real("grid.p.min", cfg.p_grid.min);
  rd.real("grid.p.max", cfg.p_grid.max);
  rd.integer("grid.p.count", cfg.p_grid.count, 1);
  rd.real("grid.q.min", cfg.q_grid.min);
  rd.real("grid.q.max", cfg.q_grid.max);
  rd.integer("grid.q.count", cfg.q_grid.count, 1);
  rd.real("derivative.step", cfg.derivative_step);
  if (!(cfg.derivative_step > 0.0)) file.fail("derivative.step", "must be > 0");

  rd.integer("verify.n", cfg.n, 1);
  rd.integer("verify.samples", cfg.samples, 1);
  if (rd.has("verify.measure")) {
    const auto m = rd.text("verify.measure");
    if (m == "parry") {
      cfg.measure = VerifyMeasure::Parry;
    } else if (m == "bernoulli") {
      cfg.measure = VerifyMeasure::Bernoulli;
    } else if (m == "equilibrium") {
      cfg.measure = VerifyMeasure::Equilibrium;
    } else {
      file.fail("verify.measure", "expected parry, bernoulli or equilibrium");
    }
  }
  if (cfg.measure == VerifyMeasure::Bernoulli) {
    if (!rd.has("verify.bernoulli")) file.fail("verify.bernoulli", "required for bernoulli");
    cfg.bernoulli = rd.with("verify.bernoulli", parse_real_list);
    if (cfg.sft && cfg.bernoulli.size() != cfg.sft->k()) {
      file.fail("verify.bernoulli", "expected one probability per symbol");
    }
    try {
      const auto m = MarkovMeasure::bernoulli(cfg.bernoulli);
      if (cfg.sft && !m.supported_on(*cfg.sft)) {
        file.fail("verify.bernoulli", "measure charges forbidden transitions");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Config) throw;
      file.fail("verify.bernoulli", e.what());
    }
  }
  rd.real("verify.p", cfg.measure_p);
  rd.real("verify.q", cfg.measure_q);
  if (cfg.measure == VerifyMeasure::Equilibrium && !cfg.system) {
    file.fail("verify.measure", "equilibrium measures need system potentials");
  }

  rd.integer("seed", cfg.seed, 0);
  rd.real("tol.eigen", cfg.eigen_tol);
  rd.real("tol.search", cfg.search_tol);
  if (!(cfg.eigen_tol > 0.0)) file.fail("tol.eigen", "must be > 0");
  if (!(cfg.search_tol > 0.0)) file.fail("tol.search", "must be > 0");
  rd.real("mmrne.box", cfg.box);
  if (!(cfg.box > 0.0)) file.fail("mmrne.box", "must be > 0");
  rd.integer("mmrne.grid", cfg.family_grid, 3);
  if (rd.has("mmrne.mode")) {
    const auto m = rd.text("mmrne.mode");
    if (m == "auto") {
      cfg.mmrne_mode = MmrneMode::Auto;
    } else if (m == "family") {
      cfg.mmrne_mode = MmrneMode::Family;
    } else if (m == "bernoulli") {
      cfg.mmrne_mode = MmrneMode::Bernoulli;
    } else {
      file.fail("mmrne.mode", "expected auto, family or bernoulli");
    }
  }
  rd.integer("horseshoe.grid", cfg.bernoulli_grid, 100);
  rd.integer("horseshoe.curve_points", cfg.curve_points, 2);
  rd.real("horseshoe.scan_max", cfg.scan_max);
  if (!(cfg.scan_max > 0.0)) file.fail("horseshoe.scan_max", "must be > 0");
  if (rd.has("output.path")) cfg.output_path = rd.text("output.path");
  return cfg;
}

}  // namespace tneutral
