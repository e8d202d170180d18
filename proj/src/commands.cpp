#include "tneutral/commands.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "tneutral/csv.hpp"
#include "tneutral/error.hpp"
#include "tneutral/horseshoe.hpp"
#include "tneutral/kernels.hpp"
#include "tneutral/mmrne.hpp"
#include "tneutral/search.hpp"
#include "tneutral/thermo.hpp"
#include "tneutral/verify.hpp"

namespace tneutral {

namespace {

const TwoPotentialSystem& require_system(const RunConfig& cfg, const char* command) {
  if (!cfg.system) {
    throw Error(ErrorKind::Config, std::string(command) +
                                       " needs a system with potentials (system.kind = horseshoe, "
                                       "or sft with system.phi_u and system.phi_s)");
  }
  return *cfg.system;
}

std::vector<double> axis(const AxisGrid& g) {
  return linspace(g.min, g.max, static_cast<std::size_t>(g.count));
}

std::string join_reals(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += format_real(xs[i]);
  }
  return out;
}

}  // namespace

CommandOutput cmd_pressure(const RunConfig& cfg) {
  const auto& sys = require_system(cfg, "pressure");
  const auto ps = axis(cfg.p_grid);
  const auto qs = axis(cfg.q_grid);
  const PressureOptions opts{.tol = cfg.eigen_tol};
  const auto points = evaluate_grid(sys, ps, qs, Backend::Parallel, opts);
  std::vector<DerivativeResiduals> residuals(points.size());
  for_each_index(points.size(), [&](std::size_t i) {
    residuals[i] = derivative_check(sys, points[i].p, points[i].q, cfg.derivative_step);
  });

  CsvTable table({"p", "q", "Q", "lambda_u", "lambda_s", "h", "d_u", "d_s", "dim",
                  "residual_u", "residual_s"});
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    table.add_row({pt.p, pt.q, pt.Q, pt.lambda_u, pt.lambda_s, pt.h, pt.d_u, pt.d_s, pt.dim,
                   residuals[i].u, residuals[i].s});
    worst = std::max({worst, residuals[i].u, residuals[i].s});
  }
  CommandOutput out{table.str(), {}};
  out.summary.push_back("grid points: " + std::to_string(points.size()));
  out.summary.push_back("max derivative residual: " + format_real(worst));
  return out;
}

CommandOutput cmd_mmrne(const RunConfig& cfg) {
  const auto& sys = require_system(cfg, "mmrne");
  auto rs = cfg.r_values;
  std::sort(rs.begin(), rs.end());

  const bool bernoulli =
      cfg.horseshoe.has_value() && cfg.mmrne_mode != MmrneMode::Family;
  const bool family = cfg.mmrne_mode != MmrneMode::Bernoulli;
  if (cfg.mmrne_mode == MmrneMode::Bernoulli && !cfg.horseshoe) {
    throw Error(ErrorKind::Config, "mmrne.mode = bernoulli requires a horseshoe system");
  }

  FamilySearchOptions opts;
  opts.box = cfg.box;
  opts.grid_n = cfg.family_grid;
  opts.param_tol = cfg.search_tol;
  opts.pressure.tol = cfg.eigen_tol;

  std::vector<RSweepRecord> fam;
  if (family) fam = sweep(sys, rs, opts);
  std::vector<BernoulliSweepRecord> bern;
  if (bernoulli) bern = sweep_bernoulli(*cfg.horseshoe, rs, cfg.bernoulli_grid);

  CsvTable table({"r", "p", "q", "hr_max", "h", "dim", "edge_hit", "bernoulli_p",
                  "bernoulli_hr_max", "maximizer_count", "two_maximizers"});
  CommandOutput out;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::vector<CsvTable::Cell> row{rs[i]};
    if (family) {
      const auto& f = fam[i];
      row.insert(row.end(), {f.p, f.q, f.hr_max, f.h, f.dim, f.edge_hit});
    } else {
      const auto& b = bern[i];
      row.insert(row.end(), {std::monostate{}, std::monostate{}, b.hr_max, b.h, b.dim,
                             std::monostate{}});
    }
    if (bernoulli) {
      const auto& b = bern[i];
      row.insert(row.end(), {b.p, b.hr_max, static_cast<std::int64_t>(b.maximizer_count),
                             b.maximizer_count >= 2});
    } else {
      row.insert(row.end(),
                 {std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}});
    }
    table.add_row(std::move(row));
    if (family && fam[i].edge_hit) {
      out.summary.push_back("r=" + format_real(rs[i]) +
                            ": maximizer on the search box edge (exponents saturate)");
    }
  }
  out.csv = table.str();
  return out;
}

CommandOutput cmd_verify_symbolic(const RunConfig& cfg) {
  if (!cfg.sft) throw Error(ErrorKind::Config, "verify needs a system (system.kind)");
  const ShiftMetric metric(cfg.theta);
  std::optional<MarkovMeasure> measure;
  switch (cfg.measure) {
    case VerifyMeasure::Parry:
      measure = equilibrium_of(*cfg.sft, LocallyConstantPotential::constant(cfg.sft->k(), 0.0),
                               {.tol = cfg.eigen_tol})
                    .measure;
      break;
    case VerifyMeasure::Bernoulli:
      measure = MarkovMeasure::bernoulli(cfg.bernoulli);
      break;
    case VerifyMeasure::Equilibrium:
      measure = eval_point(*cfg.system, cfg.measure_p, cfg.measure_q, {.tol = cfg.eigen_tol})
                    .measure;
      break;
  }
  auto rs = cfg.r_values;
  std::sort(rs.begin(), rs.end());

  CsvTable table({"r", "theta", "n", "samples", "mean", "stddev", "predicted"});
  CommandOutput out;
  for (double r : rs) {
    if (std::isinf(r)) throw Error(ErrorKind::Config, "verify needs finite r values");
    const auto est =
        estimate_neutralized_entropy(*measure, metric, r, cfg.n, cfg.samples, cfg.seed);
    table.add_row({est.r, est.theta, est.n, static_cast<std::int64_t>(est.samples), est.mean,
                   est.stddev, est.predicted});
    out.summary.push_back("r=" + format_real(r) + ": relative error " +
                          format_real((est.mean - est.predicted) / est.predicted));
  }
  out.csv = table.str();
  return out;
}

CommandOutput cmd_horseshoe_demo(const RunConfig& cfg) {
  const Horseshoe hs = cfg.horseshoe ? *cfg.horseshoe : Horseshoe::non_uniqueness_example();
  auto rs = cfg.r_values;
  std::sort(rs.begin(), rs.end());

  CsvTable table({"r", "p", "h", "lambda1", "lambda2", "dim", "hr"});
  CommandOutput out;
  out.summary.push_back("eta1=" + format_real(hs.eta1) + " eta2=" + format_real(hs.eta2));
  const auto ps = linspace(0.0, 1.0, static_cast<std::size_t>(cfg.curve_points));
  for (double r : rs) {
    if (std::isinf(r)) throw Error(ErrorKind::Config, "horseshoe demo needs finite r values");
    for (double p : ps) {
      const auto s = bernoulli_stats(hs, p, r);
      table.add_row({r, s.p, s.h, s.lambda1, s.lambda2, s.dim, s.hr});
    }
    const auto d = hr_derivatives_at_half(hs, r);
    const auto maxima = find_bernoulli_maximizers(hs, r, cfg.bernoulli_grid);
    std::vector<double> where;
    for (const auto& m : maxima) where.push_back(m.p);
    const auto half = bernoulli_stats(hs, 0.5, r);
    const auto best = best_bernoulli(hs, r, cfg.bernoulli_grid);
    out.summary.push_back("r=" + format_real(r) + " first_derivative_at_half=" +
                          format_real(d.first) + " second_derivative_at_half=" +
                          format_real(d.second));
    out.summary.push_back("r=" + format_real(r) + " maximizers=" + join_reals(where) +
                          " hr_max=" + format_real(best.hr) +
                          " hr_half=" + format_real(half.hr));
  }
  const auto rc = critical_r(hs, cfg.scan_max);
  if (rc) {
    out.summary.push_back("critical_r=" + format_real(*rc) + " second_below=" +
                          format_real(hr_derivatives_at_half(hs, *rc * 0.99).second) +
                          " second_above=" +
                          format_real(hr_derivatives_at_half(hs, *rc * 1.01).second));
  } else {
    out.summary.push_back("critical_r=none in [0, " + format_real(cfg.scan_max) + "]");
  }
  out.summary.push_back("p_dim=" + format_real(mmhd_bernoulli(hs, cfg.bernoulli_grid)));
  out.csv = table.str();
  return out;
}

CommandOutput run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "pressure") return cmd_pressure(cfg);
  if (name == "mmrne") return cmd_mmrne(cfg);
  if (name == "verify") return cmd_verify_symbolic(cfg);
  if (name == "horseshoe") return cmd_horseshoe_demo(cfg);
  throw Error(ErrorKind::Config, "unknown command '" + name + "'");
}

}  // namespace tneutral
