#pragma once

#include <string>
#include <vector>

#include "tneutral/config.hpp"

namespace tneutral {

struct CommandOutput {
  std::string csv;
  std::vector<std::string> summary;  // human-readable lines, not part of the CSV
};

// Columns: p,q,Q,lambda_u,lambda_s,h,d_u,d_s,dim,residual_u,residual_s
CommandOutput cmd_pressure(const RunConfig& cfg);
// Columns: r,p,q,hr_max,h,dim,edge_hit,bernoulli_p,bernoulli_hr_max,maximizer_count,two_maximizers
CommandOutput cmd_mmrne(const RunConfig& cfg);
// Columns: r,theta,n,samples,mean,stddev,predicted
CommandOutput cmd_verify_symbolic(const RunConfig& cfg);
// Columns: r,p,h,lambda1,lambda2,dim,hr
CommandOutput cmd_horseshoe_demo(const RunConfig& cfg);

// Dispatch by subcommand name; throws Error(Config) for unknown names.
CommandOutput run_command(const std::string& name, const RunConfig& cfg);

}  // namespace tneutral
