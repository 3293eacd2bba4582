#pragma once

#include <json.hpp>

#include <string>

#include "rgkit/analytic.hpp"
#include "rgkit/multdep.hpp"
#include "rgkit/pipeline.hpp"
#include "rgkit/repunit.hpp"

namespace rg::report {

using json = nlohmann::json;

/// Every report carries the toolkit version plus the fully resolved run
/// configuration for reproducibility.
struct RunContext {
  std::string subcommand;
  std::string format = "json";
  unsigned precision_digits = kDefaultDigits;
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
};

json context_json(const RunContext& ctx);

double to_double(const Real& r);
json rat_json(const Rat& q);

json solution_set_json(const repunit::SolutionSet& s);
json solve_report(const RunContext& ctx, const repunit::SolutionSet& s,
                  const Rat& tail_sum);
json coincidence_report(const RunContext& ctx,
                        const std::vector<repunit::CoincidenceRecord>& records);
json certificate_report(const RunContext& ctx,
                        const std::vector<analytic::CertifyRow>& rows,
                        const std::vector<analytic::TableFinding>& table_findings);
json bound_report_json(const RunContext& ctx, const pipeline::BoundReport& rep);
json exceptional_pair_json(const multdep::ExceptionalPair& p, bool family);
json findings_report(const RunContext& ctx);

/// CSV renderings carry the same values as the JSON reports.
std::string to_csv(const json& report);

}  // namespace rg::report
