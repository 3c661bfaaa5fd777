#ifndef SEQLAB_SUITE_HPP
#define SEQLAB_SUITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "seqlab/proxord.hpp"
#include "seqlab/report.hpp"
#include "seqlab/seqcore.hpp"

namespace seqlab::suite {

struct CommandOptions {
    bool timestamp = true;
    std::optional<std::string> csv_path;
    std::optional<uint64_t> pmax;
    std::optional<int> nmax;
    std::optional<uint64_t> budget_log2;
};

report::ReportDocument cmd_analyze(const seqcore::FamilySpec& fam, const CommandOptions& opt);
report::ReportDocument cmd_construct(const proxord::OrderSpec& order, const CommandOptions& opt);
report::ReportDocument cmd_admit(const seqcore::FamilySpec& fam, const proxord::OrderSpec& order,
                                 const CommandOptions& opt);
report::ReportDocument cmd_riesz(const CommandOptions& opt);

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Acceptance criteria. The filter is a comma-separated list matched as
// substrings against the id or name; empty runs everything. cli_path powers
// the determinism criterion (it re-runs the CLI suite twice).
std::vector<CriterionResult> run_acceptance(const std::string& filter, const std::string& cli_path);

report::Json acceptance_json(const std::vector<CriterionResult>& results, bool timestamp);
bool all_pass(const std::vector<CriterionResult>& results);

} // namespace seqlab::suite

#endif
