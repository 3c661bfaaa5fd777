#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "seqlab/error.hpp"
#include "seqlab/report.hpp"
#include "seqlab/suite.hpp"

namespace {

struct CommonFlags {
    std::string out_path;
    std::string csv_path;
    bool no_timestamp = false;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--out", fl.out_path, "write the JSON report to this path");
    cmd->add_option("--csv", fl.csv_path, "write CSV data to this path");
    cmd->add_flag("--no-timestamp", fl.no_timestamp, "omit the timestamp for byte-identical reports");
}

seqlab::suite::CommandOptions to_options(const CommonFlags& fl) {
    seqlab::suite::CommandOptions opt;
    opt.timestamp = !fl.no_timestamp;
    if (!fl.csv_path.empty()) opt.csv_path = fl.csv_path;
    return opt;
}

int emit(const seqlab::report::ReportDocument& doc, const CommonFlags& fl) {
    if (!fl.out_path.empty())
        doc.write_file(fl.out_path);
    else
        std::cout << doc.serialize();
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for log-convex sequences and proximate orders"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "property checks, growth indices and regular-variation tests");
    std::string fam_arg, fam_config;
    CommonFlags afl;
    uint64_t budget_log2 = 0;
    analyze->add_option("family", fam_arg, "family spec: shorthand like gevrey:1, inline JSON, or a file path");
    analyze->add_option("--config", fam_config, "family spec JSON file");
    analyze->add_option("--budget-log2", budget_log2, "override the schedule depth (log2 of the deepest index)");
    add_common(analyze, afl);

    // construct
    auto* construct = app.add_subcommand("construct", "build M^V and the L-sequence from a nonzero proximate order");
    std::string ord_arg, ord_config;
    CommonFlags cfl;
    uint64_t pmax = 16384;
    construct->add_option("order", ord_arg, "order spec: shorthand like const:0.5, inline JSON, or a file path");
    construct->add_option("--config", ord_config, "order spec JSON file");
    construct->add_option("--pmax", pmax, "tabulation depth");
    add_common(construct, cfl);

    // admit
    auto* admit = app.add_subcommand("admit", "admissibility envelope and the closure chain");
    std::string adm_fam, adm_ord, adm_config;
    CommonFlags dfl;
    uint64_t adm_pmax = 16384;
    admit->add_option("family", adm_fam, "family spec");
    admit->add_option("order", adm_ord, "order spec");
    admit->add_option("--config", adm_config, "JSON file holding {\"family\": {...}, \"order\": {...}}");
    admit->add_option("--pmax", adm_pmax, "tabulation depth for the closure chain");
    add_common(admit, dfl);

    // riesz
    auto* rz = app.add_subcommand("riesz", "Riesz-mean subsequences of the final counterexample");
    CommonFlags rfl;
    int nmax = 20;
    rz->add_option("--nmax", nmax, "deepest subsequence index");
    add_common(rz, rfl);

    // suite
    auto* suite = app.add_subcommand("suite", "run the acceptance criteria");
    std::string filter, suite_json;
    bool suite_no_ts = false;
    suite->add_option("--filter", filter, "comma-separated criterion ids or name substrings");
    suite->add_option("--json", suite_json, "write the pass/fail matrix as JSON");
    suite->add_flag("--no-timestamp", suite_no_ts, "omit the timestamp in the JSON matrix");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            std::string arg = !fam_config.empty() ? fam_config : fam_arg;
            if (arg.empty()) throw seqlab::input_error("analyze: missing family spec");
            auto spec = seqlab::seqcore::FamilySpec::parse_arg(arg);
            auto opt = to_options(afl);
            if (budget_log2 > 0) opt.budget_log2 = budget_log2;
            return emit(seqlab::suite::cmd_analyze(spec, opt), afl);
        }
        if (construct->parsed()) {
            std::string arg = !ord_config.empty() ? ord_config : ord_arg;
            if (arg.empty()) throw seqlab::input_error("construct: missing order spec");
            auto spec = seqlab::proxord::OrderSpec::parse_arg(arg);
            auto opt = to_options(cfl);
            opt.pmax = pmax;
            return emit(seqlab::suite::cmd_construct(spec, opt), cfl);
        }
        if (admit->parsed()) {
            seqlab::seqcore::FamilySpec fam;
            seqlab::proxord::OrderSpec ord;
            if (!adm_config.empty()) {
                std::ifstream in(adm_config);
                if (!in) throw seqlab::input_error("admit: cannot read " + adm_config);
                nlohmann::json j;
                in >> j;
                fam = seqlab::seqcore::FamilySpec::parse(j.at("family"));
                ord = seqlab::proxord::OrderSpec::parse(j.at("order"));
            } else {
                if (adm_fam.empty() || adm_ord.empty())
                    throw seqlab::input_error("admit: needs a family and an order spec");
                fam = seqlab::seqcore::FamilySpec::parse_arg(adm_fam);
                ord = seqlab::proxord::OrderSpec::parse_arg(adm_ord);
            }
            auto opt = to_options(dfl);
            opt.pmax = adm_pmax;
            return emit(seqlab::suite::cmd_admit(fam, ord, opt), dfl);
        }
        if (rz->parsed()) {
            auto opt = to_options(rfl);
            opt.nmax = nmax;
            return emit(seqlab::suite::cmd_riesz(opt), rfl);
        }
        if (suite->parsed()) {
            auto results = seqlab::suite::run_acceptance(filter, argv[0]);
            for (const auto& r : results)
                std::printf("[%s] %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
            if (!suite_json.empty()) {
                auto j = seqlab::suite::acceptance_json(results, !suite_no_ts);
                std::ofstream out(suite_json, std::ios::binary);
                out << j.dump(2) << "\n";
            }
            bool ok = seqlab::suite::all_pass(results);
            std::printf("%s\n", ok ? "all criteria passed" : "SUITE FAILED");
            return ok ? 0 : 3;
        }
    } catch (const seqlab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.kind() == seqlab::ErrorKind::input ? 1 : 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 2;
    }
    return 1;
}
