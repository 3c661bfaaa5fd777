// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one pass/fail line each. Exits nonzero when any criterion fails.
#include <cstdio>
#include <string>

#include "seqlab/suite.hpp"

#ifndef SEQLAB_CLI_PATH
#define SEQLAB_CLI_PATH ""
#endif

int main(int argc, char** argv) {
    std::string filter = argc > 1 ? argv[1] : "";
    auto results = seqlab::suite::run_acceptance(filter, SEQLAB_CLI_PATH);
    for (const auto& r : results)
        std::printf("[%s] %2d %-22s %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.detail.c_str());
    bool ok = seqlab::suite::all_pass(results);
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILURE");
    return ok ? 0 : 1;
}
