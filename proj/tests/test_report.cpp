#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "seqlab/report.hpp"
#include "seqlab/suite.hpp"

using namespace seqlab;

TEST_CASE("report document shape and determinism") {
    auto build = [] {
        report::ReportDocument doc("analyze", false);
        doc.set_input("family", report::Json{{"family", "gevrey"}, {"alpha", 1.0}});
        Verdict v;
        v.check = "lc";
        v.status = Status::pass;
        v.constants["max_seam_ratio"] = 3.0;
        doc.add_verdict(v);
        return doc.serialize();
    };
    std::string a = build(), b = build();
    CHECK(a == b);
    CHECK(a.find("\"tool\": \"seqlab\"") != std::string::npos);
    CHECK(a.find("timestamp") == std::string::npos);
    report::ReportDocument with_ts("analyze", true);
    CHECK(with_ts.serialize().find("timestamp") != std::string::npos);
}

TEST_CASE("csv writer emits 17 significant digits") {
    report::CsvWriter csv({"a", "b"});
    csv.add_row({1.0 / 3.0, 2.0});
    std::string out = csv.str();
    CHECK(out.substr(0, 4) == "a,b\n");
    CHECK(out.find("0.33333333333333331") != std::string::npos);
    CHECK_THROWS(csv.add_row({1.0}));
}

TEST_CASE("analyze command produces a full report") {
    suite::CommandOptions opt;
    opt.timestamp = false;
    auto spec = seqcore::FamilySpec::parse_arg("gevrey:1");
    report::ReportDocument doc = suite::cmd_analyze(spec, opt);
    std::string s = doc.serialize();
    CHECK(s.find("\"check\": \"lc\"") != std::string::npos);
    CHECK(s.find("\"check\": \"mg\"") != std::string::npos);
    CHECK(s.find("\"check\": \"snq\"") != std::string::npos);
    CHECK(s.find("characterization") != std::string::npos);
    CHECK(s.find("omega_envelope") != std::string::npos);
    // a second run is byte-identical
    CHECK(suite::cmd_analyze(spec, opt).serialize() == s);
}

TEST_CASE("analyze on a tiny table completes with inconclusive flags") {
    suite::CommandOptions opt;
    opt.timestamp = false;
    seqcore::FamilySpec t;
    t.kind = seqcore::FamilySpec::Kind::table;
    t.log_quotients = {0.0, 0.69, 1.4};
    report::ReportDocument doc = suite::cmd_analyze(t, opt);
    CHECK(doc.any_inconclusive());
    CHECK(doc.serialize().find("inconclusive") != std::string::npos);
}

TEST_CASE("admit command on the admissible pair") {
    suite::CommandOptions opt;
    opt.timestamp = false;
    opt.pmax = 4096; // closure depth; verdicts here only need boundedness
    auto fam = seqcore::FamilySpec::parse_arg("m_alpha_beta:1:2");
    auto ord = proxord::OrderSpec::parse_arg("rho_alpha_beta:1:2");
    report::ReportDocument doc = suite::cmd_admit(fam, ord, opt);
    auto& j = doc.json();
    for (auto& chk : j.at("checks")) {
        if (chk.at("name") == "admits_proximate_order")
            CHECK(chk.at("result").at("status") != "fail");
        if (chk.at("name") == "closure_chain")
            CHECK(!chk.at("result").at("short_circuit").get<bool>());
    }
}

TEST_CASE("riesz command rows") {
    suite::CommandOptions opt;
    opt.timestamp = false;
    opt.nmax = 3;
    report::ReportDocument doc = suite::cmd_riesz(opt);
    auto& j = doc.json();
    bool found = false;
    for (auto& chk : j.at("checks")) {
        if (chk.at("name") == "limits") {
            found = true;
            CHECK(chk.at("result").at("limits_differ").get<bool>());
        }
    }
    CHECK(found);
}
