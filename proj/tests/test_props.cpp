#include <doctest.h>

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"
#include "seqlab/props.hpp"

using namespace seqlab;
using namespace seqlab::props;
using seqcore::FamilySpec;
using seqcore::ScheduleBudget;

namespace {
seqcore::SeqPtr fam(const std::string& arg) { return seqcore::make_family(FamilySpec::parse_arg(arg)); }
} // namespace

TEST_CASE("lc verdicts") {
    CHECK(check_lc(*fam("example_a")).pass());
    CHECK(check_lc(*fam("m_alpha_beta:1:1")).pass());
    Verdict lc_a = check_lc(*fam("example_a"));
    // the ratio-3 era seam is the largest one-step jump and is recorded
    CHECK(lc_a.constants.at("max_seam_ratio") == doctest::Approx(3.0).epsilon(1e-9));

    FamilySpec t;
    t.kind = FamilySpec::Kind::table;
    t.log_quotients = {std::log(2.0), std::log(1.0)};
    Verdict bad = check_lc(*seqcore::make_family(t));
    CHECK(bad.fail());
    REQUIRE(!bad.witnesses.empty());
    CHECK(bad.witnesses.front().find("p=1") != std::string::npos);
}

TEST_CASE("mg verdicts and witness constants") {
    MgReport g1 = check_mg(*fam("gevrey:1"));
    CHECK(g1.verdict.pass());
    CHECK(g1.verdict.constants.at("sup") == doctest::Approx(2.0).epsilon(1e-3));

    MgReport mq = check_mg(*fam("m_q:2"));
    CHECK(mq.verdict.fail());
    REQUIRE(!mq.verdict.witnesses.empty());

    MgReport ea = check_mg(*fam("example_a"));
    CHECK(ea.verdict.pass());
    CHECK(ea.verdict.constants.at("sup") == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("mg via the ratio route and the beta route agree on the builtins") {
    for (const char* f :
         {"gevrey:1", "gevrey:2", "m_alpha_beta:1:1", "m_zero_beta:1", "m_q:2", "example_a", "example_b",
          "example_riesz"}) {
        MgReport rep = check_mg(*fam(f));
        CHECK_MESSAGE(rep.routes_agree, f << ": ratio route " << to_string(rep.verdict.status) << " vs beta route "
                                          << to_string(rep.verdict_beta.status));
    }
}

TEST_CASE("mg pass gives m_p <= A^2 M_p^{1/p} with the reported constant") {
    for (const char* f : {"gevrey:1", "m_alpha_beta:1:1", "example_a", "example_b", "example_riesz"}) {
        auto seq = fam(f);
        MgReport rep = check_mg(*seq);
        REQUIRE(rep.verdict.pass());
        double logA2 = 2.0 * std::log(rep.verdict.constants.at("sup"));
        for (uint64_t p = 1; p <= 4096; p += 7) {
            auto sp = seqcore::alpha_beta(*seq, BigIndex(p));
            CHECK_MESSAGE(sp.beta <= logA2 + 1e-9, f << " p=" << p << " beta=" << sp.beta);
        }
    }
}

TEST_CASE("snq verdicts") {
    Verdict g1 = check_snq(*fam("gevrey:1"), 2);
    CHECK(g1.pass());
    CHECK(g1.constants.at("liminf") == doctest::Approx(2.0).epsilon(1e-3));

    Verdict eb = check_snq(*fam("example_b"), 2);
    CHECK(eb.pass());
    CHECK(eb.constants.at("liminf") == doctest::Approx(2.0).epsilon(1e-3));

    // (log(e+2p+1)/log(e+p+1))^beta -> 1: fails for every tried k
    Verdict zb = check_snq(*fam("m_zero_beta:1"));
    CHECK(zb.fail());

    Verdict mq = check_snq(*fam("m_q:2"));
    CHECK(mq.pass());
}

TEST_CASE("full pass/fail matrix over the builtins") {
    struct Row {
        const char* f;
        bool lc, mg, snq;
    };
    const Row rows[] = {
        {"gevrey:0.5", true, true, true},  {"gevrey:1", true, true, true},
        {"m_alpha_beta:1:1", true, true, true}, {"m_alpha_beta:2:-1", true, true, true},
        {"m_zero_beta:1", true, true, false},   {"m_q:2", true, false, true},
        {"example_a", true, true, true},        {"example_b", true, true, true},
        {"example_riesz", true, true, true},
    };
    for (const Row& r : rows) {
        auto seq = fam(r.f);
        CHECK_MESSAGE(check_lc(*seq).pass() == r.lc, r.f << " lc");
        CHECK_MESSAGE(check_mg(*seq).verdict.pass() == r.mg, r.f << " mg");
        Verdict s = check_snq(*seq);
        CHECK_MESSAGE((r.snq ? s.pass() : s.fail()), r.f << " snq got " << to_string(s.status));
    }
}

TEST_CASE("quotient equivalence") {
    auto ea = fam("example_a");
    auto g1 = fam("gevrey:1");
    Verdict eq = check_equiv_quotients(*ea, *g1);
    CHECK(eq.pass());
    // m_p/(p+1) against the paper's m_p/p in [1/4, 3]: same window up to p/(p+1)
    CHECK(eq.constants.at("c") >= 0.25 * 0.8);
    CHECK(eq.constants.at("d") <= 3.0 + 1e-9);

    Verdict self = check_equiv_quotients(*g1, *g1);
    CHECK(self.pass());
    CHECK(self.constants.at("c") == doctest::Approx(1.0));
    CHECK(self.constants.at("d") == doctest::Approx(1.0));

    Verdict diff = check_equiv_quotients(*g1, *fam("gevrey:2"));
    CHECK(diff.fail());

    // example_b is not equivalent to Gevrey-1: the ratio reaches 2^k
    Verdict eb = check_equiv_quotients(*fam("example_b"), *g1);
    CHECK(eb.fail());
}

TEST_CASE("almost increasing defect") {
    auto g1 = fam("gevrey:1");
    DefectResult half = almost_increasing_defect(*g1, 0.5, g1->default_budget());
    CHECK(half.bounded);
    CHECK(half.constant == doctest::Approx(1.0).epsilon(1e-9));
    DefectResult over = almost_increasing_defect(*g1, 1.5, g1->default_budget());
    CHECK(over.diverging);

    auto rz = fam("example_riesz");
    DefectResult rz22 = almost_increasing_defect(*rz, 2.2, rz->default_budget());
    CHECK(rz22.diverging);
    DefectResult rz18 = almost_increasing_defect(*rz, 1.8, rz->default_budget());
    CHECK(rz18.bounded);
}

TEST_CASE("gamma index intervals") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto g = fam("gevrey:" + std::to_string(alpha));
        GammaInterval gi = estimate_gamma_index(*g);
        CHECK_MESSAGE(gi.conclusive, "gevrey " << alpha);
        CHECK(gi.hi - gi.lo <= 0.05 + 1e-12);
        CHECK_MESSAGE(gi.contains(alpha), "gevrey " << alpha << " interval [" << gi.lo << ", " << gi.hi << "]");
    }
    GammaInterval eb = estimate_gamma_index(*fam("example_b"));
    CHECK(eb.contains(1.0));
    GammaInterval rz = estimate_gamma_index(*fam("example_riesz"));
    CHECK(rz.contains(2.0));
    CHECK_THROWS_AS((void)estimate_gamma_index(*fam("m_q:2")), Error);
}

TEST_CASE("omega estimates") {
    EnvelopeEstimate g2 = estimate_omega(*fam("gevrey:2"));
    CHECK(g2.liminf == doctest::Approx(2.0).epsilon(1e-4));

    EnvelopeEstimate mq = estimate_omega(*fam("m_q:2"));
    CHECK((mq.diverged || mq.sup_growing));

    EnvelopeEstimate rz = estimate_omega(*fam("example_riesz"));
    CHECK(rz.liminf == doctest::Approx(2.5).epsilon(1e-3));
    CHECK(rz.limsup == doctest::Approx(2.75).epsilon(1e-2));

    EnvelopeEstimate zb = estimate_omega(*fam("m_zero_beta:1"));
    CHECK(zb.liminf < 0.05); // omega = 0
}

TEST_CASE("equivalent sequences share the omega index") {
    EnvelopeEstimate a = estimate_omega(*fam("example_a"));
    EnvelopeEstimate g = estimate_omega(*fam("gevrey:1"));
    CHECK(std::fabs(a.liminf - g.liminf) <= 2e-2);
}

TEST_CASE("tiny tables come out inconclusive, not pass/fail") {
    FamilySpec t;
    t.kind = FamilySpec::Kind::table;
    t.log_quotients = {0.0, 0.7, 1.4};
    auto seq = seqcore::make_family(t);
    MgReport mg = check_mg(*seq);
    CHECK(mg.verdict.status == Status::inconclusive);
}
