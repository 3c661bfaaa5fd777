#include <doctest.h>

#include <cmath>

#include "seqlab/harmonic.hpp"
#include "seqlab/props.hpp"
#include "seqlab/regvar.hpp"

using namespace seqlab;
using namespace seqlab::regvar;
using seqcore::FamilySpec;

namespace {
seqcore::SeqPtr fam(const std::string& arg) { return seqcore::make_family(FamilySpec::parse_arg(arg)); }
} // namespace

TEST_CASE("ratio limits") {
    EnvelopeEstimate one = ratio_limit(*fam("gevrey:2"), 1.0);
    CHECK(one.liminf == 1.0);
    CHECK(one.limsup == 1.0);

    EnvelopeEstimate g = ratio_limit(*fam("gevrey:2"), 2.0);
    CHECK(g.liminf == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(g.limsup == doctest::Approx(4.0).epsilon(1e-3));

    EnvelopeEstimate a = ratio_limit(*fam("example_a"), 2.0);
    CHECK(a.liminf == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(a.limsup == doctest::Approx(3.0).epsilon(1e-6));

    EnvelopeEstimate rz = ratio_limit(*fam("example_riesz"), 2.0);
    CHECK(rz.liminf >= 3.9);
    CHECK(rz.liminf <= 4.0 + 1e-4);
    CHECK(rz.limsup <= 8.0 + 1e-4);
    CHECK(rz.limsup >= 7.9);
}

TEST_CASE("regvar index test verdict patterns") {
    RegVarReport g1 = regvar_index_test(*fam("gevrey:1"));
    CHECK(g1.b_test.pass());
    CHECK(g1.d_test.pass());
    CHECK(g1.agree);
    CHECK(g1.omega == doctest::Approx(1.0).epsilon(2e-2));

    RegVarReport ea = regvar_index_test(*fam("example_a"));
    CHECK(ea.b_test.fail());
    CHECK(ea.d_test.fail());
    CHECK(ea.agree);

    RegVarReport eb = regvar_index_test(*fam("example_b"));
    CHECK(eb.b_test.fail());
    CHECK(eb.d_test.fail());
    CHECK(eb.agree);
}

TEST_CASE("bojanic-seneta decomposition of gevrey(1)") {
    BSDecomposition bs = bs_decompose(*fam("gevrey:1"), 1.0, 100000);
    CHECK(bs.regvar_verdict.pass());
    // C_p -> e^{omega(1+gamma)}; frozen from the closed form, checked at p=1e5
    double limit = std::exp(1.0 + kEulerGamma);
    CHECK(limit == doctest::Approx(4.8414567890).epsilon(1e-9));
    CHECK(std::fabs(bs.C_limit - limit) <= 5e-4);
    CHECK(std::fabs(bs.rows.back().delta) < 1e-4);
}

TEST_CASE("bs reconstruction is algebraic") {
    for (const char* f : {"gevrey:1", "example_a"}) {
        auto seq = fam(f);
        double omega = 1.0;
        BSDecomposition bs = bs_decompose(*seq, omega, 4096);
        // recompute the cumulative delta sum independently and reconstruct
        long double cum = 0.0L;
        size_t row = 0;
        for (uint64_t p = 1; p <= 4096 && row < bs.rows.size(); ++p) {
            auto prev = seqcore::alpha_beta(*seq, BigIndex(p - 1));
            cum += (long double)(prev.beta - omega) / (long double)p;
            if (bs.rows[row].p == p) {
                double recon = omega * std::log(double(p + 1)) + std::log(bs.rows[row].C) + double(cum);
                double want = seq->log_quotient(BigIndex(p));
                CHECK_MESSAGE(std::fabs(recon - want) <= 1e-9, f << " p=" << p);
                ++row;
            }
        }
    }
}

TEST_CASE("constant quotients decompose with delta = 0") {
    FamilySpec t;
    t.kind = FamilySpec::Kind::table;
    t.log_quotients.assign(600, std::log(7.0));
    auto seq = seqcore::make_family(t);
    BSDecomposition bs = bs_decompose(*seq, 0.0, 512);
    for (const BSRow& r : bs.rows)
        if (r.p >= 2) CHECK(std::fabs(r.delta) < 1e-12);
    // delta_1 = beta_0 = log c, so the canonical C_p settles at 1 (= e^{omega(1+gamma)})
    CHECK(bs.C_limit == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("example_a deltas oscillate instead of vanishing") {
    BSDecomposition bs = bs_decompose(*fam("example_a"), 1.0, 100000);
    CHECK(!bs.regvar_verdict.pass());
    double worst = 0.0;
    for (const BSRow& r : bs.rows)
        if (r.p > 50000) worst = std::max(worst, std::fabs(r.delta));
    CHECK(worst > 0.05);
}

TEST_CASE("characterization crosscheck summaries") {
    CharacterizationReport g2 = characterization_crosscheck(*fam("gevrey:2"));
    CHECK(g2.rv.b_test.pass());
    CHECK(g2.rv.d_test.pass());
    CHECK(g2.satisfies_g);
    CHECK(g2.mg.pass());
    CHECK(g2.snq.pass());
    CHECK(g2.omega_has_limit);
    CHECK(g2.gamma.contains(2.0));
    CHECK(std::fabs(g2.rv.omega - g2.omega_env.liminf) <= 2e-2);

    CharacterizationReport eb = characterization_crosscheck(*fam("example_b"));
    CHECK(eb.rv.b_test.fail());
    CHECK(eb.satisfies_g);
    CHECK(eb.summary == "satisfies (g), fails (a)-(d)");

    CharacterizationReport rz = characterization_crosscheck(*fam("example_riesz"));
    CHECK(rz.rv.d_test.fail());
    CHECK(!rz.omega_has_limit);
    CHECK(rz.summary.find("no log-quotient limit") != std::string::npos);
}

TEST_CASE("verdicts of (b) and (d) agree on every builtin") {
    for (const char* f : {"gevrey:0.5", "gevrey:1", "gevrey:2", "m_alpha_beta:1:1", "m_alpha_beta:1:-1",
                          "example_a", "example_b", "example_riesz"}) {
        RegVarReport rep = regvar_index_test(*fam(f));
        CHECK_MESSAGE(rep.agree, f << ": b " << to_string(rep.b_test.status) << " vs d "
                                   << to_string(rep.d_test.status));
    }
}

TEST_CASE("a passing regvar verdict pins the omega envelope") {
    for (const char* f : {"gevrey:0.5", "gevrey:2", "m_alpha_beta:1:1"}) {
        auto seq = fam(f);
        RegVarReport rv = regvar_index_test(*seq);
        REQUIRE(rv.b_test.pass());
        EnvelopeEstimate om = seqlab::props::estimate_omega(*seq);
        CHECK_MESSAGE(std::fabs(rv.omega - om.liminf) <= 2e-2, f << " omega " << rv.omega << " vs "
                                                                 << om.liminf);
    }
}
