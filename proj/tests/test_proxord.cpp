#include <doctest.h>

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"
#include "seqlab/proxord.hpp"

using namespace seqlab;
using namespace seqlab::proxord;

namespace {
OrderPtr ord(const std::string& s) { return make_order(OrderSpec::parse_arg(s)); }
seqcore::SeqPtr fam(const std::string& s) { return seqcore::make_family(seqcore::FamilySpec::parse_arg(s)); }
} // namespace

TEST_CASE("order spec parsing") {
    auto j = nlohmann::json::parse(R"({"order":"rho_alpha_beta","alpha":1.0,"beta":2.0})");
    CHECK(OrderSpec::parse(j).kind == OrderSpec::Kind::rho_alpha_beta);
    CHECK(OrderSpec::parse_arg("const:0.5").rho == 0.5);
    CHECK_THROWS_AS(OrderSpec::parse(nlohmann::json::parse(R"({"order":"const","rho":-1})")), Error);
    CHECK_THROWS_AS(OrderSpec::parse(nlohmann::json::parse(R"({"order":"log_decay","rho":1})")), Error);
    CHECK(OrderSpec::parse_arg("power_decay:1:2").to_json().dump() ==
          R"({"order":"power_decay","rho":1.0,"gamma":2.0})");
}

TEST_CASE("builtin order values and derivatives") {
    auto c = ord("const:0.5");
    CHECK(c->rho(3.0) == 0.5);
    CHECK(c->drho_dlogr(3.0) == 0.0);

    // log_decay(1,1): r rho'(r) log r = -1/log t, so -0.01 at t = e^100
    auto ld = ord("log_decay:1:1");
    CHECK(ld->drho_dlogr(100.0) * 100.0 == doctest::Approx(-0.01).epsilon(1e-12));

    // analytic derivative against central differences
    for (const char* s : {"rho_alpha_beta:1:1", "rho_alpha_beta:2:-1", "power_decay:1:1", "log_decay:0.5:2"}) {
        auto o = ord(s);
        for (double lr : {3.0, 10.0, 50.0}) {
            double h = 1e-6 * lr;
            double fd = (o->rho(lr + h) - o->rho(lr - h)) / (2.0 * h);
            CHECK_MESSAGE(o->drho_dlogr(lr) == doctest::Approx(fd).epsilon(1e-6), s << " at " << lr);
        }
    }
}

TEST_CASE("validation: builtins pass, sin fails (D) only") {
    for (const char* s : {"const:1", "rho_alpha_beta:1:1", "rho_alpha_beta:1:2", "power_decay:1:1",
                          "log_decay:1:1", "log_decay:1:2"}) {
        OrderValidation val = validate_order(*ord(s));
        CHECK_MESSAGE(val.all_pass(), s);
    }
    OrderValidation zero = validate_order(*ord("const:0"));
    CHECK(zero.all_pass());
    CHECK(!zero.nonzero);

    OrderValidation sv = validate_order(*ord("sin_counterexample:1"));
    CHECK(sv.condition_b.pass());
    CHECK(sv.condition_c.pass());
    CHECK(sv.condition_d.fail());
    CHECK(sv.d_residual_large_points >= 10);
}

TEST_CASE("V evaluation and monotone tail") {
    auto c2 = ord("const:2");
    CHECK(V_of(*c2, std::log(10.0)) == doctest::Approx(2.0 * std::log(10.0)).epsilon(1e-15));
    CHECK_THROWS_AS((void)V_of(*c2, -1.0), Error);
    auto pd = ord("power_decay:1:1");
    double lt = 3.0;
    CHECK(V_of(*pd, lt) == doctest::Approx((1.0 + std::exp(-lt)) * lt).epsilon(1e-12));
    // V(2t)/V(t) -> 2^rho on the tail (regular variation)
    for (const char* s : {"const:2", "rho_alpha_beta:1:1", "log_decay:1:1"}) {
        auto o = ord(s);
        double t = 300.0;
        double lv2 = o->rho(t + kLog2) * (t + kLog2);
        double lv1 = o->rho(t) * t;
        CHECK_MESSAGE(lv2 - lv1 == doctest::Approx(o->rho_limit() * kLog2).epsilon(2e-2), s);
    }
}

TEST_CASE("U inverts V on the increasing tail") {
    auto c2 = ord("const:2");
    CHECK(U_of(*c2, std::log(4.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (const char* s : {"const:2", "power_decay:1:1", "rho_alpha_beta:1:1", "log_decay:1:1"}) {
        auto o = ord(s);
        for (double lt : {8.0, 40.0, 200.0}) {
            double lv = V_of(*o, lt);
            CHECK_MESSAGE(U_of(*o, lv) == doctest::Approx(lt).epsilon(1e-10), s << " at log t = " << lt);
        }
    }
    // below the attained range of the increasing tail
    auto rab = ord("rho_alpha_beta:1:1");
    CHECK_THROWS_AS((void)U_of(*rab, -5.0), Error);
    CHECK_THROWS_AS((void)U_of(*ord("const:0"), 1.0), Error);
}

TEST_CASE("conjugate order tends to 1/rho and validates") {
    for (const char* s : {"const:2", "rho_alpha_beta:1:1", "power_decay:1:1", "log_decay:1:1"}) {
        auto base = ord(s);
        auto conj = conjugate_order(base);
        double want = 1.0 / base->rho_limit();
        CHECK_MESSAGE(std::fabs(conj->rho(400.0) - want) <= 2e-2, s << "* at e^400: " << conj->rho(400.0));
        GridSpec g;
        g.log_t_lo = conj->log_c() + 0.5;
        g.log_t_hi = 1800.0;
        g.pts_per_decade = 8;
        OrderValidation val = validate_order(*conj, g);
        CHECK_MESSAGE(val.all_pass(), s << "* validation");
    }
}

TEST_CASE("order equivalence verdicts") {
    auto c1 = ord("const:1");
    CHECK(orders_equivalent(*c1, *c1, validation_grid()).pass());
    // (log^{-2} t) log t -> 0
    CHECK(orders_equivalent(*c1, *ord("log_decay:1:2"), validation_grid()).pass());
    CHECK(orders_equivalent(*c1, *ord("const:1.1"), validation_grid()).fail());
    // power decay dies even faster
    CHECK(orders_equivalent(*ord("power_decay:1:1"), *c1, validation_grid()).pass());
    // log_decay gamma = 1: (rho1 - rho2) log r = 1, bounded but nonzero
    CHECK(!orders_equivalent(*ord("log_decay:1:1"), *c1, validation_grid()).pass());
}

TEST_CASE("admissibility verdicts") {
    GridSpec g = admissibility_grid();
    auto pass1 = admits(*fam("gevrey:1"), *ord("const:1"), g);
    CHECK(pass1.verdict.pass());
    CHECK(pass1.A <= pass1.B);
    CHECK(std::fabs(pass1.B) < 1.0); // log t (1 - d) -> 0 for p!

    auto pass_ab = admits(*fam("m_alpha_beta:1:2"), *ord("rho_alpha_beta:1:2"), g);
    CHECK(!pass_ab.verdict.fail());
    CHECK(pass_ab.B - pass_ab.A < 3.0);

    auto pass_g2 = admits(*fam("gevrey:2"), *ord("const:0.5"), g);
    CHECK(pass_g2.verdict.pass());

    auto fail_b = admits(*fam("example_b"), *ord("const:1"), g);
    CHECK(fail_b.verdict.fail());
    CHECK((fail_b.envelope.sup_growing || fail_b.envelope.diverged));

    // example_a admits const 1 through the Gevrey-1 equivalence
    auto pass_a = admits(*fam("example_a"), *ord("const:1"), g);
    CHECK(!pass_a.verdict.fail());

    CHECK_THROWS_AS((void)admits(*fam("gevrey:1"), *ord("sin_counterexample:1"), g), Error);
}

TEST_CASE("admissibility is stable under order equivalence") {
    GridSpec g = admissibility_grid();
    auto o1 = ord("const:1");
    auto o2 = ord("log_decay:1:2"); // equivalent to const 1
    REQUIRE(orders_equivalent(*o1, *o2, validation_grid()).pass());
    auto a1 = admits(*fam("gevrey:1"), *o1, g);
    auto a2 = admits(*fam("gevrey:1"), *o2, g);
    CHECK(a1.verdict.pass());
    CHECK(a2.verdict.pass());
}

TEST_CASE("d_M wrapped as an order validates exactly when the characterization passes") {
    GridSpec g;
    g.log_t_lo = 5.0;
    g.log_t_hi = 390.0;
    g.pts_per_decade = 16;
    auto dm_g1 = wrap_dm_as_order(fam("gevrey:1"), "d_M[gevrey(1)]");
    OrderValidation v1 = validate_order(*dm_g1, g);
    CHECK(v1.condition_c.pass());
    CHECK(v1.condition_d.pass());
    CHECK(std::fabs(dm_g1->rho_limit() - 1.0) < 5e-2);

    auto dm_a = wrap_dm_as_order(fam("example_a"), "d_M[example_a]");
    OrderValidation va = validate_order(*dm_a, g);
    CHECK(va.condition_d.fail()); // corners keep r rho' log r large along block seams
}

TEST_CASE("equivalent orders have V ratios tending to 1") {
    auto c1 = ord("const:1");
    for (const char* s : {"log_decay:1:2", "power_decay:1:1"}) {
        auto o = ord(s);
        REQUIRE(orders_equivalent(*c1, *o, validation_grid()).pass());
        double end = 1990.0;
        double ratio = std::exp(V_of(*c1, end) - V_of(*o, end)); // V_1/V_2 at the tail
        CHECK_MESSAGE(std::fabs(ratio - 1.0) <= 5e-2, s << " V ratio " << ratio);
    }
}
