#include <doctest.h>

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"
#include "seqlab/props.hpp"
#include "seqlab/riesz.hpp"

using namespace seqlab;
using namespace seqlab::riesz;

namespace {
// literal reading of the delta construction, independent of the run tables
int delta_oracle(uint64_t k) {
    if (k <= 2) return 2;
    long double kj = 2.0L;
    for (int j = 0; j < 40; ++j) {
        long double qj = kj * kj;
        if ((long double)k <= qj) return 3;
        long double kj1 = kj * kj * kj;
        if ((long double)k <= kj1) return 2;
        kj = kj1;
    }
    return 2;
}
} // namespace

TEST_CASE("paper delta stream") {
    const DeltaSeq& d = paper_delta();
    for (uint64_t k = 1; k <= 100000; ++k)
        REQUIRE(int(d.at(BigIndex(k))) == delta_oracle(k));
    // block boundaries exactly: delta jumps after k_n and q_n
    CHECK(d.at(BigIndex(2)) == 2.0);
    CHECK(d.at(BigIndex(3)) == 3.0);
    CHECK(d.at(BigIndex(4)) == 3.0);
    CHECK(d.at(BigIndex(5)) == 2.0);
    CHECK(d.at(BigIndex(8)) == 2.0);
    CHECK(d.at(BigIndex(9)) == 3.0);
    CHECK(d.at(BigIndex(64)) == 3.0);
    CHECK(d.at(BigIndex(65)) == 2.0);
    CHECK(d.at(BigIndex::pow2(27)) == 2.0);          // k_3
    CHECK(d.at(BigIndex::pow2(27).plus(1)) == 3.0);
    CHECK(d.at(BigIndex::pow2(54)) == 3.0);          // q_3
    CHECK(d.at(BigIndex::pow2(54).plus(1)) == 2.0);
    CHECK(d.at(BigIndex::pow2(81)) == 2.0);          // k_4 = 2^81
}

TEST_CASE("riesz mean: hand values and the constant-delta oracle") {
    const DeltaSeq& d = paper_delta();
    // t_2 = (2/1 + 2/2)/log 2
    CHECK(riesz_mean(d, BigIndex(2)) == doctest::Approx(3.0 / kLog2).epsilon(1e-12));
    CHECK(riesz_mean(d, BigIndex(2)) == doctest::Approx(4.3281).epsilon(1e-4));
    // blockwise equals direct at k_1 = 8
    CHECK(riesz_mean(d, BigIndex(8)) == doctest::Approx(riesz_mean_direct(d, 8)).epsilon(1e-12));

    auto c2 = const_delta(2.0);
    // t_p = 2 H_p / log p
    CHECK(riesz_mean(*c2, BigIndex(1000000)) ==
          doctest::Approx(2.0 * harmonic(uint64_t(1000000)) / std::log(1e6)).epsilon(1e-12));
    CHECK(riesz_mean(*c2, BigIndex(1000000)) == doctest::Approx(2.0836).epsilon(1e-4));
}

TEST_CASE("blockwise and direct riesz means agree to 1e-12 up to 1e5") {
    const DeltaSeq& d = paper_delta();
    for (uint64_t p : {2ull, 7ull, 8ull, 9ull, 63ull, 64ull, 65ull, 511ull, 513ull, 4097ull, 29131ull, 100000ull}) {
        double direct = riesz_mean_direct(d, p);
        double block = riesz_mean(d, BigIndex(p));
        CHECK_MESSAGE(std::fabs(block - direct) <= 1e-12 * std::max(1.0, std::fabs(direct)), "p=" << p);
    }
}

TEST_CASE("subsequences: recurrence agreement and the two limits") {
    RieszReport rep = riesz_subsequences(paper_delta(), 20);
    REQUIRE(rep.rows.size() == 21);
    CHECK(rep.max_recurrence_gap <= 1e-9);
    CHECK(rep.t_kn_limit == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(rep.t_qn_limit == doctest::Approx(2.75).epsilon(1e-9));
    CHECK(rep.limits_differ);
    CHECK(rep.contraction_monotone);
    // the pointwise error is Theta(3^-n): about 1.6e-5 at n = 10, below 1e-6
    // only from n = 13 on
    CHECK(std::fabs(rep.rows[10].t_kn - 2.5) == doctest::Approx(1.57e-5).epsilon(0.02));
    CHECK(std::fabs(rep.rows[12].t_kn - 2.5) > 1e-6);
    CHECK(std::fabs(rep.rows[13].t_kn - 2.5) < 1e-6);
    CHECK(std::fabs(rep.rows[13].t_qn - 2.75) < 1e-6);
    // error contracts by 1/3 per step
    for (int n = 5; n < 15; ++n) {
        double e1 = std::fabs(rep.rows[n].t_kn - 2.5);
        double e2 = std::fabs(rep.rows[n + 1].t_kn - 2.5);
        CHECK(e2 / e1 == doctest::Approx(1.0 / 3.0).epsilon(0.05));
    }
}

TEST_CASE("omega envelope of the riesz family matches the subsequence limit") {
    auto seq = seqcore::make_family(seqcore::FamilySpec::parse_arg("example_riesz"));
    EnvelopeEstimate om = props::estimate_omega(*seq);
    RieszReport rep = riesz_subsequences(paper_delta(), 20);
    CHECK(std::fabs(om.liminf - rep.t_kn_limit) <= 1e-3);
}

TEST_CASE("moricz expressions") {
    auto logs = [](uint64_t k) { return std::log(double(k)); };
    auto constant = [](uint64_t) { return 1.5; };
    CHECK(moricz_expression(constant, 2.0, 100, true) == 0.0);
    CHECK(moricz_expression(constant, 2.0, 100, false) == 0.0);
    CHECK(moricz_expression(constant, 0.5, 100, true) == 0.0);

    // corrected lambda > 1 with s = log: expression ~ (lambda-1)/2 log p, and
    // dividing by the normalizer once more is stable at 1/2
    for (double lambda : {1.1, 1.25}) {
        for (uint64_t p : {uint64_t(1000), uint64_t(10000)}) {
            double c = moricz_expression(logs, lambda, p, true);
            uint64_t P = uint64_t(std::floor(std::pow(double(p), lambda)));
            double dh = harmonic(P) - harmonic(p);
            CHECK_MESSAGE(c / dh == doctest::Approx(0.5).epsilon(2e-3), "lambda=" << lambda << " p=" << p);
        }
    }
    // uncorrected normalizer kills the expression like p^-lambda
    double u3 = moricz_expression(logs, 1.25, 1000, false);
    double u5 = moricz_expression(logs, 1.25, 100000, false);
    CHECK(u3 / u5 > 100.0);

    // mirrored form for lambda < 1
    double m = moricz_expression(logs, 0.8, 10000, true);
    uint64_t P = uint64_t(std::floor(std::pow(1e4, 0.8)));
    double dh = harmonic(uint64_t(10000)) - harmonic(P);
    CHECK(m / dh == doctest::Approx(0.5).epsilon(2e-2));

    CHECK_THROWS_AS((void)moricz_expression(logs, 1.001, 100, true), Error);  // empty range
    CHECK_THROWS_AS((void)moricz_expression(logs, 3.0, 100000, true), Error); // range too large
}
