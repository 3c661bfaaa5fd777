#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "seqlab/big_index.hpp"
#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"

using seqlab::BigIndex;

TEST_CASE("round trip is exact below 2^53") {
    for (uint64_t v : {0ull, 1ull, 2ull, 12345ull, (1ull << 52) + 977ull, (1ull << 53)}) {
        BigIndex b(v);
        CHECK(b.to_double() == double(v));
        if (v > 0) CHECK(b.to_u64() == v);
    }
}

TEST_CASE("log2 accuracy across magnitudes") {
    CHECK(BigIndex(1).log2() == 0.0);
    CHECK(BigIndex(1024).log2() == doctest::Approx(10.0).epsilon(1e-15));
    // 3^40, exact value known
    BigIndex v(1);
    for (int i = 0; i < 40; ++i) v = v.times(3);
    double expect = 40.0 * std::log2(3.0);
    CHECK(v.log2() == doctest::Approx(expect).epsilon(1e-15));
    // huge shifted value
    BigIndex huge = BigIndex(7).shifted_left(1000000);
    CHECK(huge.log2() == doctest::Approx(1000000.0 + std::log2(7.0)).epsilon(1e-15));
}

TEST_CASE("shift representation arithmetic") {
    BigIndex a = BigIndex::pow2(100);
    CHECK(a.bit_length() == 101);
    CHECK(a.plus(1).minus(1) == a);
    CHECK(a.times(3) == BigIndex(3).shifted_left(100));
    CHECK(a < a.plus(1));
    CHECK(a.plus(1) < a.times(2));
    CHECK(BigIndex::pow2(65536).bit_length() == 65537);
    // comparisons across mixed representations
    CHECK(BigIndex(1).shifted_left(10) == BigIndex(1024));
    CHECK(BigIndex(3).shifted_left(5) == BigIndex(96));
    CHECK(BigIndex(97) > BigIndex(3).shifted_left(5));
}

TEST_CASE("floor_scale matches integer arithmetic") {
    BigIndex p(1000);
    CHECK(p.floor_scale(2.0) == BigIndex(2000));
    CHECK(p.floor_scale(1.0) == p);
    CHECK(p.floor_scale(1.5) == BigIndex(1500));
    CHECK(p.floor_scale(0.5) == BigIndex(500));
    // huge operand keeps the scale in log2
    BigIndex big = BigIndex::pow2(5000);
    double l2 = big.floor_scale(3.0).log2();
    CHECK(l2 == doctest::Approx(5000.0 + std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("decimal and scientific printing") {
    CHECK(BigIndex(0).str() == "0");
    CHECK(BigIndex(981234567890123ull).str() == "981234567890123");
    CHECK(BigIndex::pow2(81).str() == "2417851639229258349412352");
    std::string s = BigIndex::pow2(100000).str();
    CHECK(s.substr(0, 1) == "~");
    CHECK(s.find("e+") != std::string::npos);
}

TEST_CASE("from_log2 round trip") {
    // small values round to the nearest integer
    CHECK(BigIndex::from_log2(3.0) == BigIndex(8));
    CHECK(BigIndex::from_log2(17.5) == BigIndex(185364));
    for (double l2 : {100.25, 3000.75, 1e9 + 0.5}) {
        BigIndex b = BigIndex::from_log2(l2);
        CHECK(b.log2() == doctest::Approx(l2).epsilon(1e-12));
    }
}

TEST_CASE("materialization guard rejects astronomically wide adds") {
    BigIndex huge = BigIndex::pow2(uint64_t(1) << 30);
    CHECK_THROWS_AS((void)huge.plus(1), seqlab::Error);
}

TEST_CASE("harmonic numbers: exact, asymptotic, and the seam") {
    CHECK(seqlab::harmonic(1) == 1.0);
    CHECK(seqlab::harmonic(10) == doctest::Approx(2.9289682539682538).epsilon(1e-14));
    // independent long-double oracle at 1e6
    long double s = 0.0L;
    for (uint64_t k = 1; k <= 1000000; ++k) s += 1.0L / (long double)k;
    CHECK(seqlab::harmonic(1000000) == doctest::Approx(double(s)).epsilon(1e-14));
    // asymptotic vs exact at the 1e7 boundary
    long double s7 = 0.0L;
    for (uint64_t k = 1; k <= 10000000; ++k) s7 += 1.0L / (long double)k;
    double asym = std::log(1e7) + seqlab::kEulerGamma + 1.0 / 2e7 - 1.0 / (12e14);
    CHECK(double(s7) == doctest::Approx(asym).epsilon(1e-14));
    CHECK(seqlab::harmonic(10000001) == doctest::Approx(double(s7) + 1.0 / 10000001.0).epsilon(1e-12));
    // H at 2^81 from the shift representation
    double h81 = seqlab::harmonic(BigIndex::pow2(81));
    CHECK(h81 == doctest::Approx(81.0 * seqlab::kLog2 + seqlab::kEulerGamma).epsilon(1e-12));
    CHECK(h81 == doctest::Approx(56.7221).epsilon(1e-4));
}
