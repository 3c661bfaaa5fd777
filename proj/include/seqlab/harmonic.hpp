#ifndef SEQLAB_HARMONIC_HPP
#define SEQLAB_HARMONIC_HPP

#include <cstdint>

#include "seqlab/big_index.hpp"

namespace seqlab {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kLog2 = 0.69314718055994530942;

// H_p: exact compensated summation for p <= 10^7, asymptotic
// log p + gamma + 1/(2p) - 1/(12 p^2) beyond. Small-p results are memoized.
double harmonic(uint64_t p);
double harmonic(const BigIndex& p);
// Asymptotic branch addressed by log p, for indices far beyond double range.
double harmonic_from_log(double log_p);

// (H_b - H_a) - log(b/a), i.e. eps_b - eps_a, computed without forming the
// individual eps terms (they cancel catastrophically against H for large p).
double harmonic_eps_diff(const BigIndex& a, const BigIndex& b);

} // namespace seqlab

#endif
