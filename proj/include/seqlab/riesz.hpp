#ifndef SEQLAB_RIESZ_HPP
#define SEQLAB_RIESZ_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "seqlab/big_index.hpp"

namespace seqlab::riesz {

// delta_k stream with constant-delta runs; blockwise sums go through the
// harmonic numbers so indices like 2^(3^20) stay cheap.
class DeltaSeq {
public:
    struct Run {
        BigIndex lo; // exclusive
        BigIndex hi; // inclusive
        double delta;
    };
    virtual ~DeltaSeq() = default;
    virtual double at(const BigIndex& k) const = 0;
    // runs covering (0, cap]; cap given as log2 of the largest index needed
    virtual std::vector<Run> runs(uint64_t log2_cap) const = 0;
};

// delta_1 = delta_2 = 2; 3 on (k_j, q_j]; 2 on (q_j, k_{j+1}]
// with k_n = 2^(3^n), q_n = k_n^2.
const DeltaSeq& paper_delta();
// constant stream, for oracle checks like t_p = c H_p / log p
std::unique_ptr<DeltaSeq> const_delta(double c);

// sum_{k<=p} delta_k / k, blockwise
double delta_harmonic_sum(const DeltaSeq& d, const BigIndex& p);
// t_p = (sum_{k<=p} delta_k/k) / log p, p >= 2
double riesz_mean(const DeltaSeq& d, const BigIndex& p);
// literal summation oracle, p <= 10^7
double riesz_mean_direct(const DeltaSeq& d, uint64_t p);

struct RieszRow {
    int n;
    double log2_kn;
    double t_kn;
    double t_qn;
    double t_qn_recurrence; // from t_kn via the two-term recurrence
    double t_kn_recurrence; // from t_q(n-1); equals t_kn for n = 0
};

struct RieszReport {
    std::vector<RieszRow> rows;
    double t_kn_limit = 0.0;       // deepest direct value
    double t_qn_limit = 0.0;
    double max_recurrence_gap = 0.0;
    bool limits_differ = false;    // |lim t_kn - lim t_qn| > 0 => (t_p) has no limit
    bool contraction_monotone = false;
};

RieszReport riesz_subsequences(const DeltaSeq& d, int nmax);

// Moricz expression around Riesz summability: lambda > 1 uses
// sum_{k=p+1}^{floor(p^lambda)} (s_k - s_p)/k, lambda < 1 the mirrored form;
// the normalizer is H_{floor(p^lambda)} - H_p when corrected, else the
// original (floor(p^lambda) - p) H_p.
double moricz_expression(const std::function<double(uint64_t)>& s, double lambda, uint64_t p, bool corrected);

} // namespace seqlab::riesz

#endif
