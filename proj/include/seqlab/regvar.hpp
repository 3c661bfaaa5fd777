#ifndef SEQLAB_REGVAR_HPP
#define SEQLAB_REGVAR_HPP

#include "seqlab/envelope.hpp"
#include "seqlab/props.hpp"
#include "seqlab/seqcore.hpp"
#include "seqlab/verdict.hpp"

namespace seqlab::regvar {

using seqcore::QuotientSeq;
using seqcore::ScheduleBudget;

// Envelope of m_{floor(lambda p)} / m_p over the schedule (values exponentiated
// from the internal log-domain stream).
EnvelopeEstimate ratio_limit(const QuotientSeq& seq, double lambda, const ScheduleBudget& b);
EnvelopeEstimate ratio_limit(const QuotientSeq& seq, double lambda);

struct RegVarReport {
    Verdict b_test;        // beta_p has a limit
    Verdict d_test;        // integer-ratio limits at l = 2, 3
    Verdict de_haan;       // the pair (2,3): log 2 / log 3 irrational
    double omega_b = 0.0;
    double omega_2 = 0.0;
    double omega_3 = 0.0;
    double omega = 0.0;    // fused estimate when the tests pass
    bool agree = false;    // (b) and (d) verdicts coincide
    EnvelopeEstimate beta_env;
    EnvelopeEstimate ratio2_env;
    EnvelopeEstimate ratio3_env;
};
RegVarReport regvar_index_test(const QuotientSeq& seq, const ScheduleBudget& b);
RegVarReport regvar_index_test(const QuotientSeq& seq);

struct BSRow {
    uint64_t p;
    double delta;  // beta_{p-1} - omega
    double C;
};
// Canonical representation m_p = (p+1)^omega C_p exp(sum_{j<=p} delta_j/j)
// with delta_p = beta_{p-1} - omega; C_p then tends to e^{omega(1+gamma)}.
struct BSDecomposition {
    double omega = 0.0;
    std::vector<BSRow> rows;
    double C_limit = 0.0;
    Verdict regvar_verdict; // delta -> 0 and C stabilizes
};
BSDecomposition bs_decompose(const QuotientSeq& seq, double omega, uint64_t pmax = 100000);

struct CharacterizationReport {
    RegVarReport rv;
    Verdict mg;
    Verdict snq;
    EnvelopeEstimate omega_env;
    props::GammaInterval gamma;
    bool gamma_known = false;
    bool omega_has_limit = false;
    bool satisfies_g = false; // strongly regular + log m_p/log p has a limit + gamma = omega
    std::string summary;
};
CharacterizationReport characterization_crosscheck(const QuotientSeq& seq, const ScheduleBudget& b);
CharacterizationReport characterization_crosscheck(const QuotientSeq& seq);

} // namespace seqlab::regvar

#endif
