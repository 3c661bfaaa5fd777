#ifndef SEQLAB_PROPS_HPP
#define SEQLAB_PROPS_HPP

#include <optional>

#include "seqlab/envelope.hpp"
#include "seqlab/seqcore.hpp"
#include "seqlab/verdict.hpp"

namespace seqlab::props {

using seqcore::QuotientSeq;
using seqcore::ScheduleBudget;

// pass iff the quotients are nondecreasing on the schedule and across all
// adjacency probes (block seams included for the block families).
Verdict check_lc(const QuotientSeq& seq, const ScheduleBudget& b);
Verdict check_lc(const QuotientSeq& seq);

// Moderate growth via bounded m_{2p}/m_p; also evaluates the
// sup m_p / M_p^{1/p} route, whose verdict is recorded for cross-checking.
struct MgReport {
    Verdict verdict;           // ratio criterion
    Verdict verdict_beta;      // sup e^{beta_p} criterion
    EnvelopeEstimate ratio_env;
    EnvelopeEstimate beta_env;
    bool routes_agree = false;
};
MgReport check_mg(const QuotientSeq& seq, const ScheduleBudget& b);
MgReport check_mg(const QuotientSeq& seq);

// Strong non-quasianalyticity via liminf m_{kp}/m_p > 1; tries k in {2,4,8}
// when k == 0.
Verdict check_snq(const QuotientSeq& seq, const ScheduleBudget& b, int k = 0);
Verdict check_snq(const QuotientSeq& seq, int k = 0);

Verdict check_equiv_quotients(const QuotientSeq& a, const QuotientSeq& b, const ScheduleBudget& budget);
Verdict check_equiv_quotients(const QuotientSeq& a, const QuotientSeq& b);

struct DefectResult {
    double constant = 1.0;   // smallest C >= 1 seen over the sampled pairs
    bool diverging = false;
    bool bounded = false;    // settled over the deep half of the horizon
    double log_defect = 0.0;
};
DefectResult almost_increasing_defect(const QuotientSeq& seq, double gamma, const ScheduleBudget& b);

struct GammaInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool conclusive = false;
    bool contains(double g) const { return lo - 1e-9 <= g && g <= hi + 1e-9; }
};
// Bisection on the almost-increase defect; requires a strongly regular input.
GammaInterval estimate_gamma_index(const QuotientSeq& seq, const ScheduleBudget& b);
GammaInterval estimate_gamma_index(const QuotientSeq& seq);

// Envelope of log m_p / log p; liminf estimate is omega(M), divergence flag
// signals omega = infinity.
EnvelopeEstimate estimate_omega(const QuotientSeq& seq, const ScheduleBudget& b);
EnvelopeEstimate estimate_omega(const QuotientSeq& seq);

} // namespace seqlab::props

#endif
