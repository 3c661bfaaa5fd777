#ifndef SEQLAB_ASSOC_HPP
#define SEQLAB_ASSOC_HPP

#include <optional>
#include <vector>

#include "seqlab/seqcore.hpp"

namespace seqlab::assoc {

using seqcore::QuotientSeq;

// One grid point of the associated-function machinery. M(t) itself can
// exceed the double range on deep grids, so log_M is the primary field and
// M may round to +inf.
struct AssocEval {
    double log_t = 0.0;
    double nu_log = 0.0;     // log nu(t); -inf when nu = 0
    BigIndex nu;             // materialized when representable
    double M = 0.0;          // value of M(t)
    double log_M = 0.0;      // -inf when M = 0
    double d = 0.0;          // d_M(t) = log M(t) / log t
    bool d_defined = false;
    double residual = 0.0;   // nu(t)/M(t) - d_M(t)
};

// nu(t) = #{j : m_j <= t}. Rejects visibly non-monotone quotient streams.
BigIndex nu(const QuotientSeq& seq, double log_t);

AssocEval eval_assoc(const QuotientSeq& seq, double log_t);

// M(t) via the counting-function formula nu(t) log t - log M_{nu(t)}.
double M_assoc(const QuotientSeq& seq, double log_t);
double log_M_assoc(const QuotientSeq& seq, double log_t);

// log M(t) / log t; requires M(t) >= 1e-6 and log t >= 1, else throws.
double d_M(const QuotientSeq& seq, double log_t);
// nu(t)/M(t) - d_M(t); same domain restriction as d_M.
double d_residual(const QuotientSeq& seq, double log_t);

// geometric grid in log t
struct GridSpec {
    double log_t_lo = 2.0;
    double log_t_hi = 400.0;
    int pts_per_decade = 64;
    std::vector<double> points() const;
};

} // namespace seqlab::assoc

#endif
