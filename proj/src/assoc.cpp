#include "seqlab/assoc.hpp"

#include <cmath>

#include "seqlab/error.hpp"

namespace seqlab::assoc {

namespace {
constexpr double kMinM = 1e-6;
constexpr double kMinLogT = 1.0;
} // namespace

BigIndex nu(const QuotientSeq& seq, double log_t) {
    seqcore::require_nondecreasing_probe(seq);
    return seq.count_below(log_t);
}

AssocEval eval_assoc(const QuotientSeq& seq, double log_t) {
    seqcore::require_nondecreasing_probe(seq);
    AssocEval ev;
    ev.log_t = log_t;
    ev.nu = seq.count_below(log_t);
    ev.nu_log = ev.nu.log_natural();
    if (ev.nu.is_zero()) {
        ev.M = 0.0;
        ev.log_M = -std::numeric_limits<double>::infinity();
        return ev;
    }
    double gap = log_t - seq.mean_log_value(ev.nu); // log t - log(M_nu)/nu >= 0
    if (gap <= 0.0) {
        ev.M = 0.0;
        ev.log_M = -std::numeric_limits<double>::infinity();
        return ev;
    }
    ev.log_M = ev.nu_log + std::log(gap);
    ev.M = std::exp(ev.log_M);
    if (ev.log_M >= std::log(kMinM) && log_t >= kMinLogT) {
        ev.d_defined = true;
        ev.d = ev.log_M / log_t;
        ev.residual = std::exp(ev.nu_log - ev.log_M) - ev.d;
    }
    return ev;
}

double M_assoc(const QuotientSeq& seq, double log_t) { return eval_assoc(seq, log_t).M; }

double log_M_assoc(const QuotientSeq& seq, double log_t) { return eval_assoc(seq, log_t).log_M; }

double d_M(const QuotientSeq& seq, double log_t) {
    AssocEval ev = eval_assoc(seq, log_t);
    if (!ev.d_defined)
        throw input_error("d_M undefined: requires M(t) >= " + std::to_string(kMinM) + " and log t >= " +
                          std::to_string(kMinLogT));
    return ev.d;
}

double d_residual(const QuotientSeq& seq, double log_t) {
    AssocEval ev = eval_assoc(seq, log_t);
    if (!ev.d_defined) throw input_error("d_residual undefined at this t");
    return ev.residual;
}

std::vector<double> GridSpec::points() const {
    if (!(log_t_hi > log_t_lo) || pts_per_decade < 1) throw input_error("GridSpec: bad grid");
    double step = std::log(10.0) / double(pts_per_decade);
    std::vector<double> out;
    for (double x = log_t_lo; x <= log_t_hi + 1e-12; x += step) out.push_back(x);
    if (out.back() < log_t_hi - 1e-9) out.push_back(log_t_hi);
    return out;
}

} // namespace seqlab::assoc
