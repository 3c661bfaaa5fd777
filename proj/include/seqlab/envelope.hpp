#ifndef SEQLAB_ENVELOPE_HPP
#define SEQLAB_ENVELOPE_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace seqlab {

struct StreamSample {
    double log_p;  // natural log of the index / abscissa
    double value;
};

// liminf/limsup of a scalar stream, decided from tail envelopes at
// rank-geometric cutoffs. tail_inf is nondecreasing and tail_sup
// nonincreasing in the cutoff by construction.
struct EnvelopeEstimate {
    std::string stream;
    std::vector<double> cutoff_log_p;
    std::vector<double> tail_inf;
    std::vector<double> tail_sup;
    double liminf = 0.0;  // deepest tail values
    double limsup = 0.0;
    bool inf_stable = false;  // relative change < tol across the last three cutoffs
    bool sup_stable = false;
    bool inf_falling = false; // monotone drift beyond tol across the last cutoffs
    bool sup_growing = false;
    bool diverged = false;    // non-finite values in the deepest tail
    size_t argmin = 0;        // sample indices witnessing the deepest tail extremes
    size_t argmax = 0;
    size_t n_samples = 0;
};

struct EnvelopeOptions {
    int cutoffs = 10;
    double stability_tol = 1e-3;
    // log-range shrink factor between consecutive stability windows; one
    // structural cycle of the schedule must fit inside a window
    double cycle_factor = 2.0;
};

EnvelopeEstimate build_envelope(const std::string& name, const std::vector<StreamSample>& samples,
                                const EnvelopeOptions& opt = {});

} // namespace seqlab

#endif
