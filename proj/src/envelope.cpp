#include "seqlab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "seqlab/error.hpp"

namespace seqlab {

namespace {
bool close(double a, double b, double tol) {
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
}
bool drift(double a, double b, double tol) {
    if (!std::isfinite(a) || !std::isfinite(b)) return true;
    return std::fabs(a - b) > tol * std::max(1.0, std::fabs(b));
}
} // namespace

EnvelopeEstimate build_envelope(const std::string& name, const std::vector<StreamSample>& samples_in,
                                const EnvelopeOptions& opt) {
    if (samples_in.empty()) {
        EnvelopeEstimate empty;
        empty.stream = name;
        empty.liminf = std::numeric_limits<double>::quiet_NaN();
        empty.limsup = std::numeric_limits<double>::quiet_NaN();
        return empty;
    }
    std::vector<StreamSample> samples = samples_in;
    std::stable_sort(samples.begin(), samples.end(),
                     [](const StreamSample& a, const StreamSample& b) { return a.log_p < b.log_p; });

    size_t n = samples.size();
    std::vector<double> suf_min(n), suf_max(n);
    std::vector<size_t> suf_argmin(n), suf_argmax(n);
    {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -std::numeric_limits<double>::infinity();
        size_t amn = n - 1, amx = n - 1;
        for (size_t i = n; i-- > 0;) {
            double v = samples[i].value;
            if (v <= mn) { mn = v; amn = i; }
            if (v >= mx) { mx = v; amx = i; }
            suf_min[i] = mn;
            suf_max[i] = mx;
            suf_argmin[i] = amn;
            suf_argmax[i] = amx;
        }
    }

    EnvelopeEstimate env;
    env.stream = name;
    env.n_samples = n;

    double lo_lp = samples.front().log_p, hi_lp = samples.back().log_p;
    double R = hi_lp - lo_lp;
    // Structural samples often sit exactly on the thresholds (era boundaries
    // are powers of two in log p), so windows are top-inclusive and the final
    // suffix is bottom-inclusive; both resolve boundary ties deterministically.
    auto first_above = [&](double thresh) {
        size_t idx = 0;
        double t = thresh + 1e-9 * std::max(1.0, std::fabs(thresh));
        while (idx + 1 < n && samples[idx].log_p <= t) ++idx;
        return idx;
    };
    auto first_at_or_above = [&](double thresh) {
        size_t idx = 0;
        double t = thresh - 1e-9 * std::max(1.0, std::fabs(thresh));
        while (idx + 1 < n && samples[idx].log_p < t) ++idx;
        return idx;
    };

    // Two window geometries. Block families are self-similar: an era spans a
    // constant factor of the whole log range, so the three stability windows
    // shrink geometrically from the top and each holds a whole era. Smooth
    // streams converge like 1/p; there the cutoffs are fixed log-width steps
    // anchored at the deep end and stability is read off suffix envelopes.
    bool block_mode = opt.cycle_factor >= 1.5;
    double F = std::max(1.5, opt.cycle_factor);
    std::vector<size_t> cut_idx{0};
    size_t suffix_idx = 0;
    if (R > 0 && n >= 4) {
        if (block_mode) {
            for (int k = 3; k >= 1; --k) {
                size_t idx = first_above(lo_lp + R * std::pow(F, -double(k)));
                if (idx > cut_idx.back() && idx + 1 < n) cut_idx.push_back(idx);
            }
            suffix_idx = first_at_or_above(lo_lp + R / F);
        } else {
            double W = std::max(0.6931471805599453, 4.0 * R / double(n));
            for (int k = 3; k >= 1; --k) {
                size_t idx = first_above(hi_lp - double(k) * W);
                if (idx > cut_idx.back() && idx + 1 < n) cut_idx.push_back(idx);
            }
            suffix_idx = first_at_or_above(hi_lp - W);
        }
    } else if (n >= 4) {
        cut_idx = {0, n / 4, n / 2, (3 * n) / 4};
        suffix_idx = (3 * n) / 4;
    }

    for (size_t idx : cut_idx) {
        env.cutoff_log_p.push_back(samples[idx].log_p);
        env.tail_inf.push_back(suf_min[idx]);
        env.tail_sup.push_back(suf_max[idx]);
    }
    size_t last = std::min(suffix_idx, n - 1);
    env.liminf = suf_min[last];
    env.limsup = suf_max[last];
    env.argmin = suf_argmin[last];
    env.argmax = suf_argmax[last];

    size_t c = cut_idx.size();
    double tol = opt.stability_tol;
    if (c >= 3) {
        std::vector<double> st_min, st_max;
        if (block_mode) {
            // window extremes between consecutive cutoffs
            for (size_t k = 0; k < c; ++k) {
                size_t lo = cut_idx[k];
                size_t hi = (k + 1 < c) ? cut_idx[k + 1] : n;
                double mn = std::numeric_limits<double>::infinity();
                double mx = -std::numeric_limits<double>::infinity();
                for (size_t i = lo; i < hi; ++i) {
                    mn = std::min(mn, samples[i].value);
                    mx = std::max(mx, samples[i].value);
                }
                st_min.push_back(mn);
                st_max.push_back(mx);
            }
        } else {
            for (size_t idx : cut_idx) {
                st_min.push_back(suf_min[idx]);
                st_max.push_back(suf_max[idx]);
            }
        }
        const auto& wm = st_min;
        const auto& wx = st_max;
        env.inf_stable = close(wm[c - 3], wm[c - 2], tol) && close(wm[c - 2], wm[c - 1], tol);
        env.sup_stable = close(wx[c - 3], wx[c - 2], tol) && close(wx[c - 2], wx[c - 1], tol);
        // growth must not decelerate: a stream converging to its supremum has
        // geometrically shrinking increments
        env.inf_falling = wm[c - 1] <= wm[c - 2] && wm[c - 2] <= wm[c - 3] && drift(wm[c - 1], wm[c - 3], tol) &&
                          wm[c - 1] < wm[c - 3] && (wm[c - 2] - wm[c - 1]) >= 0.8 * (wm[c - 3] - wm[c - 2]);
        env.sup_growing = wx[c - 1] >= wx[c - 2] && wx[c - 2] >= wx[c - 3] && drift(wx[c - 1], wx[c - 3], tol) &&
                          wx[c - 1] > wx[c - 3] && (wx[c - 1] - wx[c - 2]) >= 0.8 * (wx[c - 2] - wx[c - 3]);
    }
    // Prefix-extreme drift catches unbounded envelopes whose per-era peaks do
    // not align with the window grid; same no-deceleration rule.
    if (n >= 16 && R > 0) {
        double t_q = block_mode ? lo_lp + R / (F * F) : lo_lp + 0.25 * R;
        double t_h = block_mode ? lo_lp + R / F : lo_lp + 0.5 * R;
        double q_max = -std::numeric_limits<double>::infinity(), q_min = std::numeric_limits<double>::infinity();
        double h_max = q_max, h_min = q_min, f_max = q_max, f_min = q_min;
        for (size_t i = 0; i < n; ++i) {
            double v = samples[i].value;
            if (samples[i].log_p <= t_q) { q_max = std::max(q_max, v); q_min = std::min(q_min, v); }
            if (samples[i].log_p <= t_h) { h_max = std::max(h_max, v); h_min = std::min(h_min, v); }
            f_max = std::max(f_max, v);
            f_min = std::min(f_min, v);
        }
        if (f_max > h_max && h_max > q_max && drift(f_max, h_max, tol) && drift(h_max, q_max, tol) &&
            (f_max - h_max) >= 0.8 * (h_max - q_max))
            env.sup_growing = true;
        if (f_min < h_min && h_min < q_min && drift(f_min, h_min, tol) && drift(h_min, q_min, tol) &&
            (h_min - f_min) >= 0.8 * (q_min - h_min))
            env.inf_falling = true;
    }
    if (std::isinf(env.limsup) && env.limsup > 0) env.sup_growing = true;
    if (std::isinf(env.liminf) && env.liminf < 0) env.inf_falling = true;
    if (env.sup_growing) env.sup_stable = false;
    if (env.inf_falling) env.inf_stable = false;

    bool tail_nonfinite = false;
    for (size_t i = std::min(suffix_idx, cut_idx.back()); i < n; ++i)
        if (!std::isfinite(samples[i].value)) tail_nonfinite = true;
    env.diverged = tail_nonfinite || std::isinf(env.liminf) || std::isinf(env.limsup);
    return env;
}

} // namespace seqlab
