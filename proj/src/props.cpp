#include "seqlab/props.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/error.hpp"

namespace seqlab::props {

namespace {

constexpr double kSnqMargin = 1e-3;

double log_index(const BigIndex& p) { return p.is_zero() ? 0.0 : p.log_natural(); }

// m_{kp}/m_p in log domain over the schedule
std::vector<StreamSample> ratio_stream(const QuotientSeq& seq, const ScheduleBudget& b, uint64_t mult) {
    std::vector<StreamSample> out;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        if (p.is_zero()) continue;
        BigIndex q = p.times(mult);
        double num, den;
        try {
            den = seq.log_quotient(p);
            num = seq.log_quotient(q);
        } catch (const Error&) {
            continue; // table end
        }
        out.push_back({log_index(p), num - den});
    }
    return out;
}

std::vector<StreamSample> beta_stream(const QuotientSeq& seq, const ScheduleBudget& b) {
    std::vector<StreamSample> out;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        if (p.is_zero()) continue;
        auto sp = seqcore::alpha_beta(seq, p);
        out.push_back({log_index(p), sp.beta});
    }
    return out;
}

} // namespace

Verdict check_lc(const QuotientSeq& seq, const ScheduleBudget& b) {
    Verdict v;
    v.check = "lc";
    v.horizon_log2 = double(b.log2_max);
    double max_seam = 0.0;
    std::string max_seam_at;
    double prev = -std::numeric_limits<double>::infinity();
    BigIndex prev_p;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        double cur;
        try {
            cur = seq.log_quotient(p);
        } catch (const Error&) {
            break;
        }
        if (cur < prev - 1e-12 * std::max(1.0, std::fabs(prev))) {
            v.status = Status::fail;
            v.witnesses.push_back("m decreases between p=" + prev_p.str() + " and p=" + p.str());
            v.constants["violation"] = cur - prev;
            return v;
        }
        prev = cur;
        prev_p = p;
    }
    for (const auto& [p, p1] : seq.adjacency_probes(b)) {
        double a, c;
        try {
            a = seq.log_quotient(p);
            c = seq.log_quotient(p1);
        } catch (const Error&) {
            continue;
        }
        if (c < a - 1e-12 * std::max(1.0, std::fabs(a))) {
            v.status = Status::fail;
            v.witnesses.push_back("m decreases between p=" + p.str() + " and p=" + p1.str());
            v.constants["violation"] = c - a;
            return v;
        }
        if (c - a > max_seam) {
            max_seam = c - a;
            max_seam_at = p1.str();
        }
    }
    v.status = Status::pass;
    v.constants["max_seam_ratio"] = std::exp(max_seam);
    if (!max_seam_at.empty()) v.witnesses.push_back("largest one-step ratio at p=" + max_seam_at);
    return v;
}

Verdict check_lc(const QuotientSeq& seq) { return check_lc(seq, seq.default_budget()); }

MgReport check_mg(const QuotientSeq& seq, const ScheduleBudget& b) {
    MgReport rep;
    Verdict lc = check_lc(seq, b);
    auto horizon = double(b.log2_max);
    if (!lc.pass()) {
        rep.verdict.check = "mg";
        rep.verdict.status = Status::inconclusive;
        rep.verdict.note = "mg criterion requires (lc)";
        rep.verdict.horizon_log2 = horizon;
        rep.verdict_beta = rep.verdict;
        return rep;
    }
    EnvelopeOptions eo;
    eo.cycle_factor = seq.schedule_log_cycle();
    rep.ratio_env = build_envelope("m_2p_over_m_p", ratio_stream(seq, b, 2), eo);
    rep.beta_env = build_envelope("beta_p", beta_stream(seq, b), eo);

    auto decide = [&](const EnvelopeEstimate& env, const char* name) {
        Verdict v;
        v.check = name;
        v.horizon_log2 = horizon;
        v.constants["log_sup"] = env.tail_sup.front(); // sup over every sampled p
        v.constants["sup"] = std::exp(env.tail_sup.front());
        if (env.diverged || env.sup_growing) {
            v.status = Status::fail;
            v.witnesses.push_back("tail supremum diverges; envelope " + env.stream);
        } else if (env.sup_stable) {
            v.status = Status::pass;
        } else {
            v.status = Status::inconclusive;
            v.note = "tail supremum not yet stable";
        }
        return v;
    };
    rep.verdict = decide(rep.ratio_env, "mg");
    rep.verdict_beta = decide(rep.beta_env, "mg_beta_route");
    rep.routes_agree = rep.verdict.status == rep.verdict_beta.status;
    return rep;
}

MgReport check_mg(const QuotientSeq& seq) { return check_mg(seq, seq.default_budget()); }

Verdict check_snq(const QuotientSeq& seq, const ScheduleBudget& b, int k) {
    Verdict v;
    v.check = "snq";
    v.horizon_log2 = double(b.log2_max);
    std::vector<int> ks = k > 0 ? std::vector<int>{k} : std::vector<int>{2, 4, 8};
    bool all_fail = true;
    EnvelopeOptions eo;
    eo.cycle_factor = seq.schedule_log_cycle();
    for (int kk : ks) {
        EnvelopeEstimate env = build_envelope("m_kp_over_m_p", ratio_stream(seq, b, uint64_t(kk)), eo);
        double inf_ratio = std::exp(env.liminf);
        bool above = inf_ratio > 1.0 + kSnqMargin;
        if (above && !env.inf_falling) {
            v.status = Status::pass;
            v.constants["k"] = kk;
            v.constants["liminf"] = inf_ratio;
            return v;
        }
        if (above) all_fail = false;
        if (kk == ks.front()) {
            v.constants["k"] = kk;
            v.constants["liminf"] = inf_ratio;
        }
    }
    if (all_fail) {
        v.status = Status::fail;
        v.witnesses.push_back("tail infimum of m_kp/m_p settles at or below 1+" + std::to_string(kSnqMargin) +
                              " for all tried k");
    } else {
        v.status = Status::inconclusive;
        v.note = "liminf above margin but still falling";
    }
    return v;
}

Verdict check_snq(const QuotientSeq& seq, int k) { return check_snq(seq, seq.default_budget(), k); }

Verdict check_equiv_quotients(const QuotientSeq& a, const QuotientSeq& b, const ScheduleBudget& budget) {
    Verdict v;
    v.check = "equiv_quotients";
    v.horizon_log2 = double(budget.log2_max);
    std::vector<BigIndex> sched = a.sample_schedule(budget);
    for (const BigIndex& p : b.sample_schedule(budget)) sched.push_back(p);
    std::sort(sched.begin(), sched.end());
    sched.erase(std::unique(sched.begin(), sched.end()), sched.end());

    std::vector<StreamSample> stream;
    for (const BigIndex& p : sched) {
        double va, vb;
        try {
            va = a.log_quotient(p);
            vb = b.log_quotient(p);
        } catch (const Error&) {
            continue;
        }
        if (std::isfinite(va) && std::isfinite(vb)) stream.push_back({log_index(p), va - vb});
    }
    EnvelopeOptions eo;
    eo.cycle_factor = std::max(a.schedule_log_cycle(), b.schedule_log_cycle());
    EnvelopeEstimate env = build_envelope("log_ratio", stream, eo);
    v.constants["c"] = std::exp(env.liminf);
    v.constants["d"] = std::exp(env.limsup);
    if (env.diverged || env.sup_growing || env.inf_falling) {
        v.status = Status::fail;
        v.witnesses.push_back("quotient ratio drifts; extreme at p index " + std::to_string(env.argmax));
    } else if (env.inf_stable && env.sup_stable) {
        v.status = Status::pass;
    } else {
        v.status = Status::inconclusive;
        v.note = "ratio envelope not settled at this horizon";
    }
    return v;
}

Verdict check_equiv_quotients(const QuotientSeq& a, const QuotientSeq& b) {
    ScheduleBudget ba = a.default_budget(), bb = b.default_budget();
    ScheduleBudget joint = ba.log2_max < bb.log2_max ? ba : bb;
    return check_equiv_quotients(a, b, joint);
}

DefectResult almost_increasing_defect(const QuotientSeq& seq, double gamma, const ScheduleBudget& b) {
    if (!(gamma > 0)) throw input_error("almost_increasing_defect: gamma must be > 0");
    DefectResult res;
    std::vector<double> defect_log; // running max of L(p) - L(q) over sampled pairs p <= q
    double run_max = -std::numeric_limits<double>::infinity();
    double best = 0.0;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        double lm;
        try {
            lm = seq.log_quotient(p);
        } catch (const Error&) {
            break;
        }
        double lp1 = p.bit_length() <= 40 ? std::log(double(p.to_u64() + 1)) : log_index(p);
        double L = lm - gamma * lp1;
        run_max = std::max(run_max, L);
        best = std::max(best, run_max - L);
        defect_log.push_back(best);
    }
    size_t n = defect_log.size();
    if (n < 8) {
        res.log_defect = best;
        res.constant = std::exp(best);
        return res;
    }
    double m2 = defect_log[n / 2], m3 = defect_log[(3 * n) / 4], m4 = defect_log[n - 1];
    res.log_defect = m4;
    res.constant = std::exp(m4);
    res.diverging = (m4 - m2 >= std::log(1.05)) && (m4 > m3 + 1e-12) && (m3 > m2 + 1e-12);
    res.bounded = (m4 - m2 <= std::log(1.0 + 1e-3));
    return res;
}

GammaInterval estimate_gamma_index(const QuotientSeq& seq, const ScheduleBudget& b) {
    Verdict lc = check_lc(seq, b);
    if (!lc.pass()) throw input_error("estimate_gamma_index: sequence is not (lc)");
    MgReport mg = check_mg(seq, b);
    Verdict snq = check_snq(seq, b);
    if (!mg.verdict.pass() || !snq.pass())
        throw input_error("estimate_gamma_index: sequence is not strongly regular at this horizon");

    EnvelopeEstimate omega = estimate_omega(seq, b);
    double hi = std::isfinite(omega.liminf) ? std::max(1.0, omega.liminf) + 1.0 : 4.0;
    GammaInterval iv;
    for (int tries = 0; tries < 6; ++tries) {
        if (almost_increasing_defect(seq, hi, b).diverging) break;
        hi *= 2.0;
    }
    double lo = 0.0;
    if (!almost_increasing_defect(seq, hi, b).diverging) {
        iv.lo = lo;
        iv.hi = hi;
        iv.conclusive = false;
        return iv;
    }
    for (int it = 0; it < 48 && hi - lo > 0.05; ++it) {
        double mid = 0.5 * (lo + hi);
        DefectResult d = almost_increasing_defect(seq, mid, b);
        if (d.diverging)
            hi = mid;
        else if (d.bounded)
            lo = mid;
        else {
            iv.lo = lo;
            iv.hi = hi;
            iv.conclusive = false;
            return iv;
        }
    }
    iv.lo = lo;
    iv.hi = hi;
    iv.conclusive = true;
    return iv;
}

GammaInterval estimate_gamma_index(const QuotientSeq& seq) {
    return estimate_gamma_index(seq, seq.default_budget());
}

EnvelopeEstimate estimate_omega(const QuotientSeq& seq, const ScheduleBudget& b) {
    std::vector<StreamSample> stream;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        if (p < BigIndex(2)) continue;
        double lp = log_index(p);
        double lm;
        try {
            lm = seq.log_quotient(p);
        } catch (const Error&) {
            break;
        }
        stream.push_back({lp, lm / lp});
    }
    EnvelopeOptions eo;
    eo.cycle_factor = seq.schedule_log_cycle();
    return build_envelope("log_m_over_log_p", stream, eo);
}

EnvelopeEstimate estimate_omega(const QuotientSeq& seq) { return estimate_omega(seq, seq.default_budget()); }

} // namespace seqlab::props
