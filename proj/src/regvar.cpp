#include "seqlab/regvar.hpp"

#include <cmath>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"

namespace seqlab::regvar {

namespace {
constexpr double kLimitTol = 2e-2; // spread below which an envelope counts as a limit

double log_index(const BigIndex& p) { return p.is_zero() ? 0.0 : p.log_natural(); }
} // namespace

EnvelopeEstimate ratio_limit(const QuotientSeq& seq, double lambda, const ScheduleBudget& b) {
    if (!(lambda > 0)) throw input_error("ratio_limit: lambda must be > 0");
    bool integral = std::fabs(lambda - std::round(lambda)) < 1e-15 && lambda < 1e6;
    std::vector<StreamSample> stream;
    for (const BigIndex& p : seq.sample_schedule(b)) {
        if (p.is_zero()) continue;
        BigIndex q = integral ? p.times(uint64_t(std::llround(lambda))) : p.floor_scale(lambda);
        if (q.is_zero()) continue;
        double num, den;
        try {
            den = seq.log_quotient(p);
            num = seq.log_quotient(q);
        } catch (const Error&) {
            continue;
        }
        stream.push_back({log_index(p), num - den});
    }
    EnvelopeOptions eo;
    eo.cycle_factor = seq.schedule_log_cycle();
    EnvelopeEstimate env = build_envelope("ratio_lambda", stream, eo);
    // report in ratio units
    env.liminf = std::exp(env.liminf);
    env.limsup = std::exp(env.limsup);
    for (auto& v : env.tail_inf) v = std::exp(v);
    for (auto& v : env.tail_sup) v = std::exp(v);
    return env;
}

EnvelopeEstimate ratio_limit(const QuotientSeq& seq, double lambda) {
    return ratio_limit(seq, lambda, seq.default_budget());
}

RegVarReport regvar_index_test(const QuotientSeq& seq, const ScheduleBudget& b) {
    seqcore::require_nondecreasing_probe(seq);
    RegVarReport rep;
    double horizon = double(b.log2_max);

    rep.ratio2_env = ratio_limit(seq, 2.0, b);
    rep.ratio3_env = ratio_limit(seq, 3.0, b);
    {
        std::vector<StreamSample> bs;
        for (const BigIndex& p : seq.sample_schedule(b)) {
            if (p.is_zero()) continue;
            auto sp = seqcore::alpha_beta(seq, p);
            if (std::isfinite(sp.beta)) bs.push_back({log_index(p), sp.beta});
        }
        EnvelopeOptions eo;
        eo.cycle_factor = seq.schedule_log_cycle();
        rep.beta_env = build_envelope("beta_p", bs, eo);
    }

    auto has_limit = [&](const EnvelopeEstimate& env, double scale) {
        if (env.diverged || env.sup_growing || env.inf_falling) return false;
        return std::fabs(env.limsup - env.liminf) <= kLimitTol * scale && env.inf_stable && env.sup_stable;
    };

    rep.omega_b = 0.5 * (rep.beta_env.liminf + rep.beta_env.limsup);
    rep.b_test.check = "regvar_b_beta_limit";
    rep.b_test.horizon_log2 = horizon;
    rep.b_test.constants["liminf"] = rep.beta_env.liminf;
    rep.b_test.constants["limsup"] = rep.beta_env.limsup;
    if (has_limit(rep.beta_env, std::max(1.0, std::fabs(rep.omega_b))) && rep.omega_b > 0) {
        rep.b_test.status = Status::pass;
        rep.b_test.constants["omega"] = rep.omega_b;
    } else if (rep.beta_env.inf_stable && rep.beta_env.sup_stable) {
        rep.b_test.status = Status::fail;
        rep.b_test.witnesses.push_back("beta_p envelope settles with a gap: [" + std::to_string(rep.beta_env.liminf) +
                                       ", " + std::to_string(rep.beta_env.limsup) + "]");
    } else if (rep.beta_env.diverged || rep.beta_env.sup_growing || rep.beta_env.inf_falling) {
        rep.b_test.status = Status::fail;
        rep.b_test.witnesses.push_back("beta_p drifts");
    } else {
        rep.b_test.status = Status::inconclusive;
    }

    // integer-ratio tests in log domain
    auto omega_of = [](const EnvelopeEstimate& env, double ell) {
        if (!(env.liminf > 0.0) || !std::isfinite(env.limsup)) return std::numeric_limits<double>::quiet_NaN();
        return 0.5 * (std::log(env.liminf) + std::log(env.limsup)) / std::log(ell);
    };
    rep.omega_2 = omega_of(rep.ratio2_env, 2.0);
    rep.omega_3 = omega_of(rep.ratio3_env, 3.0);
    auto ratio_has_limit = [&](const EnvelopeEstimate& env, double ell) {
        if (env.diverged || env.sup_growing || env.inf_falling) return false;
        if (!(env.liminf > 0.0) || !std::isfinite(env.limsup)) return false;
        double spread = (std::log(env.limsup) - std::log(env.liminf)) / std::log(ell);
        return spread <= kLimitTol && env.inf_stable && env.sup_stable;
    };
    bool l2 = ratio_has_limit(rep.ratio2_env, 2.0);
    bool l3 = ratio_has_limit(rep.ratio3_env, 3.0);
    bool pair_agree = std::fabs(rep.omega_2 - rep.omega_3) <= kLimitTol;

    rep.de_haan.check = "regvar_de_haan_pair";
    rep.de_haan.horizon_log2 = horizon;
    rep.de_haan.constants["omega_2"] = rep.omega_2;
    rep.de_haan.constants["omega_3"] = rep.omega_3;
    if (l2 && l3 && pair_agree) {
        rep.de_haan.status = Status::pass;
    } else if (!l2 || !l3) {
        bool settled = (rep.ratio2_env.inf_stable && rep.ratio2_env.sup_stable &&
                        rep.ratio3_env.inf_stable && rep.ratio3_env.sup_stable) ||
                       rep.ratio2_env.diverged || rep.ratio3_env.diverged ||
                       rep.ratio2_env.sup_growing || rep.ratio3_env.sup_growing;
        rep.de_haan.status = settled ? Status::fail : Status::inconclusive;
        if (settled)
            rep.de_haan.witnesses.push_back("ratio envelope gap: l=2 in [" + std::to_string(rep.ratio2_env.liminf) +
                                            ", " + std::to_string(rep.ratio2_env.limsup) + "]");
    } else {
        rep.de_haan.status = Status::fail;
        rep.de_haan.witnesses.push_back("l=2 and l=3 ratio indices disagree");
    }
    rep.d_test = rep.de_haan;
    rep.d_test.check = "regvar_d_integer_ratios";

    rep.agree = rep.b_test.status == rep.d_test.status;
    if (rep.b_test.pass() && rep.d_test.pass())
        rep.omega = 0.5 * (rep.omega_b + 0.5 * (rep.omega_2 + rep.omega_3));
    return rep;
}

RegVarReport regvar_index_test(const QuotientSeq& seq) {
    return regvar_index_test(seq, seq.default_budget());
}

BSDecomposition bs_decompose(const QuotientSeq& seq, double omega, uint64_t pmax) {
    if (!std::isfinite(omega)) throw input_error("bs_decompose: omega must be finite");
    BSDecomposition bs;
    bs.omega = omega;
    double delta_cum = 0.0; // sum_{j<=p} delta_j / j
    std::vector<StreamSample> delta_stream, c_stream;
    uint64_t stride = 1;
    for (uint64_t p = 1; p <= pmax; ++p) {
        auto prev = seqcore::alpha_beta(seq, BigIndex(p - 1));
        double delta = prev.beta - omega;
        delta_cum += delta / double(p);
        double log_m = seq.log_quotient(BigIndex(p));
        double C = std::exp(log_m - omega * std::log(double(p + 1)) - delta_cum);
        if (p % stride == 0 || p == pmax) {
            bs.rows.push_back({p, delta, C});
            delta_stream.push_back({std::log(double(p)), delta});
            c_stream.push_back({std::log(double(p)), C});
            if (bs.rows.size() % 256 == 0) stride *= 2;
        }
    }
    bs.C_limit = bs.rows.back().C;
    EnvelopeEstimate de = build_envelope("delta_p", delta_stream, {10, 1e-2});
    EnvelopeEstimate ce = build_envelope("C_p", c_stream, {10, 1e-2});
    Verdict& v = bs.regvar_verdict;
    v.check = "bs_regular_variation";
    v.horizon_log2 = std::log2(double(pmax));
    v.constants["delta_tail"] = std::max(std::fabs(de.liminf), std::fabs(de.limsup));
    v.constants["C_limit"] = bs.C_limit;
    // C_p converges like log p / p, far slower than the window cadence, so
    // the verdict reads the deep-suffix gaps rather than window stability
    bool delta_to_zero = v.constants["delta_tail"] <= 2e-2 && !de.inf_falling && !de.sup_growing;
    bool c_settles = !ce.sup_growing && !ce.inf_falling && !ce.diverged &&
                     (ce.limsup - ce.liminf) <= 2e-2 * std::max(1.0, std::fabs(ce.limsup));
    if (delta_to_zero && c_settles) {
        v.status = Status::pass;
    } else {
        v.status = Status::fail;
        v.witnesses.push_back(delta_to_zero ? "C_p does not settle" : "delta_p does not tend to 0");
    }
    return bs;
}

CharacterizationReport characterization_crosscheck(const QuotientSeq& seq, const ScheduleBudget& b) {
    CharacterizationReport rep;
    rep.rv = regvar_index_test(seq, b);
    props::MgReport mg = props::check_mg(seq, b);
    rep.mg = mg.verdict;
    rep.snq = props::check_snq(seq, b);
    rep.omega_env = props::estimate_omega(seq, b);
    rep.omega_has_limit = !rep.omega_env.diverged && rep.omega_env.inf_stable && rep.omega_env.sup_stable &&
                          (rep.omega_env.limsup - rep.omega_env.liminf) <=
                              kLimitTol * std::max(1.0, std::fabs(rep.omega_env.limsup));
    bool strongly_regular = rep.mg.pass() && rep.snq.pass();
    if (strongly_regular) {
        try {
            rep.gamma = props::estimate_gamma_index(seq, b);
            rep.gamma_known = true;
        } catch (const Error&) {
            rep.gamma_known = false;
        }
    }
    rep.satisfies_g = strongly_regular && rep.omega_has_limit && rep.gamma_known &&
                      rep.gamma.lo <= rep.omega_env.liminf + 0.03 && rep.gamma.hi >= rep.omega_env.liminf - 0.03;

    bool rv_pass = rep.rv.b_test.pass() && rep.rv.d_test.pass();
    if (rv_pass && rep.satisfies_g)
        rep.summary = "regularly varying with omega = " + std::to_string(rep.rv.omega) + "; satisfies (g)";
    else if (!rv_pass && rep.satisfies_g)
        rep.summary = "satisfies (g), fails (a)-(d)";
    else if (!rv_pass && !rep.omega_has_limit)
        rep.summary = "no log-quotient limit; fails (a)-(d) and (g)";
    else
        rep.summary = "fails the characterization";
    return rep;
}

CharacterizationReport characterization_crosscheck(const QuotientSeq& seq) {
    return characterization_crosscheck(seq, seq.default_budget());
}

} // namespace seqlab::regvar
