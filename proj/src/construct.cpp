#include "seqlab/construct.hpp"

#include <algorithm>
#include <cmath>

#include "seqlab/assoc.hpp"
#include "seqlab/error.hpp"
#include "seqlab/props.hpp"
#include "seqlab/regvar.hpp"

namespace seqlab::construct {

AxisV::AxisV(OrderPtr order, double x0, double slope0, double min_second_diff)
    : order_(std::move(order)), x0_(x0), slope0_(slope0), min_second_diff_(min_second_diff) {
    v0_ = order_->rho(x0_) * x0_;
}

double AxisV::logV(double x) const {
    if (x >= x0_) return order_->rho(x) * x;
    return v0_ + slope0_ * (x - x0_);
}

double AxisV::dlogV(double x) const {
    if (x >= x0_) return order_->drho_dlogr(x) * x + order_->rho(x);
    return slope0_;
}

double AxisV::inverse(double y) const {
    if (y <= v0_) return x0_ + (y - v0_) / slope0_;
    double lo = x0_, hi = x0_ + 1.0;
    int guard = 0;
    while (logV(hi) < y && guard++ < 400) hi = hi * 2.0 + 1.0;
    if (logV(hi) < y) throw solver_error("AxisV::inverse: bracket not found");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (logV(mid) < y ? lo : hi) = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

AxisV make_axis_V(OrderPtr order) {
    if (!order->nonzero()) throw input_error(order->name() + ": axis construction needs a nonzero order");
    double lo = order->log_c() + 1e-3;
    double hi = std::min(order->grid_cap(), 400.0);
    const int n = 4096;
    double step = (hi - lo) / n;
    auto A = [&](double x) { return order->drho_dlogr(x) * x + order->rho(x); };
    // earliest grid point from which A stays positive and nondecreasing
    std::vector<double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = A(lo + i * step);
    int start = n;
    bool ok_tail = true;
    double min_dd = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        bool increasing = a[i + 1] >= a[i] - 1e-12 * std::max(1.0, std::fabs(a[i]));
        if (a[i] > 0.0 && increasing && ok_tail)
            start = i;
        else
            ok_tail = false, start = std::min(start, n);
        if (!ok_tail) break;
    }
    if (start >= n)
        throw input_error(order->name() + ": no splice point with positive nondecreasing slope on the grid");
    double x0 = lo + start * step;
    double slope0 = A(x0);
    // record the measured convexity margin of log V in log t over the tail
    for (int i = start; i + 2 <= n; ++i) {
        double dd = a[i + 1] - a[i]; // first difference of the slope
        min_dd = std::min(min_dd, dd);
    }
    return AxisV(order, x0, slope0, min_dd);
}

double A_of_s(const AxisV& v, double log_s) { return v.dlogV(log_s); }

SupSolveResult mv_value(const AxisV& v, double p) {
    SupSolveResult res;
    res.p = p;
    if (p < 0) throw input_error("mv_value: p must be >= 0");
    if (p == 0.0) {
        res.log_s = -std::numeric_limits<double>::infinity();
        res.log_M = 0.0; // sup e^{-V} = 1 since V(0+) = 0
        return res;
    }
    double x0 = v.splice_x0(), s0 = v.splice_slope();
    double va_at_x0 = std::exp(v.logV(x0)) * s0;
    double x;
    int iters = 0;
    if (p <= va_at_x0) {
        // on the splice line V(x) s0 = p exactly
        x = v.inverse(std::log(p / s0));
    } else {
        // V(s)A(s) is continuous and strictly increasing; bisection on log(VA)
        auto g = [&](double xx) { return v.logV(xx) + std::log(v.dlogV(xx)) - std::log(p); };
        double lo = x0, hi = x0 + 1.0;
        while (g(hi) < 0 && iters++ < 400) hi = hi * 2.0 + 1.0;
        if (g(hi) < 0) throw solver_error("mv_value: bracket not found");
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (g(mid) < 0 ? lo : hi) = mid;
            ++iters;
            if (hi - lo <= 1e-14 * std::max(1.0, std::fabs(hi))) break;
        }
        x = 0.5 * (lo + hi);
    }
    double V = std::exp(v.logV(x));
    res.log_s = x;
    res.iterations = iters;
    res.residual = std::fabs(V * v.dlogV(x) - p);
    res.log_M = p * x - V;
    if (res.residual > 1e-8 * std::max(1.0, p)) {
        // golden-section fallback on h(x) = p x - V(e^x), unimodal
        double a = x - 20.0, b = x + 20.0;
        const double gr = 0.6180339887498949;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        auto h = [&](double xx) { return p * xx - std::exp(v.logV(xx)); };
        double hc = h(c), hd = h(d);
        for (int i = 0; i < 300; ++i) {
            if (hc > hd) {
                b = d;
                d = c;
                hd = hc;
                c = b - gr * (b - a);
                hc = h(c);
            } else {
                a = c;
                c = d;
                hc = hd;
                d = a + gr * (b - a);
                hd = h(d);
            }
            ++res.iterations;
        }
        x = 0.5 * (a + b);
        res.log_s = x;
        res.log_M = h(x);
        res.residual = std::fabs(std::exp(v.logV(x)) * v.dlogV(x) - p);
        if (res.residual > 1e-6 * std::max(1.0, p))
            throw solver_error("mv_value: stationarity residual too large at p = " + std::to_string(p));
    }
    return res;
}

double young_conjugate(const AxisV& v, double y) {
    if (y < 0) return std::numeric_limits<double>::infinity();
    if (y == 0.0) return 0.0; // sup(-V) = -inf V = 0
    return mv_value(v, y).log_M;
}

double biconjugate(const AxisV& v, double x) {
    // sup_{y >= 0} (x y - phi*(y)); concave in y, searched in log y around the
    // stationarity bracket y ~ V(e^x) A(e^x)
    double y_star = std::exp(v.logV(x)) * v.dlogV(x);
    double lo = std::log(y_star) - 4.0, hi = std::log(y_star) + 4.0;
    auto f = [&](double u) {
        double y = std::exp(u);
        return x * y - young_conjugate(v, y);
    };
    const double gr = 0.6180339887498949;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 120; ++i) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    double best = std::max(f(0.5 * (lo + hi)), 0.0); // y = 0 gives x*0 - 0 = 0
    return best;
}

ConstructedSeq build_mv_sequence(const AxisV& v, uint64_t pmax) {
    if (pmax < 16) throw input_error("build_mv_sequence: pmax must be >= 16");
    ConstructedSeq out;
    out.log_values.reserve(pmax + 1);
    out.log_values.push_back(0.0);
    double prev_s = -std::numeric_limits<double>::infinity();
    for (uint64_t p = 1; p <= pmax; ++p) {
        SupSolveResult r = mv_value(v, double(p));
        if (r.log_s <= prev_s)
            throw solver_error("build_mv_sequence: maximizers not increasing at p = " + std::to_string(p));
        prev_s = r.log_s;
        out.log_values.push_back(r.log_M);
        out.maximizers.push_back(r.log_s);
    }
    // (lc) within solver tolerance
    for (uint64_t p = 1; p + 1 <= pmax; ++p) {
        double dd = out.log_values[p - 1] + out.log_values[p + 1] - 2.0 * out.log_values[p];
        if (dd < -1e-8)
            throw solver_error("build_mv_sequence: log-convexity violated at p = " + std::to_string(p));
    }
    out.seq = seqcore::make_tabulated("M^V[" + v.order().name() + "]", out.log_values);
    out.provenance = "mv_sequence from " + v.order().name() + ", splice x0 = " + std::to_string(v.splice_x0());
    return out;
}

ConstructedSeq build_l_sequence(const AxisV& v, uint64_t pmax) {
    if (pmax < 2) throw input_error("build_l_sequence: pmax must be >= 2");
    ConstructedSeq out;
    std::vector<double> lq;
    lq.push_back(v.inverse(0.0)); // l_0 = U(1)
    for (uint64_t p = 1; p + 1 <= pmax; ++p) lq.push_back(v.inverse(std::log(double(p))));
    out.log_values.push_back(0.0);
    for (double q : lq) out.log_values.push_back(out.log_values.back() + q);
    out.maximizers = {};
    out.seq = seqcore::make_tabulated("L[" + v.order().name() + "]", out.log_values);
    out.provenance = "l_sequence from " + v.order().name();
    return out;
}

SandwichReport u_sandwich(const AxisV& v, const ConstructedSeq& mv) {
    SandwichReport rep;
    uint64_t pmax = mv.log_values.size() - 1;
    // calibrate B on the first half, then require it to cover everything
    double early = 0.0, worst = 0.0;
    for (uint64_t p = 1; p <= pmax; ++p) {
        double logU = v.inverse(std::log(double(p)));
        double gap = std::fabs(logU - mv.log_values[p] / double(p));
        if (p <= pmax / 2) early = std::max(early, gap);
        worst = std::max(worst, gap);
    }
    double logB = std::max(early, 1e-6) * 1.05 + 1e-9;
    rep.B = std::exp(logB);
    rep.worst_gap = worst;
    rep.verdict.check = "u_sandwich";
    rep.verdict.constants["B"] = rep.B;
    rep.verdict.constants["worst_gap"] = worst;
    rep.verdict.status = worst <= logB ? Status::pass : Status::fail;
    if (rep.verdict.fail())
        rep.verdict.witnesses.push_back("|log U(p) - log M_p / p| grows beyond the early-calibrated constant");
    return rep;
}

VMReport vm_equivalence(const AxisV& v, const ConstructedSeq& mv, int pts_per_decade) {
    VMReport rep;
    const QuotientSeq& seq = *mv.seq;
    uint64_t pmax = mv.log_values.size() - 1;
    double lo = seq.log_quotient(BigIndex(1)) + 1e-6;
    double hi = seq.log_quotient(BigIndex(pmax - 2)) - 1e-6;
    assoc::GridSpec grid{lo, hi, pts_per_decade};
    rep.verdict.check = "vm_equivalence";
    bool ok = true;
    std::string witness;
    for (double x : grid.points()) {
        assoc::AssocEval ev = assoc::eval_assoc(seq, x);
        if (!ev.d_defined || ev.nu < BigIndex(2)) continue;
        double Vv = std::exp(v.logV(x));
        double ratio = Vv / ev.M;
        double nu_d = ev.nu.to_double();
        double bound = nu_d / (nu_d - 1.0);
        rep.rows.push_back({x, ratio, bound});
        if (!(ratio >= 1.0 - 1e-8 && ratio <= bound + 1e-8)) {
            ok = false;
            if (witness.empty())
                witness = "V/M = " + std::to_string(ratio) + " outside [1, " + std::to_string(bound) +
                          "] at log t = " + std::to_string(x);
        }
    }
    if (rep.rows.size() < 8) throw input_error("vm_equivalence: grid too small");
    rep.end_ratio = rep.rows.back().V_over_M;
    rep.verdict.constants["end_ratio"] = rep.end_ratio;
    bool end_ok = std::fabs(rep.end_ratio - 1.0) <= 1e-2;
    rep.verdict.status = ok && end_ok ? Status::pass : Status::fail;
    if (!ok) rep.verdict.witnesses.push_back(witness);
    if (!end_ok) rep.verdict.witnesses.push_back("V/M at the grid end is not within 1e-2 of 1");
    return rep;
}

ClosureReport admissibility_closure_check(const QuotientSeq& seq, OrderPtr order, uint64_t pmax) {
    if (pmax < 4096) pmax = 16384;
    ClosureReport rep;
    proxord::AdmissibilityReport adm = proxord::admits(seq, *order);
    rep.admit_pre = adm.verdict;
    if (!adm.verdict.pass()) {
        rep.short_circuit = true;
        return rep;
    }
    AxisV axis = make_axis_V(order);
    ConstructedSeq mv = build_mv_sequence(axis, pmax);

    // (M_p / M_p^V)^{1/p} bounded: envelope of the per-index log gap
    std::vector<StreamSample> stream;
    for (uint64_t p = 1; p <= pmax; ++p) {
        double a = seq.mean_log_value(BigIndex(p));
        double b = mv.log_values[p] / double(p);
        stream.push_back({std::log(double(p)), a - b});
    }
    EnvelopeEstimate env = build_envelope("log_ratio_over_p", stream);
    rep.ratio_lo = std::exp(env.liminf);
    rep.ratio_hi = std::exp(env.limsup);
    rep.equiv_bounded.check = "seq_vs_mv_bounded";
    rep.equiv_bounded.constants["lo"] = rep.ratio_lo;
    rep.equiv_bounded.constants["hi"] = rep.ratio_hi;
    if (env.diverged || env.sup_growing || env.inf_falling) {
        rep.equiv_bounded.status = Status::fail;
        rep.equiv_bounded.witnesses.push_back("(M_p/M_p^V)^{1/p} drifts");
    } else {
        rep.equiv_bounded.status = Status::pass;
    }

    ConstructedSeq l = build_l_sequence(axis, pmax);
    regvar::RegVarReport rv = regvar::regvar_index_test(*l.seq);
    rep.l_omega = rv.omega;
    rep.l_regvar.check = "l_sequence_regvar";
    rep.l_regvar.constants["omega"] = rv.omega;
    rep.l_regvar.constants["expected"] = 1.0 / order->rho_limit();
    if (rv.b_test.pass() && rv.d_test.pass() && std::fabs(rv.omega - 1.0 / order->rho_limit()) <= 5e-2) {
        rep.l_regvar.status = Status::pass;
    } else if (rv.b_test.fail() || rv.d_test.fail()) {
        rep.l_regvar.status = Status::fail;
        rep.l_regvar.witnesses.push_back("L-sequence regular variation not confirmed");
    } else {
        rep.l_regvar.status = Status::inconclusive;
        rep.l_regvar.note = "ratio envelopes not settled at this tabulation depth";
    }
    return rep;
}

} // namespace seqlab::construct
