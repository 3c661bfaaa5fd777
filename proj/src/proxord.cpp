#include "seqlab/proxord.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"

namespace seqlab::proxord {

namespace {

std::string fmt(const char* pat, double a, double b = 0, double c = 0) {
    char buf[96];
    std::snprintf(buf, sizeof buf, pat, a, b, c);
    return buf;
}

class ConstOrder final : public ProximateOrder {
public:
    explicit ConstOrder(double r) : r_(r) {}
    std::string name() const override { return fmt("const(%g)", r_); }
    double rho(double) const override { return r_; }
    double drho_dlogr(double) const override { return 0.0; }
    double log_c() const override { return 0.0; }
    double rho_limit() const override { return r_; }

private:
    double r_;
};

// rho_{alpha,beta}(t) = 1/alpha - (beta/alpha) loglog t / log t
class RhoAlphaBeta final : public ProximateOrder {
public:
    RhoAlphaBeta(double a, double b) : a_(a), b_(b) {}
    std::string name() const override { return fmt("rho_alpha_beta(%g,%g)", a_, b_); }
    double rho(double lr) const override { return 1.0 / a_ - (b_ / a_) * std::log(lr) / lr; }
    double drho_dlogr(double lr) const override { return -(b_ / a_) * (1.0 - std::log(lr)) / (lr * lr); }
    double log_c() const override { return 1.05; }
    double rho_limit() const override { return 1.0 / a_; }

private:
    double a_, b_;
};

// rho + t^{-gamma}
class PowerDecayOrder final : public ProximateOrder {
public:
    PowerDecayOrder(double r, double g) : r_(r), g_(g) {}
    std::string name() const override { return fmt("power_decay(%g,%g)", r_, g_); }
    double rho(double lr) const override { return r_ + std::exp(-g_ * lr); }
    double drho_dlogr(double lr) const override { return -g_ * std::exp(-g_ * lr); }
    double log_c() const override { return 0.0; }
    double rho_limit() const override { return r_; }

private:
    double r_, g_;
};

// rho + log^{-gamma} t
class LogDecayOrder final : public ProximateOrder {
public:
    LogDecayOrder(double r, double g) : r_(r), g_(g) {}
    std::string name() const override { return fmt("log_decay(%g,%g)", r_, g_); }
    double rho(double lr) const override { return r_ + std::pow(lr, -g_); }
    double drho_dlogr(double lr) const override { return -g_ * std::pow(lr, -g_ - 1.0); }
    double log_c() const override { return 0.1; }
    double rho_limit() const override { return r_; }

private:
    double r_, g_;
};

// rho + sin(t)/t: satisfies (A)-(C) but not (D)
class SinOrder final : public ProximateOrder {
public:
    explicit SinOrder(double r) : r_(r) {}
    std::string name() const override { return fmt("sin_counterexample(%g)", r_); }
    double rho(double lr) const override {
        double t = std::exp(lr);
        return r_ + std::sin(t) / t;
    }
    double drho_dlogr(double lr) const override {
        double t = std::exp(lr);
        return std::cos(t) - std::sin(t) / t;
    }
    double log_c() const override { return 0.5; }
    double rho_limit() const override { return r_; }
    double grid_cap() const override { return 80.0; } // sin needs the argument as a value

private:
    double r_;
};

class DmOrder final : public ProximateOrder {
public:
    DmOrder(SeqPtr seq, std::string name) : seq_(std::move(seq)), name_(std::move(name)) {
        // rho_inf from the deepest usable grid point
        double end = 390.0;
        rho_inf_ = eval(end);
    }
    std::string name() const override { return name_; }
    double rho(double lr) const override { return eval(lr); }
    double drho_dlogr(double lr) const override {
        // one-sided differences when a quotient corner sits inside the stencil
        double h = 1e-4 * std::max(1.0, std::fabs(lr));
        BigIndex lo = seq_->count_below(lr - h), hi = seq_->count_below(lr + h);
        if (lo == hi) return (eval(lr + h) - eval(lr - h)) / (2.0 * h);
        BigIndex mid = seq_->count_below(lr);
        if (mid == hi) return (eval(lr + h) - eval(lr)) / h;
        return (eval(lr) - eval(lr - h)) / h;
    }
    double log_c() const override { return 2.0; }
    double rho_limit() const override { return rho_inf_; }
    double grid_cap() const override { return 395.0; }

private:
    SeqPtr seq_;
    std::string name_;
    double rho_inf_;
    double eval(double lr) const { return assoc::d_M(*seq_, lr); }
};

// start of the increasing tail of log V, by coarse scan
double find_increasing_start(const ProximateOrder& o) {
    double lo = o.log_c() + 1e-6;
    double cap = std::min(o.grid_cap(), 1e5);
    double step = (cap - lo) / 512.0;
    auto logv = [&](double x) { return o.rho(x) * x; };
    double x_inc = lo;
    for (double x = lo; x + step <= cap; x += step) {
        if (logv(x + step) <= logv(x)) x_inc = x + step;
    }
    return x_inc;
}

// Increasing-tail inverse shared by U_of and the conjugate wrapper.
double inverse_from(const ProximateOrder& o, double x_inc, double log_s) {
    auto logv = [&](double x) { return o.rho(x) * x; };
    if (log_s < logv(x_inc))
        throw input_error(o.name() + ": U undefined, log s = " + std::to_string(log_s) +
                          " below the increasing range of V (starts at log V = " + std::to_string(logv(x_inc)) + ")");
    double hi = std::max(x_inc + 1.0, 2.0 * std::fabs(log_s) / std::max(o.rho_limit(), 1e-6));
    int guard = 0;
    while (logv(hi) < log_s && guard++ < 200) hi = hi * 2.0 + 1.0;
    if (logv(hi) < log_s) throw solver_error(o.name() + ": U bracket not found");
    double a = x_inc, b = hi;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (a + b);
        (logv(mid) < log_s ? a : b) = mid;
        if (b - a <= 1e-13 * std::max(1.0, std::fabs(b))) break;
    }
    return 0.5 * (a + b);
}

double inverse_on_tail(const ProximateOrder& o, double log_s) {
    return inverse_from(o, find_increasing_start(o), log_s);
}

class ConjugateOrder final : public ProximateOrder {
public:
    explicit ConjugateOrder(OrderPtr base) : base_(std::move(base)) {
        if (!base_->nonzero()) throw input_error("conjugate order: base must be nonzero");
        x_inc_ = find_increasing_start(*base_);
        log_c_ = base_->rho(x_inc_ + 0.5) * (x_inc_ + 0.5) + 1.0;
    }
    std::string name() const override { return base_->name() + "*"; }
    double rho(double ls) const override { return inverse_from(*base_, x_inc_, ls) / ls; }
    double drho_dlogr(double ls) const override {
        double h = 1e-5 * std::max(1.0, std::fabs(ls));
        return (rho(ls + h) - rho(ls - h)) / (2.0 * h);
    }
    double log_c() const override { return log_c_; }
    double rho_limit() const override { return 1.0 / base_->rho_limit(); }
    double grid_cap() const override { return 2000.0; }

private:
    OrderPtr base_;
    double log_c_;
    double x_inc_;
};

std::vector<double> clipped_grid(const ProximateOrder& o, const GridSpec& grid) {
    GridSpec g = grid;
    g.log_t_lo = std::max(g.log_t_lo, o.log_c() + 0.25);
    g.log_t_hi = std::min(g.log_t_hi, o.grid_cap());
    if (!(g.log_t_hi > g.log_t_lo + 1.0))
        throw input_error(o.name() + ": evaluation grid empty after clipping to the order domain");
    return g.points();
}

// tail rule shared by (C)/(D): max |residual| over the last decade below tol
// and not larger than over the previous decade
Verdict tail_residual_verdict(const char* check, const std::vector<double>& xs, const std::vector<double>& res,
                              double tol) {
    Verdict v;
    v.check = check;
    double last = xs.back();
    double dec = std::log(10.0);
    double max_last = 0.0, max_prev = 0.0, max_all = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        double a = std::fabs(res[i]);
        if (a > max_all) {
            max_all = a;
            worst = i;
        }
        if (xs[i] > last - dec) max_last = std::max(max_last, a);
        else if (xs[i] > last - 2.0 * dec) max_prev = std::max(max_prev, a);
    }
    v.constants["tail_residual"] = max_last;
    v.constants["prev_decade_residual"] = max_prev;
    if (max_last < tol && (max_last <= max_prev + 1e-15 || max_last < 1e-6)) {
        v.status = Status::pass;
    } else {
        v.status = Status::fail;
        v.witnesses.push_back(fmt("worst |residual| = %.6g at log t = %.6g", max_all, xs[worst]));
    }
    return v;
}

} // namespace

OrderSpec OrderSpec::parse(const nlohmann::json& j) {
    OrderSpec s;
    if (!j.contains("order")) throw input_error("order spec: missing \"order\" key");
    std::string o = j.at("order").get<std::string>();
    auto need = [&](const char* key) -> double {
        if (!j.contains(key)) throw input_error("order spec: " + o + " needs \"" + key + "\"");
        return j.at(key).get<double>();
    };
    if (o == "const") {
        s.kind = Kind::constant;
        s.rho = need("rho");
        if (!(s.rho >= 0)) throw input_error("const order: rho must be >= 0");
    } else if (o == "rho_alpha_beta") {
        s.kind = Kind::rho_alpha_beta;
        s.alpha = need("alpha");
        s.beta = need("beta");
        if (!(s.alpha > 0)) throw input_error("rho_alpha_beta: alpha must be > 0");
    } else if (o == "power_decay") {
        s.kind = Kind::power_decay;
        s.rho = need("rho");
        s.gamma = need("gamma");
        if (!(s.rho >= 0) || !(s.gamma > 0)) throw input_error("power_decay: need rho >= 0, gamma > 0");
    } else if (o == "log_decay") {
        s.kind = Kind::log_decay;
        s.rho = need("rho");
        s.gamma = need("gamma");
        if (!(s.rho >= 0) || !(s.gamma > 0)) throw input_error("log_decay: need rho >= 0, gamma > 0");
    } else if (o == "sin_counterexample") {
        s.kind = Kind::sin_counterexample;
        s.rho = need("rho");
        if (!(s.rho >= 0)) throw input_error("sin_counterexample: rho must be >= 0");
    } else {
        throw input_error("unknown order: " + o);
    }
    return s;
}

OrderSpec OrderSpec::parse_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return parse(nlohmann::json::parse(arg));
    std::vector<std::string> parts;
    size_t pos = 0;
    while (pos <= arg.size()) {
        size_t c = arg.find(':', pos);
        if (c == std::string::npos) {
            parts.push_back(arg.substr(pos));
            break;
        }
        parts.push_back(arg.substr(pos, c - pos));
        pos = c + 1;
    }
    nlohmann::json j;
    j["order"] = parts[0];
    auto num = [&](size_t i) {
        if (parts.size() <= i) throw input_error("order shorthand " + arg + ": missing parameter");
        return std::stod(parts[i]);
    };
    if (parts[0] == "const") j["rho"] = num(1);
    if (parts[0] == "rho_alpha_beta") {
        j["alpha"] = num(1);
        j["beta"] = num(2);
    }
    if (parts[0] == "power_decay" || parts[0] == "log_decay") {
        j["rho"] = num(1);
        j["gamma"] = num(2);
    }
    if (parts[0] == "sin_counterexample") j["rho"] = num(1);
    return parse(j);
}

nlohmann::ordered_json OrderSpec::to_json() const {
    nlohmann::ordered_json j;
    switch (kind) {
        case Kind::constant:
            j["order"] = "const";
            j["rho"] = rho;
            break;
        case Kind::rho_alpha_beta:
            j["order"] = "rho_alpha_beta";
            j["alpha"] = alpha;
            j["beta"] = beta;
            break;
        case Kind::power_decay:
            j["order"] = "power_decay";
            j["rho"] = rho;
            j["gamma"] = gamma;
            break;
        case Kind::log_decay:
            j["order"] = "log_decay";
            j["rho"] = rho;
            j["gamma"] = gamma;
            break;
        case Kind::sin_counterexample:
            j["order"] = "sin_counterexample";
            j["rho"] = rho;
            break;
    }
    return j;
}

OrderPtr make_order(const OrderSpec& s) {
    switch (s.kind) {
        case OrderSpec::Kind::constant: return std::make_shared<ConstOrder>(s.rho);
        case OrderSpec::Kind::rho_alpha_beta: return std::make_shared<RhoAlphaBeta>(s.alpha, s.beta);
        case OrderSpec::Kind::power_decay: return std::make_shared<PowerDecayOrder>(s.rho, s.gamma);
        case OrderSpec::Kind::log_decay: return std::make_shared<LogDecayOrder>(s.rho, s.gamma);
        case OrderSpec::Kind::sin_counterexample: return std::make_shared<SinOrder>(s.rho);
    }
    throw input_error("make_order: bad kind");
}

OrderPtr wrap_dm_as_order(SeqPtr seq, std::string name) {
    return std::make_shared<DmOrder>(std::move(seq), std::move(name));
}

OrderPtr conjugate_order(OrderPtr base) { return std::make_shared<ConjugateOrder>(std::move(base)); }

GridSpec validation_grid() {
    GridSpec g;
    g.log_t_lo = 2.0;
    g.log_t_hi = 2000.0;
    g.pts_per_decade = 64;
    return g;
}

GridSpec admissibility_grid() {
    // Deep enough that the block families span three whole eras in log t.
    // The end is kept away from powers of two times log 2, else the last
    // era's deviation peak rides the window midline.
    GridSpec g;
    g.log_t_lo = 2.0;
    g.log_t_hi = 8000.0;
    g.pts_per_decade = 24;
    return g;
}

OrderValidation validate_order(const ProximateOrder& o, const GridSpec& grid) {
    OrderValidation val;
    std::vector<double> xs = clipped_grid(o, grid);
    std::vector<double> c_res, d_res;
    double min_rho = std::numeric_limits<double>::infinity();
    double worst_x = xs.front();
    for (double x : xs) {
        double r = o.rho(x);
        if (r < min_rho) {
            min_rho = r;
            worst_x = x;
        }
        c_res.push_back(r - o.rho_limit());
        double dres = o.drho_dlogr(x) * x; // r rho'(r) log r
        d_res.push_back(dres);
        if (std::fabs(dres) > 0.5) ++val.d_residual_large_points;
    }
    val.condition_b.check = "order_B_nonnegative";
    if (min_rho >= 0.0) {
        val.condition_b.status = Status::pass;
        val.condition_b.constants["min_rho"] = min_rho;
    } else {
        val.condition_b.status = Status::fail;
        val.condition_b.constants["min_rho"] = min_rho;
        val.condition_b.witnesses.push_back(fmt("rho < 0 at log t = %.6g", worst_x));
    }
    val.condition_c = tail_residual_verdict("order_C_limit", xs, c_res, 1e-2);
    val.condition_d = tail_residual_verdict("order_D_derivative", xs, d_res, 1e-2);
    val.rho_at_end = o.rho(xs.back());
    val.nonzero = o.rho_limit() > 0.0;
    return val;
}

OrderValidation validate_order(const ProximateOrder& o) { return validate_order(o, validation_grid()); }

double V_of(const ProximateOrder& o, double log_t) {
    if (!(log_t > o.log_c())) throw input_error(o.name() + ": V requires log t > " + std::to_string(o.log_c()));
    return o.rho(log_t) * log_t;
}

double U_of(const ProximateOrder& o, double log_s) {
    if (!o.nonzero()) throw input_error(o.name() + ": U requires a nonzero order");
    return inverse_on_tail(o, log_s);
}

Verdict orders_equivalent(const ProximateOrder& a, const ProximateOrder& b, const GridSpec& grid) {
    GridSpec g = grid;
    g.log_t_lo = std::max(a.log_c(), b.log_c()) + 0.25;
    g.log_t_hi = std::min({g.log_t_hi, a.grid_cap(), b.grid_cap()});
    std::vector<double> xs = g.points();
    std::vector<double> res;
    for (double x : xs) res.push_back((a.rho(x) - b.rho(x)) * x);
    Verdict t = tail_residual_verdict("orders_equivalent", xs, res, 1e-2);
    t.constants["tail_gap"] = t.constants["tail_residual"];
    return t;
}

AdmissibilityReport admits(const QuotientSeq& seq, const ProximateOrder& o, const GridSpec& grid) {
    seqcore::require_nondecreasing_probe(seq);
    OrderValidation ov = validate_order(o, validation_grid());
    if (!ov.all_pass())
        throw input_error(o.name() + ": not a valid proximate order, admissibility undefined");
    AdmissibilityReport rep;
    GridSpec g = grid;
    g.log_t_lo = std::max(g.log_t_lo, o.log_c() + 0.25);
    g.log_t_hi = std::min(g.log_t_hi, o.grid_cap());
    std::vector<StreamSample> stream;
    for (double x : g.points()) {
        assoc::AssocEval ev;
        try {
            ev = assoc::eval_assoc(seq, x);
        } catch (const Error&) {
            continue;
        }
        if (!ev.d_defined) continue;
        stream.push_back({x, x * (o.rho(x) - ev.d)});
    }
    if (stream.size() < 8) throw input_error("admits: too few usable grid points");
    EnvelopeOptions eo;
    eo.cycle_factor = seq.schedule_log_cycle();
    // boundedness question: era-fragment phase noise sits near 1e-3, genuine
    // unboundedness grows by ~log 2 per era
    eo.stability_tol = 2e-2;
    rep.envelope = build_envelope("logt_rho_minus_dM", stream, eo);
    rep.A = rep.envelope.liminf;
    rep.B = rep.envelope.limsup;
    Verdict& v = rep.verdict;
    v.check = "admits_proximate_order";
    v.constants["A"] = rep.A;
    v.constants["B"] = rep.B;
    if (rep.envelope.diverged || rep.envelope.sup_growing || rep.envelope.inf_falling) {
        v.status = Status::fail;
        v.witnesses.push_back("log t (rho - d_M) is unbounded over the grid");
    } else if (rep.envelope.inf_stable && rep.envelope.sup_stable) {
        v.status = Status::pass;
    } else {
        v.status = Status::inconclusive;
        v.note = "envelope not settled on this grid";
    }
    return rep;
}

AdmissibilityReport admits(const QuotientSeq& seq, const ProximateOrder& o) {
    return admits(seq, o, admissibility_grid());
}

} // namespace seqlab::proxord
