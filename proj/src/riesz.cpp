#include "seqlab/riesz.hpp"

#include <cmath>
#include <memory>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"

namespace seqlab::riesz {

namespace {

uint64_t pow3(int n) {
    uint64_t v = 1;
    for (int i = 0; i < n; ++i) v *= 3;
    return v;
}

class PaperDelta final : public DeltaSeq {
public:
    double at(const BigIndex& k) const override {
        if (k <= BigIndex(2)) return 2.0;
        for (int j = 0; j < 40; ++j) {
            if (k <= BigIndex::pow2(2 * pow3(j))) return 3.0; // (k_j, q_j]
            if (k <= BigIndex::pow2(pow3(j + 1))) return 2.0; // (q_j, k_{j+1}]
        }
        throw input_error("paper delta: index out of range");
    }
    std::vector<Run> runs(uint64_t log2_cap) const override {
        std::vector<Run> out;
        out.push_back({BigIndex(), BigIndex(2), 2.0});
        for (int j = 0; j < 40; ++j) {
            uint64_t lk = pow3(j), lq = 2 * pow3(j), lk1 = pow3(j + 1);
            out.push_back({BigIndex::pow2(lk), BigIndex::pow2(lq), 3.0});
            if (lq >= log2_cap) break;
            out.push_back({BigIndex::pow2(lq), BigIndex::pow2(lk1), 2.0});
            if (lk1 >= log2_cap) break;
        }
        return out;
    }
};

class ConstDelta final : public DeltaSeq {
public:
    explicit ConstDelta(double c) : c_(c) {}
    double at(const BigIndex&) const override { return c_; }
    std::vector<Run> runs(uint64_t log2_cap) const override {
        return {{BigIndex(), BigIndex::pow2(log2_cap + 1), c_}};
    }

private:
    double c_;
};

} // namespace

const DeltaSeq& paper_delta() {
    static PaperDelta d;
    return d;
}

std::unique_ptr<DeltaSeq> const_delta(double c) { return std::make_unique<ConstDelta>(c); }

double delta_harmonic_sum(const DeltaSeq& d, const BigIndex& p) {
    if (p.is_zero()) return 0.0;
    double acc = 0.0;
    for (const DeltaSeq::Run& r : d.runs(p.bit_length() + 1)) {
        if (!(r.lo < p)) break;
        const BigIndex& hi = r.hi < p ? r.hi : p;
        acc += r.delta * (harmonic(hi) - harmonic(r.lo));
        if (!(r.hi < p)) break;
    }
    return acc;
}

double riesz_mean(const DeltaSeq& d, const BigIndex& p) {
    if (p < BigIndex(2)) throw input_error("riesz_mean: p must be >= 2");
    return delta_harmonic_sum(d, p) / p.log_natural();
}

double riesz_mean_direct(const DeltaSeq& d, uint64_t p) {
    if (p < 2) throw input_error("riesz_mean_direct: p must be >= 2");
    if (p > 10000000) throw input_error("riesz_mean_direct: p too large for literal summation");
    double s = 0.0, c = 0.0;
    for (uint64_t k = 1; k <= p; ++k) {
        double y = d.at(BigIndex(k)) / double(k) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s / std::log(double(p));
}

RieszReport riesz_subsequences(const DeltaSeq& d, int nmax) {
    if (nmax < 1) throw input_error("riesz_subsequences: nmax must be >= 1");
    RieszReport rep;
    double prev_tq = 0.0;
    for (int n = 0; n <= nmax; ++n) {
        BigIndex kn = BigIndex::pow2(pow3(n));
        BigIndex qn = BigIndex::pow2(2 * pow3(n));
        RieszRow row;
        row.n = n;
        row.log2_kn = double(pow3(n));
        row.t_kn = riesz_mean(d, kn);
        row.t_qn = riesz_mean(d, qn);
        double log_qn = qn.log_natural();
        row.t_qn_recurrence = row.t_kn / 2.0 + 1.5 + 3.0 * harmonic_eps_diff(kn, qn) / log_qn;
        if (n == 0) {
            row.t_kn_recurrence = row.t_kn;
        } else {
            BigIndex qprev = BigIndex::pow2(2 * pow3(n - 1));
            row.t_kn_recurrence = 2.0 * prev_tq / 3.0 + 2.0 / 3.0 + 2.0 * harmonic_eps_diff(qprev, kn) / kn.log_natural();
        }
        prev_tq = row.t_qn;
        rep.rows.push_back(row);
    }
    for (const RieszRow& r : rep.rows) {
        rep.max_recurrence_gap = std::max(rep.max_recurrence_gap, std::fabs(r.t_qn - r.t_qn_recurrence));
        rep.max_recurrence_gap = std::max(rep.max_recurrence_gap, std::fabs(r.t_kn - r.t_kn_recurrence));
    }
    rep.t_kn_limit = rep.rows.back().t_kn;
    rep.t_qn_limit = rep.rows.back().t_qn;
    rep.limits_differ = std::fabs(rep.t_kn_limit - rep.t_qn_limit) > 1e-3;
    rep.contraction_monotone = true;
    for (size_t i = 2; i < rep.rows.size(); ++i) {
        double d2 = std::fabs(rep.rows[i].t_kn - rep.t_kn_limit);
        double d1 = std::fabs(rep.rows[i - 1].t_kn - rep.t_kn_limit);
        if (i + 1 < rep.rows.size() && d2 > d1 * 0.75) rep.contraction_monotone = false;
    }
    return rep;
}

double moricz_expression(const std::function<double(uint64_t)>& s, double lambda, uint64_t p, bool corrected) {
    if (p < 3) throw input_error("moricz_expression: p must be >= 3");
    if (lambda == 1.0) throw input_error("moricz_expression: lambda must differ from 1");
    double pl = std::pow(double(p), lambda);
    if (pl > 5e7) throw input_error("moricz_expression: summation range too large");
    uint64_t P = uint64_t(std::floor(pl));
    double sum = 0.0, comp = 0.0;
    auto add = [&](double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    double N;
    if (lambda > 1.0) {
        if (P <= p) throw input_error("moricz_expression: empty summation range");
        double sp = s(p);
        for (uint64_t k = p + 1; k <= P; ++k) add((s(k) - sp) / double(k));
        N = corrected ? harmonic(P) - harmonic(p) : double(P - p) * harmonic(p);
    } else {
        if (P >= p || P + 1 > p) throw input_error("moricz_expression: empty summation range");
        double sp = s(p);
        for (uint64_t k = P + 1; k <= p; ++k) add((sp - s(k)) / double(k));
        N = corrected ? harmonic(p) - harmonic(P) : double(p - P) * harmonic(p);
    }
    return sum / N;
}

} // namespace seqlab::riesz
