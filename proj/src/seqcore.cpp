#include "seqlab/seqcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>

#include "seqlab/error.hpp"
#include "seqlab/harmonic.hpp"

namespace seqlab::seqcore {

namespace {

constexpr double kLog3 = 1.0986122886681098;
constexpr double kE = 2.718281828459045;

double fmt_check(double v, const char* what) {
    if (std::isnan(v)) throw solver_error(std::string("NaN in ") + what);
    return v;
}

// log(p+1), usable for astronomically large p.
double log_index_plus1(const BigIndex& p) {
    if (p.bit_length() <= 52) return std::log(double(p.to_u64() + 1));
    return p.log_natural();
}

// log Gamma(p+1) / p
double lgamma_mean(const BigIndex& p) {
    if (p.is_zero()) throw input_error("lgamma_mean: p must be >= 1");
    if (p.bit_length() <= 50) {
        double pd = double(p.to_u64());
        return std::lgamma(pd + 1.0) / pd;
    }
    double lp = p.log_natural();
    double inv = std::exp(-lp);
    // Stirling: ((p+1/2)log p - p + log(2pi)/2 + 1/(12p)) / p
    return lp - 1.0 + (lp + 0.5 * std::log(2.0 * M_PI)) * 0.5 * inv + inv * inv / 12.0;
}

// --- sum of loglog(e+m), m = 0..p -------------------------------------------

// Exact prefix cache up to ~1e6, Euler-Maclaurin with the log-integral beyond.
class LogLogSum {
public:
    static constexpr uint64_t kExactMax = (uint64_t(1) << 20) + 8;

    double sum_exact(uint64_t p) const { // sum_{m=0}^{p}
        std::lock_guard<std::mutex> lock(mu_);
        if (prefix_.empty()) prefix_.push_back(0.0);
        while (prefix_.size() <= p + 1) {
            uint64_t m = prefix_.size() - 1;
            prefix_.push_back(prefix_.back() + std::log(std::log(kE + double(m))));
        }
        return prefix_[p + 1];
    }

    // S(p)/p for arbitrary p
    double mean(const BigIndex& p) const {
        if (p.is_zero()) return 0.0;
        if (p.bit_length() <= 52 && p.to_u64() <= kExactMax)
            return sum_exact(p.to_u64()) / double(p.to_u64());
        double lp = p.log_natural();
        const double a = double(kExactMax);
        double Sa = sum_exact(kExactMax);
        double La = std::log(kE + a);
        double f_a = std::log(La);
        double fp_a = 1.0 / ((kE + a) * La);
        if (lp <= 300.0) {
            double pd = p.to_double();
            double Lp = std::log(kE + pd);
            double f_p = std::log(Lp);
            double fp_p = 1.0 / ((kE + pd) * Lp);
            double I = (kE + pd) * f_p - (kE + a) * f_a - ei_diff(La, Lp);
            double S = Sa + I + 0.5 * (f_p - f_a) + (fp_p - fp_a) / 12.0;
            return S / pd;
        }
        // ratio domain: S(p)/p with li(e+p)/p from the asymptotic series
        double Lp = lp; // log(e+p) ~ log p here
        double f_p = std::log(Lp);
        double inv = std::exp(-lp);
        double li_over_p = li_over_y(Lp); // li(y)/y at y = e+p (and (e+p)/p ~ 1)
        double small = (Sa - (kE + a) * f_a - 0.5 * f_a - fp_a / 12.0 + ei_value_upto(La)) * inv;
        return f_p - li_over_p + small + (0.5 * f_p) * inv;
    }

private:
    mutable std::mutex mu_;
    mutable std::vector<double> prefix_;

    // int_{ua}^{ub} e^u/u du by adaptive Simpson; both ends >= ~14
    static double ei_diff(double ua, double ub) {
        struct Rec {
            static double simpson(double a, double b, double fa, double fm, double fb) {
                return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            }
            static double go(double a, double b, double fa, double fm, double fb, double whole, int depth) {
                double m = 0.5 * (a + b);
                double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
                double flm = f(lm), frm = f(rm);
                double left = simpson(a, m, fa, flm, fm);
                double right = simpson(m, b, fm, frm, fb);
                if (depth <= 0 || std::fabs(left + right - whole) <= 1e-13 * std::fabs(left + right))
                    return left + right + (left + right - whole) / 15.0;
                return go(a, m, fa, flm, fm, left, depth - 1) + go(m, b, fm, frm, fb, right, depth - 1);
            }
            static double f(double u) { return std::exp(u) / u; }
        };
        if (ub <= ua) return 0.0;
        // split per unit interval so magnitudes stay graded
        double total = 0.0, lo = ua;
        while (lo < ub) {
            double hi = std::min(ub, lo + 1.0);
            double fa = Rec::f(lo), fb = Rec::f(hi), fm = Rec::f(0.5 * (lo + hi));
            total += Rec::go(lo, hi, fa, fm, fb, Rec::simpson(lo, hi, fa, fm, fb), 30);
            lo = hi;
        }
        return total;
    }

    // li(y)/y = (1/L)(1 + 1/L + 2/L^2 + ...) truncated at the smallest term
    static double li_over_y(double L) {
        double term = 1.0 / L, sum = 0.0;
        for (int k = 0; k < 60; ++k) {
            sum += term;
            double next = term * double(k + 1) / L;
            if (next >= term || next < 1e-18 * sum) break;
            term = next;
        }
        return sum;
    }

    // Ei(L) for moderate L
    static double ei_value_upto(double L) {
        constexpr double kEiAt14 = 93192.513633965371; // Ei(14), cross-checked in tests
        return kEiAt14 + ei_diff(14.0, L);
    }
};

const LogLogSum& loglog_sum() {
    static LogLogSum s;
    return s;
}

// --- default schedule helpers ------------------------------------------------

std::vector<BigIndex> dedup_sorted(std::vector<BigIndex> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<BigIndex> geometric_schedule(const ScheduleBudget& b, uint64_t min_exp = 6) {
    std::vector<BigIndex> out;
    for (uint64_t p = 1; p <= b.dense_max; ++p) out.emplace_back(p);
    if (b.log2_max > min_exp) {
        uint64_t span = b.log2_max - min_exp;
        uint64_t step = std::max<uint64_t>(1, span / std::max(1, b.ladder_points));
        for (uint64_t e = min_exp; e <= b.log2_max; e += step) out.push_back(BigIndex::pow2(e));
        out.push_back(BigIndex::pow2(b.log2_max));
    }
    return dedup_sorted(std::move(out));
}

} // namespace

// --- QuotientSeq defaults -----------------------------------------------------

double QuotientSeq::log_value(const BigIndex& p) const {
    if (p.is_zero()) return 0.0;
    return mean_log_value(p) * p.to_double();
}

std::vector<BigIndex> QuotientSeq::sample_schedule(const ScheduleBudget& b) const {
    return geometric_schedule(b);
}

std::vector<std::pair<BigIndex, BigIndex>> QuotientSeq::adjacency_probes(const ScheduleBudget& b) const {
    std::vector<std::pair<BigIndex, BigIndex>> out;
    for (uint64_t p = 0; p < std::min<uint64_t>(b.dense_max, 48); ++p) out.emplace_back(BigIndex(p), BigIndex(p + 1));
    for (uint64_t e = 6; e <= std::min<uint64_t>(b.log2_max, 512); e *= 2) {
        BigIndex s = BigIndex::pow2(e);
        out.emplace_back(s.minus(1), s);
        out.emplace_back(s, s.plus(1));
    }
    return out;
}

// --- families -----------------------------------------------------------------

namespace {

class GevreySeq final : public QuotientSeq {
public:
    explicit GevreySeq(double alpha) : alpha_(alpha) {}
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "gevrey(%g)", alpha_);
        return buf;
    }
    double log_quotient(const BigIndex& p) const override { return alpha_ * log_index_plus1(p); }
    double mean_log_value(const BigIndex& p) const override { return p.is_zero() ? 0.0 : alpha_ * lgamma_mean(p); }
    BigIndex count_below(double log_t) const override {
        if (log_t < 0.0) return BigIndex();
        double y_log2 = log_t / (alpha_ * kLog2); // nu = floor(t^{1/alpha})
        if (y_log2 < 52.0) {
            uint64_t n = uint64_t(std::floor(std::exp2(y_log2) * (1.0 + 1e-13) + 1e-9));
            while (n >= 1 && alpha_ * std::log(double(n)) > log_t * (1.0 + 1e-15) + 1e-15) --n;
            while (alpha_ * std::log(double(n + 1)) <= log_t * (1.0 + 1e-15) + 1e-15) ++n;
            return BigIndex(n);
        }
        return BigIndex::from_log2(y_log2);
    }

private:
    double alpha_;
};

class AlphaBetaSeq final : public QuotientSeq {
public:
    AlphaBetaSeq(double alpha, double beta) : alpha_(alpha), beta_(beta) {
        if (beta_ < 0) build_head_fix();
    }
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "m_alpha_beta(%g,%g)", alpha_, beta_);
        return buf;
    }
    double log_quotient(const BigIndex& p) const override {
        if (!head_.empty() && p.bit_length() <= 52 && p.to_u64() < head_.size()) return head_[p.to_u64()];
        return base(p);
    }
    double mean_log_value(const BigIndex& p) const override {
        if (p.is_zero()) return 0.0;
        if (!head_.empty() && p.bit_length() <= 52 && p.to_u64() <= head_.size()) {
            uint64_t n = p.to_u64();
            double s = 0.0;
            for (uint64_t i = 0; i < n; ++i) s += head_[i];
            return s / double(n);
        }
        double s = alpha_ * lgamma_mean(p) + beta_ * loglog_sum().mean(p);
        if (head_delta_ != 0.0) s += head_delta_ * std::exp(-p.log_natural());
        return s;
    }
    BigIndex count_below(double log_t) const override {
        if (log_t < log_quotient(BigIndex())) return BigIndex();
        uint64_t head_n = head_.empty() ? 0 : head_.size();
        for (uint64_t j = 0; j < head_n; ++j)
            if (head_[j] > log_t + 1e-15) return BigIndex(j);
        // solve base(x) = log_t in x = log2(p)
        double lo = 0.0, hi = 8.0;
        auto val = [&](double l2) { return base_at_log2(l2); };
        while (val(hi) <= log_t && hi < 4e15) hi *= 2.0;
        if (hi >= 4e15) throw input_error("count_below: count out of representable range");
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            (val(mid) <= log_t ? lo : hi) = mid;
        }
        if (hi < 58.0) {
            uint64_t n = uint64_t(std::floor(std::exp2(lo) + 0.5));
            n = std::max<uint64_t>(n, 2) - 2;
            while (base(BigIndex(n)) <= log_t + 1e-15) ++n; // first j with m_j > t
            return BigIndex(n);
        }
        return BigIndex::from_log2(lo);
    }

private:
    double alpha_, beta_;
    std::vector<double> head_;  // corrected log m on the modified initial segment
    double head_delta_ = 0.0;   // sum (corrected - base) over the head

    double base(const BigIndex& p) const {
        double lp1 = log_index_plus1(p);
        double ll = p.bit_length() <= 52 ? std::log(std::log(kE + double(p.to_u64() + 1)))
                                         : std::log(lp1);
        return alpha_ * lp1 + beta_ * ll;
    }
    double base_at_log2(double l2) const {
        double lp1 = l2 * kLog2; // log(p+1) ~ log p at the scales probed here
        if (l2 < 50.0) lp1 = std::log(std::exp2(l2) + 1.0);
        double arg = l2 < 50.0 ? std::log(kE + std::exp2(l2) + 1.0) : lp1;
        return alpha_ * lp1 + beta_ * std::log(arg);
    }
    void build_head_fix() {
        // (lc) forces nondecreasing quotients; with beta<0 the first terms of
        // the raw sequence can decrease, so they are replaced by a running max.
        // base is guaranteed nondecreasing once log(e+p+1) >= -beta/alpha; the
        // head runs from 0 to the first index past that point where base
        // clears the running max.
        double x_mono = std::exp(-beta_ / alpha_) - kE - 1.0;
        if (x_mono > double(uint64_t(1) << 22))
            throw input_error("m_alpha_beta: beta too negative relative to alpha for the (lc) head fix");
        uint64_t p_mono = x_mono > 0 ? uint64_t(x_mono) + 1 : 0;
        double run = base(BigIndex());
        std::vector<double> fixed{run};
        for (uint64_t p = 1; p < (uint64_t(1) << 23); ++p) {
            double b = base(BigIndex(p));
            if (p >= p_mono && b >= run) {
                head_ = std::move(fixed);
                for (uint64_t i = 0; i < head_.size(); ++i) head_delta_ += head_[i] - base(BigIndex(i));
                return;
            }
            run = std::max(run, b);
            fixed.push_back(run);
        }
        throw input_error("m_alpha_beta: modified head does not close");
    }
};

class ZeroBetaSeq final : public QuotientSeq {
public:
    explicit ZeroBetaSeq(double beta) : beta_(beta) {}
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "m_zero_beta(%g)", beta_);
        return buf;
    }
    double log_quotient(const BigIndex& p) const override {
        double lp1 = log_index_plus1(p);
        double ll = p.bit_length() <= 52 ? std::log(std::log(kE + double(p.to_u64() + 1))) : std::log(lp1);
        return beta_ * ll;
    }
    double mean_log_value(const BigIndex& p) const override { return p.is_zero() ? 0.0 : beta_ * loglog_sum().mean(p); }
    BigIndex count_below(double log_t) const override {
        if (log_t < log_quotient(BigIndex())) return BigIndex();
        double inner = std::exp(log_t / beta_); // log(e+p+1) at the crossing
        if (inner > 3e15) throw input_error("count_below: count out of representable range");
        if (inner < 40.0) {
            uint64_t n = uint64_t(std::floor(std::exp(inner)));
            n = n > kE + 2 ? n - 3 : 0;
            while (log_quotient(BigIndex(n)) <= log_t + 1e-15) ++n;
            return BigIndex(n);
        }
        return BigIndex::from_log2(inner / kLog2);
    }
    ScheduleBudget default_budget() const override { return ScheduleBudget::from_log2(uint64_t(1) << 20); }

private:
    double beta_;
};

class QPowerSeq final : public QuotientSeq {
public:
    explicit QPowerSeq(double q) : lq_(std::log(q)), q_(q) {}
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "m_q(%g)", q_);
        return buf;
    }
    double log_quotient(const BigIndex& p) const override {
        double pd = p.to_double();
        return (2.0 * pd + 1.0) * lq_; // M_p = q^{p^2}
    }
    double mean_log_value(const BigIndex& p) const override { return p.to_double() * lq_; }
    BigIndex count_below(double log_t) const override {
        double j = (log_t / lq_ - 1.0) / 2.0;
        if (j < 0.0) return BigIndex();
        return BigIndex(uint64_t(std::floor(j * (1.0 + 1e-15) + 1e-12)) + 1);
    }
    ScheduleBudget default_budget() const override { return ScheduleBudget::from_log2(500); }

private:
    double lq_, q_;
};

// Block family from the 2^{2^k} construction equivalent to Gevrey order 1:
// m_p = 2^{2^k} * 3 * (2^{2^k}/3)^{(j-1)/(2^k-1)} on [2^{2^k+j}, 2^{2^k+j+1}-1].
class ExampleASeq final : public QuotientSeq {
public:
    std::string name() const override { return "example_a"; }

    double log_quotient(const BigIndex& p) const override {
        if (p.bit_length() <= 3) return kInit[p.to_u64()];
        uint64_t e = p.bit_length() - 1; // floor(log2 p), e >= 3
        auto [k, j] = block_of(e);
        return value(k, j);
    }

    double mean_log_value(const BigIndex& p) const override {
        if (p.is_zero()) return 0.0;
        if (p.bit_length() <= 4 && p.to_u64() <= 8) {
            double s = 0.0;
            for (uint64_t i = 0; i < p.to_u64(); ++i) s += kInit[i];
            return s / double(p.to_u64());
        }
        double l2p = p.log2();
        uint64_t e = p.bit_length() - 1;
        auto [k, j] = block_of(e);
        // every power of two stays folded into R() so deep eras cannot overflow
        auto R = [&](double bits) { return std::exp2(bits - l2p); };
        double init_total = 6.0 * kLog2 + 4.0 * kLog3; // sum over p<8
        double acc = init_total * R(0.0);
        for (uint64_t kk = 1; kk < k; ++kk) {
            double A = std::exp2(double(kk)), J = A;
            double ak = A * kLog2 + kLog3;
            double dk = (A * kLog2 - kLog3) / (A - 1.0);
            // sum_j 2^{A+j}(a + (j-1)d) = a(2^B - 2^{A+1}) + d((J-2) 2^B + 2^{A+2}), B = A+J+1
            acc += ak * (R(A + J + 1.0) - R(A + 1.0)) + dk * ((J - 2.0) * R(A + J + 1.0) + R(A + 2.0));
        }
        {
            double A = std::exp2(double(k));
            double ak = A * kLog2 + kLog3;
            double dk = (A * kLog2 - kLog3) / (A - 1.0);
            double jd = double(j);
            // full blocks j' = 1..j-1
            acc += ak * (R(A + jd) - R(A + 1.0)) + dk * ((jd - 3.0) * R(A + jd) + 4.0 * R(A));
            // partial block
            acc += (1.0 - R(A + jd)) * value(k, j);
        }
        return fmt_check(acc, "example_a mean");
    }

    BigIndex count_below(double log_t) const override {
        double tie = 1e-12 * std::max(1.0, std::fabs(log_t));
        if (log_t < -tie) return BigIndex();
        if (log_t < kLog2 - tie) return BigIndex(2);
        if (log_t < kLog2 + kLog3 - tie) return BigIndex(4);
        for (uint64_t k = 1; k < 50; ++k) {
            double A = std::exp2(double(k));
            double ak = A * kLog2 + kLog3;
            double dk = (A * kLog2 - kLog3) / (A - 1.0);
            if (log_t < ak - tie) return BigIndex::pow2((uint64_t(1) << k) + 1); // first block of era k exceeds t
            double last = 2.0 * A * kLog2; // value(k, 2^k)
            if (log_t < last - tie) {
                // smallest j with value > t
                uint64_t j = uint64_t(std::floor((log_t - ak) / dk + 1.0 + 1e-9)) + 1;
                j = std::min<uint64_t>(std::max<uint64_t>(j, 1), uint64_t(1) << k);
                while (j > 1 && value(k, j - 1) > log_t + tie) --j;
                while (j <= (uint64_t(1) << k) && value(k, j) <= log_t + tie) ++j;
                if (j <= (uint64_t(1) << k)) return BigIndex::pow2((uint64_t(1) << k) + j);
            }
        }
        throw input_error("example_a count_below: out of range");
    }

    std::vector<BigIndex> sample_schedule(const ScheduleBudget& b) const override {
        std::vector<BigIndex> out;
        for (uint64_t p = 1; p <= 10; ++p) out.emplace_back(p);
        for (uint64_t k = 1; k < 62 && (uint64_t(1) << k) + 2 <= b.log2_max; ++k) {
            uint64_t J = uint64_t(1) << k;
            for (uint64_t j : block_picks(k, J))
                if ((uint64_t(1) << k) + j <= b.log2_max) out.push_back(BigIndex::pow2((uint64_t(1) << k) + j));
        }
        return dedup_sorted(std::move(out));
    }

    ScheduleBudget default_budget() const override { return ScheduleBudget::from_log2((uint64_t(1) << 13) + 2); }

    std::vector<std::pair<BigIndex, BigIndex>> adjacency_probes(const ScheduleBudget& b) const override {
        std::vector<std::pair<BigIndex, BigIndex>> out;
        for (uint64_t p = 0; p < 40; ++p) out.emplace_back(BigIndex(p), BigIndex(p + 1));
        uint64_t kmax = std::min<uint64_t>(era_cap(b.log2_max), 12);
        for (uint64_t k = 1; k <= kmax; ++k) {
            uint64_t J = uint64_t(1) << k;
            for (uint64_t j : block_picks(k, J)) {
                BigIndex s = BigIndex::pow2((uint64_t(1) << k) + j);
                out.emplace_back(s.minus(1), s); // block seam (includes the era seam, ratio 3)
            }
        }
        return out;
    }

    double schedule_log_cycle() const override { return 2.0; }

    static uint64_t era_cap(uint64_t log2max) {
        // era k ends at index 2^{2^{k+1}+1} - 1
        uint64_t k = 1;
        while (k + 2 < 63 && (uint64_t(1) << (k + 2)) + 1 <= log2max) ++k;
        return k;
    }
    static std::vector<uint64_t> block_picks(uint64_t k, uint64_t J) {
        std::vector<uint64_t> js;
        if (J <= 32) {
            for (uint64_t j = 1; j <= J; ++j) js.push_back(j);
        } else {
            for (uint64_t j = 1; j <= 4; ++j) js.push_back(j);
            for (uint64_t j = 8; j < J; j *= 2) js.push_back(j);
            js.push_back(J - 1);
            js.push_back(J);
            js.push_back(J / 2 + 1);
        }
        (void)k;
        return js;
    }

private:
    static constexpr double kInit[8] = {0.0, 0.0, kLog2, kLog2, kLog2 + kLog3, kLog2 + kLog3, kLog2 + kLog3,
                                        kLog2 + kLog3};

    static std::pair<uint64_t, uint64_t> block_of(uint64_t e) {
        // e = floor(log2 p) in [2^k + 1, 2^{k+1}]
        uint64_t k = 63 - uint64_t(std::countl_zero(e - 1));
        return {k, e - ((uint64_t(1) << k))};
    }
    static double value(uint64_t k, uint64_t j) {
        double A = std::exp2(double(k));
        double ak = A * kLog2 + kLog3;
        double dk = (A * kLog2 - kLog3) / (A - 1.0);
        return ak + double(j - 1) * dk;
    }
};

// Block family from the tau_k construction: gamma = omega = 1 yet no
// admissible nonzero proximate order.
class ExampleBSeq final : public QuotientSeq {
public:
    std::string name() const override { return "example_b"; }

    double log_quotient(const BigIndex& p) const override {
        if (p.bit_length() <= 3 && p.to_u64() <= 4) return kInit[p.to_u64()];
        auto [k, j] = locate(p);
        return value(k, j);
    }

    double mean_log_value(const BigIndex& p) const override {
        if (p.is_zero()) return 0.0;
        if (p.bit_length() <= 3 && p.to_u64() <= 5) {
            double s = 0.0;
            for (uint64_t i = 0; i < p.to_u64(); ++i) s += kInit[i];
            return s / double(p.to_u64());
        }
        auto [k, j] = locate(p);
        double l2p = p.log2();
        // every power of two stays folded into R() so deep eras cannot overflow
        auto R = [&](double bits) { return std::exp2(bits - l2p); };
        double acc = 4.0 * kLog2 * R(0.0); // indices 0..4
        for (uint64_t kk = 1; kk < k; ++kk) acc += era_sum_over(kk, R);
        {
            double A = std::exp2(double(k));
            double kd = double(k);
            // full blocks j' = 0..j-1 within era k
            uint64_t m1 = std::min<uint64_t>(j, k);
            if (m1 > 0) {
                double md = double(m1);
                acc += kLog2 * ((A + 2.0) * (R(A + md) - R(A)) + 2.0 * ((md - 2.0) * R(A + md) + 2.0 * R(A)));
            }
            if (j > k) {
                double n = double(j - k);
                double tau = (A - 2.0 * kd) / (A - kd);
                acc += kLog2 * ((A + 2.0 * kd) * (R(A + kd + n) - R(A + kd)) +
                                tau * ((n - 1.0) * R(A + kd + n) + R(A + kd)));
            }
            // blocks are (s, 2s]; indices i < p inside the block count p-s-1
            acc += (1.0 - R(A + double(j)) - std::exp(-p.log_natural())) * value(k, j);
        }
        return fmt_check(acc, "example_b mean");
    }

    BigIndex count_below(double log_t) const override {
        double tie = 1e-12 * std::max(1.0, std::fabs(log_t));
        if (log_t < -tie) return BigIndex();
        if (log_t < kLog2 - tie) return BigIndex(2);
        if (log_t < 2.0 * kLog2 - tie) return BigIndex(4);
        if (log_t < 4.0 * kLog2 - tie) return BigIndex(5);
        for (uint64_t k = 1; k < 50; ++k) {
            uint64_t J = uint64_t(1) << k;
            if (log_t < value(k, 0) - tie) return BigIndex::pow2((uint64_t(1) << k)).plus(1);
            if (log_t < value(k, J - 1) - tie) {
                uint64_t j = 0;
                while (j < J && value(k, j) <= log_t + tie) ++j;
                return BigIndex::pow2((uint64_t(1) << k) + j).plus(1);
            }
        }
        throw input_error("example_b count_below: out of range");
    }

    std::vector<BigIndex> sample_schedule(const ScheduleBudget& b) const override {
        std::vector<BigIndex> out;
        for (uint64_t p = 1; p <= 8; ++p) out.emplace_back(p);
        for (uint64_t k = 1; k < 61 && (uint64_t(1) << k) + 1 <= b.log2_max; ++k)
            for (uint64_t j : block_picks(k))
                if ((uint64_t(1) << k) + j <= b.log2_max) out.push_back(BigIndex::pow2((uint64_t(1) << k) + j));
        return dedup_sorted(std::move(out));
    }

    ScheduleBudget default_budget() const override { return ScheduleBudget::from_log2((uint64_t(1) << 17) + 2); }

    std::vector<std::pair<BigIndex, BigIndex>> adjacency_probes(const ScheduleBudget& b) const override {
        std::vector<std::pair<BigIndex, BigIndex>> out;
        for (uint64_t p = 0; p < 40; ++p) out.emplace_back(BigIndex(p), BigIndex(p + 1));
        uint64_t kmax = std::min<uint64_t>(era_cap(b.log2_max), 12);
        for (uint64_t k = 1; k <= kmax; ++k)
            for (uint64_t j : block_picks(k)) {
                BigIndex s = BigIndex::pow2((uint64_t(1) << k) + j);
                out.emplace_back(s, s.plus(1)); // block seams: block (k,j) starts at s+1
            }
        return out;
    }

    double schedule_log_cycle() const override { return 2.0; }

    static uint64_t era_cap(uint64_t log2max) {
        // era k ends at index 2^{2^{k+1}}
        uint64_t k = 1;
        while (k + 2 < 62 && (uint64_t(1) << (k + 2)) <= log2max) ++k;
        return k;
    }
    std::vector<uint64_t> block_picks(uint64_t k) const {
        uint64_t J = uint64_t(1) << k;
        std::vector<uint64_t> js;
        if (J <= 32) {
            for (uint64_t j = 0; j <= J; ++j) js.push_back(j);
        } else {
            for (uint64_t j = 0; j <= std::min<uint64_t>(k + 2, J); ++j) js.push_back(j);
            for (uint64_t j = k + 2; j < J; j *= 2) js.push_back(j);
            js.push_back(J - 1);
            js.push_back(J);
            if (k >= 1) js.push_back(k - 1);
        }
        return js;
    }

private:
    static constexpr double kInit[5] = {0.0, 0.0, kLog2, kLog2, 2.0 * kLog2};

    static std::pair<uint64_t, uint64_t> locate(const BigIndex& p) {
        // p in (2^e, 2^{e+1}]; era k has e in [2^k, 2^{k+1}-1]
        uint64_t bl = p.bit_length();
        bool exact_pow = (p == BigIndex::pow2(bl - 1));
        uint64_t e = exact_pow ? bl - 2 : bl - 1;
        uint64_t k = 63 - uint64_t(std::countl_zero(e));
        return {k, e - (uint64_t(1) << k)};
    }
    static double value(uint64_t k, uint64_t j) {
        double A = std::exp2(double(k));
        if (j + 1 <= k)
            return (A + 2.0 * double(j + 1)) * kLog2;
        double tau = (A - 2.0 * double(k)) / (A - double(k));
        return (A + 2.0 * double(k) + tau * double(j - k + 1)) * kLog2;
    }
    template <class Fn>
    static double era_sum_over(uint64_t k, Fn R) {
        double A = std::exp2(double(k));
        uint64_t J = uint64_t(1) << k;
        double kd = double(k), n = double(J - k);
        double tau = (A - 2.0 * kd) / (A - kd);
        double p1 = kLog2 * ((A + 2.0) * (R(A + kd) - R(A)) + 2.0 * ((kd - 2.0) * R(A + kd) + 2.0 * R(A)));
        double p2 = kLog2 * ((A + 2.0 * kd) * (R(2.0 * A) - R(A + kd)) + tau * ((n - 1.0) * R(2.0 * A) + R(A + kd)));
        return p1 + p2;
    }
};

// Riesz counterexample: log m_p = sum_{k<=p} delta_k / k with delta in {2,3}
// switching on the double-exponential boundaries k_n = 2^{3^n}, q_n = k_n^2.
class RieszSeq final : public QuotientSeq {
public:
    static constexpr uint64_t kDenseMax = uint64_t(1) << 20;

    std::string name() const override { return "example_riesz"; }

    static int delta_at_u64(uint64_t k) {
        if (k <= 2) return 2;
        for (int j = 0; j < 5; ++j) {
            uint64_t e = pow3(j); // 1, 3, 9, 27, 81
            if (e <= 62 && k <= (uint64_t(1) << e)) return 2;               // (q_{j-1}, k_j]
            if (2 * e > 62 || k <= (uint64_t(1) << (2 * e))) return 3;      // (k_j, q_j]
            uint64_t e1 = pow3(j + 1);
            if (e1 > 62 || k <= (uint64_t(1) << e1)) return 2;              // (q_j, k_{j+1}]
        }
        return 2;
    }

    static int delta_at(const BigIndex& k) {
        if (k.fits_u64() && k.to_u64() <= (uint64_t(1) << 40)) return delta_at_u64(k.to_u64());
        for (int j = 0; j < 40; ++j) {
            BigIndex kj = BigIndex::pow2(pow3(j));
            BigIndex qj = BigIndex::pow2(2 * pow3(j));
            if (k <= kj) return 2;
            if (k <= qj) return 3;
            BigIndex kj1 = BigIndex::pow2(pow3(j + 1));
            if (k <= kj1) return 2;
        }
        throw input_error("example_riesz: index out of range");
    }

    // A(p) = sum_{k<=p} delta_k/k
    static double delta_harmonic_sum(const BigIndex& p) {
        if (p.is_zero()) return 0.0;
        if (p.fits_u64() && p.to_u64() <= kDenseMax) return dense_prefix(p.to_u64());
        double acc = 2.0 * harmonic(BigIndex(2));
        BigIndex prev(2);
        for (int j = 0; j < 40; ++j) {
            BigIndex qj = BigIndex::pow2(2 * pow3(j));
            if (p <= qj) return acc + 3.0 * (harmonic(p) - harmonic(prev));
            acc += 3.0 * (harmonic(qj) - harmonic(prev));
            prev = qj;
            BigIndex kj1 = BigIndex::pow2(pow3(j + 1));
            if (p <= kj1) return acc + 2.0 * (harmonic(p) - harmonic(prev));
            acc += 2.0 * (harmonic(kj1) - harmonic(prev));
            prev = kj1;
        }
        throw input_error("example_riesz: index out of range");
    }

    // B(p)/p with B(p) = sum_{k<=p} delta_k
    static double delta_count_mean(const BigIndex& p) {
        double l2p = p.log2();
        auto seg = [&](const BigIndex& a, const BigIndex& b, double d) {
            // d * (min(b,p) - a) / p
            const BigIndex& hi = b < p ? b : p;
            if (!(a < hi)) return 0.0;
            double r_hi = std::exp2(hi.log2() - l2p);
            double r_lo = a.is_zero() ? 0.0 : std::exp2(a.log2() - l2p);
            return d * (r_hi - r_lo);
        };
        double acc = seg(BigIndex(), BigIndex(2), 2.0);
        BigIndex prev(2);
        for (int j = 0; j < 40; ++j) {
            BigIndex qj = BigIndex::pow2(2 * pow3(j));
            acc += seg(prev, qj, 3.0);
            if (p <= qj) return acc;
            prev = qj;
            BigIndex kj1 = BigIndex::pow2(pow3(j + 1));
            acc += seg(prev, kj1, 2.0);
            if (p <= kj1) return acc;
            prev = kj1;
        }
        throw input_error("example_riesz: index out of range");
    }

    double log_quotient(const BigIndex& p) const override { return delta_harmonic_sum(p); }
    double mean_log_value(const BigIndex& p) const override {
        if (p.is_zero()) return 0.0;
        return delta_harmonic_sum(p) - delta_count_mean(p);
    }

    BigIndex count_below(double log_t) const override {
        if (log_t < 0.0) return BigIndex();
        // dense range first
        if (log_t <= dense_prefix(kDenseMax)) {
            uint64_t lo = 0, hi = kDenseMax;
            while (lo < hi) {
                uint64_t mid = lo + (hi - lo + 1) / 2;
                if (dense_prefix(mid) <= log_t + 1e-15)
                    lo = mid;
                else
                    hi = mid - 1;
            }
            return BigIndex(lo + 1); // indices 0..lo all have log m <= log_t
        }
        // walk runs; invert the harmonic sum inside the crossing run
        double acc = 2.0 * harmonic(BigIndex(2));
        BigIndex prev(2);
        for (int j = 0; j < 40; ++j) {
            for (int half = 0; half < 2; ++half) {
                double d = half == 0 ? 3.0 : 2.0;
                BigIndex end = half == 0 ? BigIndex::pow2(2 * pow3(j)) : BigIndex::pow2(pow3(j + 1));
                double at_end = acc + d * (harmonic(end) - harmonic(prev));
                if (log_t <= at_end) {
                    double h_target = harmonic(prev) + (log_t - acc) / d;
                    double l2 = (h_target - kEulerGamma) / kLog2;
                    l2 = std::min(l2, end.log2());
                    l2 = std::max(l2, prev.log2());
                    return BigIndex::from_log2(l2);
                }
                acc = at_end;
                prev = end;
            }
        }
        throw input_error("example_riesz count_below: out of range");
    }

    std::vector<BigIndex> sample_schedule(const ScheduleBudget& b) const override {
        std::vector<BigIndex> out;
        for (uint64_t p = 2; p <= 64; ++p) out.emplace_back(p);
        for (int n = 0; n < 40 && 2 * pow3(n) <= b.log2_max; ++n) {
            uint64_t lk = pow3(n), lq = 2 * pow3(n), lk1 = 3 * pow3(n);
            out.push_back(BigIndex::pow2(lk));
            out.push_back(BigIndex::pow2(lq));
            for (int i = 1; i <= 5; ++i) {
                out.push_back(BigIndex::pow2(lk + uint64_t(double(lq - lk) * i / 6.0)));
                if (lk1 <= b.log2_max)
                    out.push_back(BigIndex::pow2(lq + uint64_t(double(lk1 - lq) * i / 6.0)));
            }
        }
        return dedup_sorted(std::move(out));
    }

    ScheduleBudget default_budget() const override {
        return ScheduleBudget::from_log2(2 * pow3(20));
    }

    std::vector<std::pair<BigIndex, BigIndex>> adjacency_probes(const ScheduleBudget&) const override {
        std::vector<std::pair<BigIndex, BigIndex>> out;
        for (uint64_t p = 0; p < 64; ++p) out.emplace_back(BigIndex(p), BigIndex(p + 1));
        for (int n = 1; n <= 6; ++n) {
            BigIndex kn = BigIndex::pow2(pow3(n));
            out.emplace_back(kn.minus(1), kn);
            out.emplace_back(kn, kn.plus(1));
        }
        return out;
    }

    double schedule_log_cycle() const override { return 3.0; }

    static uint64_t pow3(int n) {
        uint64_t v = 1;
        for (int i = 0; i < n; ++i) v *= 3;
        return v;
    }

private:
    static double dense_prefix(uint64_t p) {
        static std::mutex mu;
        static std::vector<double> pre{0.0}; // pre[k] = sum_{i<=k} delta_i/i
        std::lock_guard<std::mutex> lock(mu);
        while (pre.size() <= p) {
            uint64_t k = pre.size();
            pre.push_back(pre.back() + double(delta_at_u64(k)) / double(k));
        }
        return pre[p];
    }
};

class TableSeq final : public QuotientSeq {
public:
    TableSeq(std::string name, std::vector<double> log_quotients) : name_(std::move(name)), lq_(std::move(log_quotients)) {
        if (lq_.empty()) throw input_error("table family: log_quotients must be nonempty");
        prefix_.push_back(0.0);
        for (double v : lq_) prefix_.push_back(prefix_.back() + v);
    }
    std::string name() const override { return name_; }
    double log_quotient(const BigIndex& p) const override { return lq_.at(idx(p)); }
    double mean_log_value(const BigIndex& p) const override {
        if (p.is_zero()) return 0.0;
        uint64_t i = idx_value(p);
        return prefix_.at(i) / double(i);
    }
    double log_value(const BigIndex& p) const override { return prefix_.at(idx_value(p)); }
    BigIndex count_below(double log_t) const override {
        uint64_t n = 0;
        while (n < lq_.size() && lq_[n] <= log_t + 1e-15) ++n;
        return BigIndex(n);
    }
    std::vector<BigIndex> sample_schedule(const ScheduleBudget&) const override {
        std::vector<BigIndex> out;
        uint64_t step = std::max<uint64_t>(1, lq_.size() / 4096);
        for (uint64_t p = 0; p < lq_.size(); p += step) out.emplace_back(p);
        if ((lq_.size() - 1) % step) out.emplace_back(lq_.size() - 1);
        return out;
    }
    std::vector<std::pair<BigIndex, BigIndex>> adjacency_probes(const ScheduleBudget&) const override {
        std::vector<std::pair<BigIndex, BigIndex>> out;
        for (uint64_t p = 0; p + 1 < lq_.size(); ++p) out.emplace_back(BigIndex(p), BigIndex(p + 1));
        return out;
    }
    ScheduleBudget default_budget() const override {
        ScheduleBudget b;
        b.log2_max = 64;
        return b;
    }

private:
    std::string name_;
    std::vector<double> lq_;
    std::vector<double> prefix_;

    uint64_t idx(const BigIndex& p) const {
        if (!p.fits_u64() || p.to_u64() >= lq_.size())
            throw input_error(name_ + ": index beyond table length " + std::to_string(lq_.size()));
        return p.to_u64();
    }
    uint64_t idx_value(const BigIndex& p) const {
        if (!p.fits_u64() || p.to_u64() > lq_.size())
            throw input_error(name_ + ": index beyond table length " + std::to_string(lq_.size()));
        return p.to_u64();
    }
};

} // namespace

// --- FamilySpec ---------------------------------------------------------------

FamilySpec FamilySpec::parse(const nlohmann::json& j) {
    FamilySpec s;
    if (!j.contains("family")) throw input_error("family spec: missing \"family\" key");
    std::string f = j.at("family").get<std::string>();
    auto need = [&](const char* key) -> double {
        if (!j.contains(key)) throw input_error("family spec: " + f + " needs \"" + key + "\"");
        return j.at(key).get<double>();
    };
    if (f == "gevrey") {
        s.kind = Kind::gevrey;
        s.alpha = need("alpha");
        if (!(s.alpha > 0)) throw input_error("gevrey: alpha must be > 0");
    } else if (f == "m_alpha_beta") {
        s.kind = Kind::m_alpha_beta;
        s.alpha = need("alpha");
        s.beta = need("beta");
        if (!(s.alpha > 0)) throw input_error("m_alpha_beta: alpha must be > 0");
    } else if (f == "m_zero_beta") {
        s.kind = Kind::m_zero_beta;
        s.beta = need("beta");
        if (!(s.beta > 0)) throw input_error("m_zero_beta: beta must be > 0");
    } else if (f == "m_q") {
        s.kind = Kind::m_q;
        s.q = need("q");
        if (!(s.q > 1)) throw input_error("m_q: q must be > 1");
    } else if (f == "example_a") {
        s.kind = Kind::example_a;
    } else if (f == "example_b") {
        s.kind = Kind::example_b;
    } else if (f == "example_riesz") {
        s.kind = Kind::example_riesz;
    } else if (f == "table") {
        s.kind = Kind::table;
        if (!j.contains("log_quotients") || !j.at("log_quotients").is_array() || j.at("log_quotients").empty())
            throw input_error("table: needs nonempty \"log_quotients\" array");
        s.log_quotients = j.at("log_quotients").get<std::vector<double>>();
    } else {
        throw input_error("unknown family: " + f);
    }
    return s;
}

FamilySpec FamilySpec::parse_arg(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') return parse(nlohmann::json::parse(arg));
    {
        std::ifstream in(arg);
        if (in.good()) {
            nlohmann::json j;
            in >> j;
            return parse(j);
        }
    }
    // shorthand name:param:param
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
    j["family"] = parts[0];
    auto num = [&](size_t i) {
        if (parts.size() <= i) throw input_error("family shorthand " + arg + ": missing parameter");
        return std::stod(parts[i]);
    };
    if (parts[0] == "gevrey") j["alpha"] = num(1);
    if (parts[0] == "m_alpha_beta") {
        j["alpha"] = num(1);
        j["beta"] = num(2);
    }
    if (parts[0] == "m_zero_beta") j["beta"] = num(1);
    if (parts[0] == "m_q") j["q"] = num(1);
    return parse(j);
}

nlohmann::ordered_json FamilySpec::to_json() const {
    nlohmann::ordered_json j;
    switch (kind) {
        case Kind::gevrey:
            j["family"] = "gevrey";
            j["alpha"] = alpha;
            break;
        case Kind::m_alpha_beta:
            j["family"] = "m_alpha_beta";
            j["alpha"] = alpha;
            j["beta"] = beta;
            break;
        case Kind::m_zero_beta:
            j["family"] = "m_zero_beta";
            j["beta"] = beta;
            break;
        case Kind::m_q:
            j["family"] = "m_q";
            j["q"] = q;
            break;
        case Kind::example_a: j["family"] = "example_a"; break;
        case Kind::example_b: j["family"] = "example_b"; break;
        case Kind::example_riesz: j["family"] = "example_riesz"; break;
        case Kind::table:
            j["family"] = "table";
            j["log_quotients"] = log_quotients;
            break;
    }
    return j;
}

std::string FamilySpec::name() const {
    return make_family(*this)->name();
}

SeqPtr make_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::gevrey: return std::make_shared<GevreySeq>(spec.alpha);
        case FamilySpec::Kind::m_alpha_beta: return std::make_shared<AlphaBetaSeq>(spec.alpha, spec.beta);
        case FamilySpec::Kind::m_zero_beta: return std::make_shared<ZeroBetaSeq>(spec.beta);
        case FamilySpec::Kind::m_q: return std::make_shared<QPowerSeq>(spec.q);
        case FamilySpec::Kind::example_a: return std::make_shared<ExampleASeq>();
        case FamilySpec::Kind::example_b: return std::make_shared<ExampleBSeq>();
        case FamilySpec::Kind::example_riesz: return std::make_shared<RieszSeq>();
        case FamilySpec::Kind::table: return std::make_shared<TableSeq>("table", spec.log_quotients);
    }
    throw input_error("make_family: bad kind");
}

SeqPtr make_tabulated(std::string name, std::vector<double> log_values) {
    if (log_values.size() < 2) throw input_error("make_tabulated: need at least 2 values");
    if (std::fabs(log_values[0]) > 1e-12) throw input_error("make_tabulated: log M_0 must be 0");
    std::vector<double> lq(log_values.size() - 1);
    for (size_t i = 0; i + 1 < log_values.size(); ++i) lq[i] = log_values[i + 1] - log_values[i];
    return std::make_shared<TableSeq>(std::move(name), std::move(lq));
}

SamplePoint alpha_beta(const QuotientSeq& seq, const BigIndex& p) {
    SamplePoint sp;
    sp.p = p;
    sp.log_m = seq.log_quotient(p);
    sp.alpha = sp.log_m;
    if (p.is_zero()) {
        sp.log_M = 0.0;
        sp.beta = sp.alpha;
    } else {
        double mean = seq.mean_log_value(p);
        sp.log_M = mean * p.to_double();
        sp.beta = sp.log_m - mean;
    }
    return sp;
}

void require_nondecreasing_probe(const QuotientSeq& seq) {
    double prev = -std::numeric_limits<double>::infinity();
    for (uint64_t p = 0; p <= 64; ++p) {
        double v;
        try {
            v = seq.log_quotient(BigIndex(p));
        } catch (const Error&) {
            break; // short table
        }
        if (v < prev - 1e-12 * std::max(1.0, std::fabs(prev)))
            throw input_error(seq.name() + ": quotients are not nondecreasing (p=" + std::to_string(p) + ")");
        prev = v;
    }
}

} // namespace seqlab::seqcore
