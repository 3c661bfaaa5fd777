#include "seqlab/harmonic.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace seqlab {

namespace {
constexpr uint64_t kExactMax = 10000000;

double exact_sum(uint64_t p) {
    // Kahan; ~1e-16 relative at 1e7
    double s = 0.0, c = 0.0;
    for (uint64_t k = 1; k <= p; ++k) {
        double y = 1.0 / double(k) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

std::mutex cache_mutex;
std::map<uint64_t, double>& cache() {
    static std::map<uint64_t, double> c;
    return c;
}
} // namespace

double harmonic(uint64_t p) {
    if (p == 0) return 0.0;
    if (p <= kExactMax) {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache().find(p);
        if (it != cache().end()) return it->second;
        double v = exact_sum(p);
        cache()[p] = v;
        return v;
    }
    double pd = double(p);
    return std::log(pd) + kEulerGamma + 1.0 / (2.0 * pd) - 1.0 / (12.0 * pd * pd);
}

double harmonic(const BigIndex& p) {
    if (p.fits_u64()) return harmonic(p.to_u64());
    double pd = p.to_double();
    if (std::isfinite(pd)) return std::log(pd) + kEulerGamma + 1.0 / (2.0 * pd) - 1.0 / (12.0 * pd * pd);
    return harmonic_from_log(p.log_natural());
}

double harmonic_from_log(double log_p) {
    double inv = std::exp(-log_p); // 0 underflow is fine here
    return log_p + kEulerGamma + 0.5 * inv - inv * inv / 12.0;
}

double harmonic_eps_diff(const BigIndex& a, const BigIndex& b) {
    auto eps_small = [](uint64_t p) { return harmonic(p) - std::log(double(p)) - kEulerGamma; };
    auto eps_large = [](const BigIndex& p) {
        double inv = std::exp(-p.log_natural());
        return 0.5 * inv - inv * inv / 12.0;
    };
    bool a_small = a.fits_u64() && a.to_u64() <= kExactMax;
    bool b_small = b.fits_u64() && b.to_u64() <= kExactMax;
    double ea = a_small ? eps_small(a.to_u64()) : eps_large(a);
    double eb = b_small ? eps_small(b.to_u64()) : eps_large(b);
    return eb - ea;
}

} // namespace seqlab
