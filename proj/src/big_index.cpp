#include "seqlab/big_index.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

#include "seqlab/error.hpp"

namespace seqlab {

namespace {
// Materialization cap: 2^24 bits = 2 MiB. Block-family indices up to era 16
// (about 2^16 + 17 bits) stay far below; the cap blocks accidental
// materialization of double-exponential Riesz indices like 2^(3^20).
constexpr uint64_t kMaxMaterializeBits = uint64_t(1) << 24;
constexpr uint64_t kMaxExp2 = uint64_t(1) << 52;
} // namespace

BigIndex::BigIndex(uint64_t v) {
    if (v != 0) mant_.push_back(v);
}

BigIndex BigIndex::pow2(uint64_t e) {
    BigIndex r(1);
    r.exp2_ = e;
    if (e > kMaxExp2) throw input_error("BigIndex: exponent out of range");
    return r;
}

BigIndex BigIndex::from_log2(double l2) {
    if (!(l2 >= 0.0)) return BigIndex();
    if (l2 > double(kMaxExp2)) throw input_error("BigIndex::from_log2: magnitude out of range");
    if (l2 < 62.0) {
        double v = std::exp2(l2);
        return BigIndex(uint64_t(std::llround(v)));
    }
    double fl = std::floor(l2);
    double frac = l2 - fl;
    uint64_t mant = uint64_t(std::llround(std::exp2(52.0 + frac)));
    return BigIndex(mant).shifted_left(uint64_t(fl) - 52);
}

void BigIndex::normalize() {
    while (!mant_.empty() && mant_.back() == 0) mant_.pop_back();
    if (mant_.empty()) exp2_ = 0;
}

uint64_t BigIndex::bit_length() const {
    if (mant_.empty()) return 0;
    uint64_t top_bits = 64u - uint64_t(std::countl_zero(mant_.back()));
    return exp2_ + 64 * uint64_t(mant_.size() - 1) + top_bits;
}

double BigIndex::log2() const {
    if (mant_.empty()) return -std::numeric_limits<double>::infinity();
    // top <= 192 bits into a long double, rest contributes below 2^-128
    size_t n = mant_.size();
    long double x = 0.0L;
    size_t lo = n >= 3 ? n - 3 : 0;
    for (size_t i = n; i-- > lo;) x = x * 18446744073709551616.0L + (long double)mant_[i];
    long double l2 = std::log2l(x) + 64.0L * (long double)lo + (long double)exp2_;
    return double(l2);
}

double BigIndex::log_natural() const {
    return log2() * 0.69314718055994530942;
}

double BigIndex::to_double() const {
    if (mant_.empty()) return 0.0;
    if (bit_length() > 1024) return std::numeric_limits<double>::infinity();
    long double v = 0.0L;
    for (size_t i = mant_.size(); i-- > 0;) v = v * 18446744073709551616.0L + (long double)mant_[i];
    return double(std::ldexp(v, int(exp2_)));
}

bool BigIndex::fits_u64() const { return bit_length() <= 64; }

uint64_t BigIndex::to_u64() const {
    if (!fits_u64()) throw input_error("BigIndex::to_u64: value does not fit");
    if (mant_.empty()) return 0;
    return mant_[0] << exp2_;
}

BigIndex BigIndex::shifted_left(uint64_t e) const {
    BigIndex r = *this;
    if (r.is_zero()) return r;
    r.exp2_ += e;
    if (r.exp2_ > kMaxExp2) throw input_error("BigIndex: exponent out of range");
    return r;
}

BigIndex BigIndex::times(uint64_t m) const {
    if (m == 0 || is_zero()) return BigIndex();
    BigIndex r;
    r.exp2_ = exp2_;
    r.mant_.reserve(mant_.size() + 1);
    unsigned __int128 carry = 0;
    for (uint64_t limb : mant_) {
        unsigned __int128 prod = (unsigned __int128)limb * m + carry;
        r.mant_.push_back(uint64_t(prod));
        carry = prod >> 64;
    }
    if (carry) r.mant_.push_back(uint64_t(carry));
    return r;
}

void BigIndex::materialize() {
    if (exp2_ == 0 || mant_.empty()) { exp2_ = 0; return; }
    if (bit_length() > kMaxMaterializeBits)
        throw input_error("BigIndex: index too large for exact add/sub");
    uint64_t limb_shift = exp2_ / 64, bit_shift = exp2_ % 64;
    std::vector<uint64_t> out(mant_.size() + limb_shift + 1, 0);
    for (size_t i = 0; i < mant_.size(); ++i) {
        out[i + limb_shift] |= mant_[i] << bit_shift;
        if (bit_shift) out[i + limb_shift + 1] |= mant_[i] >> (64 - bit_shift);
    }
    mant_ = std::move(out);
    exp2_ = 0;
    normalize();
}

BigIndex BigIndex::plus(uint64_t v) const {
    BigIndex r = *this;
    r.materialize();
    unsigned __int128 carry = v;
    for (size_t i = 0; i < r.mant_.size() && carry; ++i) {
        unsigned __int128 s = (unsigned __int128)r.mant_[i] + carry;
        r.mant_[i] = uint64_t(s);
        carry = s >> 64;
    }
    if (carry) r.mant_.push_back(uint64_t(carry));
    r.normalize();
    return r;
}

BigIndex BigIndex::minus(uint64_t v) const {
    BigIndex r = *this;
    r.materialize();
    if (*this < BigIndex(v)) throw input_error("BigIndex::minus: negative result");
    unsigned __int128 borrow = v;
    for (size_t i = 0; i < r.mant_.size() && borrow; ++i) {
        unsigned __int128 cur = r.mant_[i];
        if (cur >= borrow) {
            r.mant_[i] = uint64_t(cur - borrow);
            borrow = 0;
        } else {
            r.mant_[i] = uint64_t((((unsigned __int128)1 << 64) + cur) - borrow);
            borrow = 1;
        }
    }
    r.normalize();
    return r;
}

BigIndex BigIndex::floor_scale(double factor) const {
    if (!(factor > 0)) throw input_error("BigIndex::floor_scale: factor must be positive");
    if (is_zero()) return BigIndex();
    // factor = m53 * 2^(e-52) with m53 in [2^52, 2^53)
    int e = 0;
    double fr = std::frexp(factor, &e); // fr in [0.5,1)
    uint64_t m53 = uint64_t(std::llround(fr * 9007199254740992.0)); // fr * 2^53
    int shift = 53 - e;                                             // value*m53 >> shift
    BigIndex prod = times(m53);
    if (shift <= 0) return prod.shifted_left(uint64_t(-shift));
    uint64_t s = uint64_t(shift);
    if (prod.exp2_ >= s) {
        prod.exp2_ -= s;
        return prod;
    }
    s -= prod.exp2_;
    prod.exp2_ = 0;
    uint64_t limb_shift = s / 64, bit_shift = s % 64;
    std::vector<uint64_t> out;
    for (size_t i = limb_shift; i < prod.mant_.size(); ++i) {
        uint64_t lo = prod.mant_[i] >> bit_shift;
        uint64_t hi = (bit_shift && i + 1 < prod.mant_.size()) ? prod.mant_[i + 1] << (64 - bit_shift) : 0;
        out.push_back(lo | hi);
    }
    prod.mant_ = std::move(out);
    prod.normalize();
    return prod;
}

uint64_t BigIndex::limb_at(uint64_t i) const {
    uint64_t base = exp2_ / 64, s = exp2_ % 64;
    if (i < base) return 0;
    uint64_t j = i - base;
    uint64_t lo = j < mant_.size() ? mant_[j] : 0;
    uint64_t hi = 0;
    if (s) {
        lo <<= s;
        if (j >= 1 && j - 1 < mant_.size()) hi = mant_[j - 1] >> (64 - s);
    }
    return lo | hi;
}

std::strong_ordering BigIndex::operator<=>(const BigIndex& o) const {
    uint64_t bl = bit_length(), blo = o.bit_length();
    if (bl != blo) return bl <=> blo;
    if (bl == 0) return std::strong_ordering::equal;
    uint64_t top = (bl + 63) / 64;
    for (uint64_t i = top; i-- > 0;) {
        uint64_t a = limb_at(i), b = o.limb_at(i);
        if (a != b) return a <=> b;
    }
    return std::strong_ordering::equal;
}

std::string BigIndex::str() const {
    if (mant_.empty()) return "0";
    if (bit_length() <= 256) {
        BigIndex tmp = *this;
        tmp.materialize();
        std::vector<uint64_t> limbs = tmp.mant_;
        std::string out;
        const uint64_t base = 10000000000000000000ull; // 10^19
        std::vector<uint64_t> chunks;
        while (!limbs.empty()) {
            unsigned __int128 rem = 0;
            for (size_t i = limbs.size(); i-- > 0;) {
                unsigned __int128 cur = (rem << 64) | limbs[i];
                limbs[i] = uint64_t(cur / base);
                rem = cur % base;
            }
            while (!limbs.empty() && limbs.back() == 0) limbs.pop_back();
            chunks.push_back(uint64_t(rem));
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%llu", (unsigned long long)chunks.back());
        out = buf;
        for (size_t i = chunks.size() - 1; i-- > 0;) {
            std::snprintf(buf, sizeof buf, "%019llu", (unsigned long long)chunks[i]);
            out += buf;
        }
        return out;
    }
    long double l10 = (long double)log2() * 0.30102999566398119521L;
    long long ex = (long long)std::floor(l10);
    long double m = std::pow(10.0L, l10 - (long double)ex);
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.12Lfe+%lld", m, ex);
    return buf;
}

} // namespace seqlab
