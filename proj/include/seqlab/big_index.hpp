#ifndef SEQLAB_BIG_INDEX_HPP
#define SEQLAB_BIG_INDEX_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace seqlab {

// Exact nonnegative integer of unbounded magnitude, stored as mant * 2^exp2.
// Sequence indices in the block families reach 2^(2^16) and beyond; the
// power-of-two factor keeps those representable without materializing the
// full bit pattern.  Addition/subtraction of small offsets materializes the
// mantissa and is guarded by a size cap.
class BigIndex {
public:
    BigIndex() = default;                // zero
    BigIndex(uint64_t v);                // NOLINT(google-explicit-constructor)

    static BigIndex pow2(uint64_t e);
    // Nearest integer to 2^l2 (top 53 bits of precision). Used where a count
    // is derived from a log-domain quantity.
    static BigIndex from_log2(double l2);

    bool is_zero() const { return mant_.empty(); }
    // value < 2^bit_length, value >= 2^(bit_length-1); 0 for zero.
    uint64_t bit_length() const;

    double log2() const;                 // -inf for zero; <= 1 ulp relative error
    double log_natural() const;
    double to_double() const;            // +inf when above double range
    bool fits_u64() const;
    uint64_t to_u64() const;             // throws input_error when too large

    BigIndex shifted_left(uint64_t e) const;   // * 2^e
    BigIndex times(uint64_t m) const;
    BigIndex plus(uint64_t v) const;           // materializes
    BigIndex minus(uint64_t v) const;          // materializes; result must stay >= 0
    // floor(factor * value) for factor > 0, with ~2^-52 relative accuracy in
    // the scale factor.  Exact for factor equal to a small power of two.
    BigIndex floor_scale(double factor) const;

    std::strong_ordering operator<=>(const BigIndex& o) const;
    bool operator==(const BigIndex& o) const { return (*this <=> o) == std::strong_ordering::equal; }

    // Exact decimal below 256 bits, otherwise "~d.dddddddddddde+N".
    std::string str() const;

private:
    std::vector<uint64_t> mant_;   // little-endian limbs, top limb nonzero
    uint64_t exp2_ = 0;

    void normalize();
    void materialize();                  // fold exp2_ into mant_
    uint64_t limb_at(uint64_t i) const;  // limb i of mant_ << exp2_
};

} // namespace seqlab

#endif
