#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace fraudsys {

// Unsigned 256-bit integer with wrapping arithmetic, little-endian limb
// order (w[0] holds the least significant 64 bits). Big-endian byte-string
// conversions match the interpretation of hash digests as 256-bit values.
class U256 {
public:
    constexpr U256() : w_{0, 0, 0, 0} {}
    constexpr U256(uint64_t v) : w_{v, 0, 0, 0} {} // NOLINT: implicit by design

    static U256 from_be_bytes(std::span<const uint8_t, 32> bytes);
    std::array<uint8_t, 32> to_be_bytes() const;

    // Accepts 1..64 hex digits, optional 0x prefix.
    static std::optional<U256> from_hex(std::string_view hex);
    std::string to_hex() const; // no leading zeros, lowercase, no prefix

    static std::optional<U256> from_dec(std::string_view dec);
    std::string to_dec() const;

    // 2^255 - 1, the largest target accepted by the puzzle system.
    static constexpr U256 target_one() {
        U256 v;
        v.w_ = {~0ull, ~0ull, ~0ull, ~0ull >> 1};
        return v;
    }

    bool is_zero() const { return (w_[0] | w_[1] | w_[2] | w_[3]) == 0; }
    // Number of significant bits; 0 for zero.
    int bits() const;
    double to_double() const;
    // Low 64 bits (callers check fits_u64 when exactness matters).
    uint64_t low64() const { return w_[0]; }
    bool fits_u64() const { return (w_[1] | w_[2] | w_[3]) == 0; }

    friend std::strong_ordering operator<=>(const U256& a, const U256& b) {
        for (int i = 3; i >= 0; --i) {
            if (a.w_[i] != b.w_[i]) return a.w_[i] <=> b.w_[i];
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const U256& a, const U256& b) { return a.w_ == b.w_; }

    U256& operator+=(const U256& b);
    U256& operator-=(const U256& b);
    U256& operator*=(const U256& b);
    U256& operator<<=(unsigned n);
    U256& operator>>=(unsigned n);

    friend U256 operator+(U256 a, const U256& b) { return a += b; }
    friend U256 operator-(U256 a, const U256& b) { return a -= b; }
    friend U256 operator*(U256 a, const U256& b) { return a *= b; }
    friend U256 operator<<(U256 a, unsigned n) { return a <<= n; }
    friend U256 operator>>(U256 a, unsigned n) { return a >>= n; }

    // Floor division and remainder. Divisor must be nonzero.
    static void divmod(const U256& num, const U256& den, U256& quot, U256& rem);
    friend U256 operator/(const U256& a, const U256& b) {
        U256 q, r;
        divmod(a, b, q, r);
        return q;
    }
    friend U256 operator%(const U256& a, const U256& b) {
        U256 q, r;
        divmod(a, b, q, r);
        return r;
    }

private:
    std::array<uint64_t, 4> w_;
};

} // namespace fraudsys
