#include "fraudsys/u256.hpp"

#include <stdexcept>

namespace fraudsys {

U256 U256::from_be_bytes(std::span<const uint8_t, 32> bytes) {
    U256 v;
    for (int limb = 0; limb < 4; ++limb) {
        uint64_t x = 0;
        for (int i = 0; i < 8; ++i) {
            x = (x << 8) | bytes[(3 - limb) * 8 + i];
        }
        v.w_[limb] = x;
    }
    return v;
}

std::array<uint8_t, 32> U256::to_be_bytes() const {
    std::array<uint8_t, 32> out{};
    for (int limb = 0; limb < 4; ++limb) {
        uint64_t x = w_[limb];
        for (int i = 7; i >= 0; --i) {
            out[(3 - limb) * 8 + i] = static_cast<uint8_t>(x);
            x >>= 8;
        }
    }
    return out;
}

std::optional<U256> U256::from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    if (hex.empty() || hex.size() > 64) return std::nullopt;
    U256 v;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else return std::nullopt;
        v <<= 4;
        v.w_[0] |= static_cast<uint64_t>(d);
    }
    return v;
}

std::string U256::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    bool started = false;
    for (int limb = 3; limb >= 0; --limb) {
        for (int shift = 60; shift >= 0; shift -= 4) {
            int d = static_cast<int>((w_[limb] >> shift) & 0xf);
            if (d != 0) started = true;
            if (started) out.push_back(digits[d]);
        }
    }
    if (!started) out = "0";
    return out;
}

std::optional<U256> U256::from_dec(std::string_view dec) {
    if (dec.empty() || dec.size() > 78) return std::nullopt;
    U256 v;
    for (char c : dec) {
        if (c < '0' || c > '9') return std::nullopt;
        U256 x10 = (v << 3) + (v << 1);
        if (x10 < v) return std::nullopt; // overflow
        v = x10 + U256(static_cast<uint64_t>(c - '0'));
        if (v < x10) return std::nullopt;
    }
    return v;
}

std::string U256::to_dec() const {
    if (is_zero()) return "0";
    std::string out;
    U256 v = *this;
    const U256 ten(10);
    while (!v.is_zero()) {
        U256 q, r;
        divmod(v, ten, q, r);
        out.push_back(static_cast<char>('0' + r.w_[0]));
        v = q;
    }
    return {out.rbegin(), out.rend()};
}

int U256::bits() const {
    for (int limb = 3; limb >= 0; --limb) {
        if (w_[limb] != 0) {
            return limb * 64 + (64 - __builtin_clzll(w_[limb]));
        }
    }
    return 0;
}

double U256::to_double() const {
    double r = 0.0;
    for (int limb = 3; limb >= 0; --limb) {
        r = r * 18446744073709551616.0 + static_cast<double>(w_[limb]);
    }
    return r;
}

U256& U256::operator+=(const U256& b) {
    unsigned __int128 carry = 0;
    for (int i = 0; i < 4; ++i) {
        carry += static_cast<unsigned __int128>(w_[i]) + b.w_[i];
        w_[i] = static_cast<uint64_t>(carry);
        carry >>= 64;
    }
    return *this;
}

U256& U256::operator-=(const U256& b) {
    unsigned __int128 borrow = 0;
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 d = static_cast<unsigned __int128>(w_[i]) - b.w_[i] - borrow;
        w_[i] = static_cast<uint64_t>(d);
        borrow = (d >> 64) & 1;
    }
    return *this;
}

U256& U256::operator*=(const U256& b) {
    std::array<uint64_t, 4> r{};
    for (int i = 0; i < 4; ++i) {
        unsigned __int128 carry = 0;
        for (int j = 0; i + j < 4; ++j) {
            carry += static_cast<unsigned __int128>(w_[i]) * b.w_[j] + r[i + j];
            r[i + j] = static_cast<uint64_t>(carry);
            carry >>= 64;
        }
    }
    w_ = r;
    return *this;
}

U256& U256::operator<<=(unsigned n) {
    if (n >= 256) {
        w_ = {0, 0, 0, 0};
        return *this;
    }
    unsigned limbs = n / 64, bits = n % 64;
    for (int i = 3; i >= 0; --i) {
        uint64_t v = 0;
        int src = i - static_cast<int>(limbs);
        if (src >= 0) {
            v = w_[src] << bits;
            if (bits != 0 && src >= 1) v |= w_[src - 1] >> (64 - bits);
        }
        w_[i] = v;
    }
    return *this;
}

U256& U256::operator>>=(unsigned n) {
    if (n >= 256) {
        w_ = {0, 0, 0, 0};
        return *this;
    }
    unsigned limbs = n / 64, bits = n % 64;
    for (int i = 0; i < 4; ++i) {
        uint64_t v = 0;
        int src = i + static_cast<int>(limbs);
        if (src <= 3) {
            v = w_[src] >> bits;
            if (bits != 0 && src <= 2) v |= w_[src + 1] << (64 - bits);
        }
        w_[i] = v;
    }
    return *this;
}

void U256::divmod(const U256& num, const U256& den, U256& quot, U256& rem) {
    if (den.is_zero()) throw std::domain_error("U256: division by zero");
    quot = U256();
    rem = num;
    int shift = rem.bits() - den.bits();
    if (shift < 0) return;
    U256 d = den << static_cast<unsigned>(shift);
    while (shift >= 0) {
        if (rem >= d) {
            rem -= d;
            quot.w_[shift / 64] |= 1ull << (shift % 64);
        }
        d >>= 1;
        --shift;
    }
}

} // namespace fraudsys
