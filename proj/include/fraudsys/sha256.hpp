#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace fraudsys {

using Digest32 = std::array<uint8_t, 32>;

// Incremental SHA-256. The block compression is exposed so the batched
// kernels and the nonce generator can reuse it.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(std::span<const uint8_t> data);
    Digest32 finish();

    static Digest32 hash(std::span<const uint8_t> data);
    static void compress(uint32_t state[8], const uint8_t block[64]);

    static constexpr std::array<uint32_t, 8> kInitialState = {
        0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
        0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

private:
    uint32_t state_[8];
    uint8_t buf_[64];
    size_t buflen_ = 0;
    uint64_t total_ = 0;
};

// SHA-256(SHA-256(data)) — the puzzle hash H^2.
Digest32 double_sha256(std::span<const uint8_t> data);

inline std::span<const uint8_t> as_bytes_span(std::string_view s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

} // namespace fraudsys
