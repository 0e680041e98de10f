#include "sha256_lanes.hpp"

// 4-lane kernel over 128-bit vectors. Baseline SSE2 on x86-64, NEON on
// aarch64; no ISA-specific flags required.

namespace fraudsys::detail {

typedef uint32_t u32x4 __attribute__((vector_size(16)));
using L4 = lanes::Sha256Lanes<u32x4, 4>;

void sha256d64_scalar(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_scalar(uint8_t* out, const uint8_t* in, size_t n);

void sha256d64_vec4(uint8_t* out, const uint8_t* in, size_t n) {
    while (n >= 4) {
        L4::sha256d64(out, in);
        in += 4 * 64;
        out += 4 * 32;
        n -= 4;
    }
    if (n != 0) sha256d64_scalar(out, in, n);
}

void sha256_block_vec4(uint8_t* out, const uint8_t* in, size_t n) {
    while (n >= 4) {
        L4::sha256_block(out, in);
        in += 4 * 64;
        out += 4 * 32;
        n -= 4;
    }
    if (n != 0) sha256_block_scalar(out, in, n);
}

} // namespace fraudsys::detail
