#include "sha256_lanes.hpp"

// 8-lane kernel over 256-bit vectors. This translation unit is compiled
// with -mavx2 and must only be reached after the runtime cpuid check in
// the kernel registry.

namespace fraudsys::detail {

typedef uint32_t u32x8 __attribute__((vector_size(32)));
using L8 = lanes::Sha256Lanes<u32x8, 8>;

void sha256d64_scalar(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_scalar(uint8_t* out, const uint8_t* in, size_t n);

void sha256d64_avx2(uint8_t* out, const uint8_t* in, size_t n) {
    while (n >= 8) {
        L8::sha256d64(out, in);
        in += 8 * 64;
        out += 8 * 32;
        n -= 8;
    }
    if (n != 0) sha256d64_scalar(out, in, n);
}

void sha256_block_avx2(uint8_t* out, const uint8_t* in, size_t n) {
    while (n >= 8) {
        L8::sha256_block(out, in);
        in += 8 * 64;
        out += 8 * 32;
        n -= 8;
    }
    if (n != 0) sha256_block_scalar(out, in, n);
}

} // namespace fraudsys::detail
