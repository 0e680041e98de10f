#include "fraudsys/sha256.hpp"

#include <cstring>

// Reference kernel: one message at a time through the streaming core.

namespace fraudsys::detail {

void sha256d64_scalar(uint8_t* out, const uint8_t* in, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        Digest32 d = double_sha256({in + i * 64, 64});
        std::memcpy(out + i * 32, d.data(), 32);
    }
}

void sha256_block_scalar(uint8_t* out, const uint8_t* in, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        uint32_t state[8];
        for (int j = 0; j < 8; ++j) state[j] = Sha256::kInitialState[j];
        Sha256::compress(state, in + i * 64);
        for (int j = 0; j < 8; ++j) {
            uint8_t* p = out + i * 32 + j * 4;
            p[0] = static_cast<uint8_t>(state[j] >> 24);
            p[1] = static_cast<uint8_t>(state[j] >> 16);
            p[2] = static_cast<uint8_t>(state[j] >> 8);
            p[3] = static_cast<uint8_t>(state[j]);
        }
    }
}

} // namespace fraudsys::detail
