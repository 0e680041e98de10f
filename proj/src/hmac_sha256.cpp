#include "fraudsys/hmac_sha256.hpp"

#include <cstring>

namespace fraudsys {

Digest32 hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> message) {
    uint8_t k[64] = {};
    if (key.size() > 64) {
        Digest32 kh = Sha256::hash(key);
        std::memcpy(k, kh.data(), 32);
    } else {
        std::memcpy(k, key.data(), key.size());
    }

    uint8_t ipad[64], opad[64];
    for (int i = 0; i < 64; ++i) {
        ipad[i] = k[i] ^ 0x36;
        opad[i] = k[i] ^ 0x5c;
    }

    Sha256 inner;
    inner.update({ipad, 64});
    inner.update(message);
    Digest32 ih = inner.finish();

    Sha256 outer;
    outer.update({opad, 64});
    outer.update(ih);
    return outer.finish();
}

bool digest_equal(const Digest32& a, const Digest32& b) {
    uint8_t acc = 0;
    for (int i = 0; i < 32; ++i) acc |= a[i] ^ b[i];
    return acc == 0;
}

} // namespace fraudsys
