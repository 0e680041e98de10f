#pragma once

#include "fraudsys/sha256.hpp"

namespace fraudsys {

// RFC 2104 HMAC over SHA-256. Keys longer than the 64-byte block are
// hashed first.
Digest32 hmac_sha256(std::span<const uint8_t> key, std::span<const uint8_t> message);

// Constant-time digest comparison for tag checks.
bool digest_equal(const Digest32& a, const Digest32& b);

} // namespace fraudsys
