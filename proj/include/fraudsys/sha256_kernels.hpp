#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace fraudsys {

// A batched double-SHA-256 kernel. `lanes` is the number of messages the
// implementation hashes per pass; all entry points accept any count and
// loop internally. The scalar kernel is the reference; every other kernel
// must produce bit-identical output (equivalence-tested).
struct Sha256dKernel {
    const char* name;
    size_t lanes;
    // Double SHA-256 of n independent 64-byte messages, 32 bytes out each.
    void (*sha256d64)(uint8_t* out, const uint8_t* in, size_t n);
    // Single compression from the standard IV over n pre-padded 64-byte
    // blocks (used by the counter-mode nonce generator).
    void (*sha256_block)(uint8_t* out, const uint8_t* in, size_t n);
};

// Kernels usable on this CPU, fastest first.
const std::vector<const Sha256dKernel*>& available_sha256d_kernels();

// Fastest available kernel. FRAUDSYS_SHA256_KERNEL=<name> overrides.
const Sha256dKernel& best_sha256d_kernel();

const Sha256dKernel* find_sha256d_kernel(std::string_view name);

} // namespace fraudsys
