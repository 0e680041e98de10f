#include "fraudsys/sha256_kernels.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <cpuid.h>
#endif

namespace fraudsys {

namespace detail {
void sha256d64_scalar(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_scalar(uint8_t* out, const uint8_t* in, size_t n);
void sha256d64_vec4(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_vec4(uint8_t* out, const uint8_t* in, size_t n);
#if defined(__x86_64__)
void sha256d64_avx2(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_avx2(uint8_t* out, const uint8_t* in, size_t n);
void sha256d64_shani(uint8_t* out, const uint8_t* in, size_t n);
void sha256_block_shani(uint8_t* out, const uint8_t* in, size_t n);
#endif
} // namespace detail

static const Sha256dKernel kScalar{"scalar", 1, detail::sha256d64_scalar,
                                   detail::sha256_block_scalar};
static const Sha256dKernel kVec4{"vec4", 4, detail::sha256d64_vec4,
                                 detail::sha256_block_vec4};
#if defined(__x86_64__)
static const Sha256dKernel kAvx2{"avx2", 8, detail::sha256d64_avx2,
                                 detail::sha256_block_avx2};
static const Sha256dKernel kShani{"shani", 1, detail::sha256d64_shani,
                                  detail::sha256_block_shani};

static bool cpu_has(unsigned leaf, unsigned reg_bit_ebx) {
    unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
    if (!__get_cpuid_count(leaf, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx >> reg_bit_ebx) & 1u;
}
#endif

const std::vector<const Sha256dKernel*>& available_sha256d_kernels() {
    static const std::vector<const Sha256dKernel*> kernels = [] {
        std::vector<const Sha256dKernel*> v;
#if defined(__x86_64__)
        if (cpu_has(7, 29)) v.push_back(&kShani); // SHA extensions
        if (cpu_has(7, 5)) v.push_back(&kAvx2);
#endif
        v.push_back(&kVec4);
        v.push_back(&kScalar);
        return v;
    }();
    return kernels;
}

const Sha256dKernel* find_sha256d_kernel(std::string_view name) {
    for (const auto* k : available_sha256d_kernels()) {
        if (name == k->name) return k;
    }
    return nullptr;
}

const Sha256dKernel& best_sha256d_kernel() {
    static const Sha256dKernel* best = [] {
        if (const char* env = std::getenv("FRAUDSYS_SHA256_KERNEL")) {
            if (const Sha256dKernel* k = find_sha256d_kernel(env)) return k;
        }
        return available_sha256d_kernels().front();
    }();
    return *best;
}

} // namespace fraudsys
