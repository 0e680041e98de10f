#pragma once

// W-lane SHA-256 message parallelism over GCC/Clang vector extensions.
// Each lane is an independent message; the round function is the scalar
// code applied elementwise. Included by per-ISA translation units that fix
// the vector width (the AVX2 unit is compiled with -mavx2 and only ever
// called after a cpuid check).

#include <cstddef>
#include <cstdint>

namespace fraudsys::lanes {

constexpr uint32_t kRoundK[64] = {
    0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1,
    0x923f82a4, 0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3,
    0x72be5d74, 0x80deb1fe, 0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786,
    0x0fc19dc6, 0x240ca1cc, 0x2de92c6f, 0x4a7484aa, 0x5cb0a9dc, 0x76f988da,
    0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7, 0xc6e00bf3, 0xd5a79147,
    0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc, 0x53380d13,
    0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
    0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070,
    0x19a4c116, 0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a,
    0x5b9cca4f, 0x682e6ff3, 0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208,
    0x90befffa, 0xa4506ceb, 0xbef9a3f7, 0xc67178f2};

constexpr uint32_t kIv[8] = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                             0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};

template <typename V, size_t W>
struct Sha256Lanes {
    static inline V splat(uint32_t x) {
        V v{};
        for (size_t l = 0; l < W; ++l) v[l] = x;
        return v;
    }
    static inline V rotr(V x, int n) { return (x >> n) | (x << (32 - n)); }

    static void compress(V state[8], const V w_in[16]) {
        V w[64];
        for (int i = 0; i < 16; ++i) w[i] = w_in[i];
        for (int i = 16; i < 64; ++i) {
            V s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            V s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        V a = state[0], b = state[1], c = state[2], d = state[3];
        V e = state[4], f = state[5], g = state[6], h = state[7];
        for (int i = 0; i < 64; ++i) {
            V s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            V ch = (e & f) ^ (~e & g);
            V t1 = h + s1 + ch + splat(kRoundK[i]) + w[i];
            V s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            V maj = (a & b) ^ (a & c) ^ (b & c);
            V t2 = s0 + maj;
            h = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        state[0] += a;
        state[1] += b;
        state[2] += c;
        state[3] += d;
        state[4] += e;
        state[5] += f;
        state[6] += g;
        state[7] += h;
    }

    static inline void load_blocks(V w[16], const uint8_t* in) {
        for (int i = 0; i < 16; ++i) {
            V v{};
            for (size_t l = 0; l < W; ++l) {
                const uint8_t* p = in + l * 64 + i * 4;
                v[l] = (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) |
                       (uint32_t(p[2]) << 8) | p[3];
            }
            w[i] = v;
        }
    }

    static inline void store_digests(uint8_t* out, const V state[8]) {
        for (size_t l = 0; l < W; ++l) {
            for (int i = 0; i < 8; ++i) {
                uint32_t x = state[i][l];
                uint8_t* p = out + l * 32 + i * 4;
                p[0] = static_cast<uint8_t>(x >> 24);
                p[1] = static_cast<uint8_t>(x >> 16);
                p[2] = static_cast<uint8_t>(x >> 8);
                p[3] = static_cast<uint8_t>(x);
            }
        }
    }

    static inline void init_state(V state[8]) {
        for (int i = 0; i < 8; ++i) state[i] = splat(kIv[i]);
    }

    // Double SHA-256 of exactly W 64-byte messages.
    static void sha256d64(uint8_t* out, const uint8_t* in) {
        V state[8];
        init_state(state);
        V w[16];
        load_blocks(w, in);
        compress(state, w);

        // Padding block of a 64-byte message: 0x80, zeros, bitlen 512.
        V pad[16] = {};
        pad[0] = splat(0x80000000u);
        pad[15] = splat(0x200u);
        for (int i = 1; i < 15; ++i) pad[i] = splat(0);
        compress(state, pad);

        // Second hash: the 32-byte digest is already in the state words.
        V w2[16];
        for (int i = 0; i < 8; ++i) w2[i] = state[i];
        w2[8] = splat(0x80000000u);
        for (int i = 9; i < 15; ++i) w2[i] = splat(0);
        w2[15] = splat(0x100u);
        init_state(state);
        compress(state, w2);
        store_digests(out, state);
    }

    // Single compression from the IV over exactly W pre-padded blocks.
    static void sha256_block(uint8_t* out, const uint8_t* in) {
        V state[8];
        init_state(state);
        V w[16];
        load_blocks(w, in);
        compress(state, w);
        store_digests(out, state);
    }
};

} // namespace fraudsys::lanes
