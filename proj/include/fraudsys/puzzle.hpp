#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "fraudsys/sha256.hpp"
#include "fraudsys/sha256_kernels.hpp"
#include "fraudsys/u256.hpp"

namespace fraudsys {

// Inverse measures of puzzle hardness: difficulty = target_1 / target with
// target_1 = 2^255 - 1. Digests compare as big-endian 256-bit integers.
struct Target {
    U256 value;
};

struct Difficulty {
    U256 value;

    Difficulty() : value(1) {}
    explicit Difficulty(U256 v) : value(v) {}
    explicit Difficulty(uint64_t v) : value(v) {}
};

// One puzzle solution: a nonce whose double hash concatenated with the
// cookie falls below the target.
struct Share {
    std::array<uint8_t, 32> nonce;

    friend bool operator==(const Share&, const Share&) = default;
};

// Throws std::invalid_argument unless 1 <= d <= 2^255 - 1.
Target difficulty_to_target(const Difficulty& d);
Difficulty target_to_difficulty(const Target& t);

// Expected wall time for one puzzle at difficulty d on a device hashing at
// hashrate_hps: 2*d/eta seconds.
double expected_solve_time_s(const Difficulty& d, double hashrate_hps);

// True iff H^2(nonce || cookie) < target.
bool share_meets_target(const Share& share, const Digest32& cookie, const Target& target);

enum class ShareCheck {
    ok,
    count_mismatch,
    duplicate_share,
    bad_share,
};

// Accepts exactly q pairwise-distinct shares that all meet the target.
ShareCheck verify_shares(std::span<const Share> shares, const Digest32& cookie,
                         const Difficulty& d, size_t q);

struct SolveOptions {
    // Deterministic nonce stream when set; OS entropy otherwise.
    std::optional<uint64_t> seed;
    unsigned threads = 1;
    // Give up after this much wall time (the solver itself never quits).
    std::optional<std::chrono::steady_clock::duration> deadline;
    // Kernel override; best available when null.
    const Sha256dKernel* kernel = nullptr;
};

struct SolveResult {
    std::vector<Share> shares;
    uint64_t attempts = 0; // double hashes computed across all workers
};

// Brute-force search for q distinct shares. Returns nullopt only when the
// deadline expires first.
std::optional<SolveResult> solve_puzzle(const Digest32& cookie, const Difficulty& d,
                                        size_t q, const SolveOptions& opts = {});

// Counter-mode nonce generator: nonce_i = SHA-256(seed || counter). Each
// draw is unpredictable without the seed and collisions are negligible.
class NonceStream {
public:
    // Seeded from OS entropy.
    NonceStream();
    // Deterministic stream (tests, simulation).
    explicit NonceStream(uint64_t seed);

    void fill(uint8_t* out32xn, size_t n, const Sha256dKernel& kernel);

private:
    std::array<uint8_t, 32> seed_{};
    uint64_t counter_ = 0;
};

} // namespace fraudsys
