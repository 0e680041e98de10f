#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraudsys/puzzle.hpp"
#include "fraudsys/sha256.hpp"

namespace fraudsys {

// 32-byte HMAC-SHA-256 service key.
using ServiceKey = std::array<uint8_t, 32>;

// The fields a puzzle is bound to. `issued_at_ms` travels with the
// submission for solve-time measurement but is not covered by the cookie;
// lying about it can only raise the submitter's own difficulty.
struct ActivityDescriptor {
    std::string user_id;
    std::string device_id;
    std::string subject_id;
    Digest32 activity_digest;
    int64_t issued_at_ms = 0;
};

struct PuzzleCookie {
    Digest32 gamma;

    friend bool operator==(const PuzzleCookie&, const PuzzleCookie&) = default;
};

struct Puzzle {
    PuzzleCookie cookie;
    Difficulty difficulty;
    int64_t timeout_ms = 0;
    uint32_t shares_required = 0;
};

// Canonical cookie input framing (bit-exact wire contract): each field is
// preceded by its 32-bit big-endian byte length, in the order user id,
// device id, subject id, activity digest, timeout, difficulty. Strings are
// UTF-8, the timeout is an unsigned 64-bit big-endian millisecond
// timestamp, the difficulty 32 big-endian bytes. Length prefixes make the
// encoding injective. Throws std::invalid_argument for ids over 2^16
// bytes.
std::vector<uint8_t> encode_cookie_input(const std::string& user_id,
                                         const std::string& device_id,
                                         const std::string& subject_id,
                                         const Digest32& activity_digest,
                                         int64_t timeout_ms, const Difficulty& difficulty);

PuzzleCookie compute_cookie(const ServiceKey& key, const ActivityDescriptor& desc,
                            int64_t timeout_ms, const Difficulty& difficulty);

struct PuzzleBuildInputs {
    double hashrate_hps = 0;     // stored hashrate of the acting device
    double penalty_s = 0;        // output of the fraud-to-penalty map
    int64_t stored_timeout_ms = 0; // the user's (or cluster's) current timeout
    int64_t now_ms = 0;
    uint32_t shares_required = 4;
};

struct PuzzleBuild {
    Puzzle puzzle;
    int64_t new_timeout_ms = 0; // persist atomically with issuance
    int64_t penalty_ms = 0;
};

// Difficulty = floor(eta * tau / 2q) clamped to >= 1; an expired stored
// timeout resets to now before the penalty accumulates.
PuzzleBuild build_puzzle(const ServiceKey& key, const ActivityDescriptor& desc,
                         const PuzzleBuildInputs& in);

enum class VerdictStatus { accepted, bad_cookie, bad_shares, count_mismatch };

const char* to_string(VerdictStatus s);

struct Verdict {
    VerdictStatus status = VerdictStatus::bad_cookie;
    std::optional<int64_t> post_at_ms;           // set iff accepted
    std::optional<double> measured_hashrate_hps; // set iff accepted and solve time > 0
    std::optional<double> updated_hashrate_hps;  // stored value after a ratchet update
};

// Stateless verification: recomputes the cookie from the submitted fields
// and checks the shares; reads no per-puzzle storage. On acceptance the
// activity may post at max(now, timeout) and the measured hashrate is
// 2*q*difficulty / solve time.
Verdict verify_solution(const ServiceKey& key, const ActivityDescriptor& desc,
                        int64_t timeout_ms, const Difficulty& difficulty,
                        const PuzzleCookie& cookie, std::span<const Share> shares,
                        uint32_t shares_required, int64_t now_ms);

// Parses 64 hex characters. Returns nullopt on malformed input.
std::optional<ServiceKey> parse_service_key(std::string_view hex64);

} // namespace fraudsys
