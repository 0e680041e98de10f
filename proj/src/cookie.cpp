#include "fraudsys/cookie.hpp"

#include <cmath>
#include <stdexcept>

#include "fraudsys/hex.hpp"
#include "fraudsys/hmac_sha256.hpp"

namespace fraudsys {

static void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

static void put_field(std::vector<uint8_t>& out, std::span<const uint8_t> f) {
    put_u32_be(out, static_cast<uint32_t>(f.size()));
    out.insert(out.end(), f.begin(), f.end());
}

std::vector<uint8_t> encode_cookie_input(const std::string& user_id,
                                         const std::string& device_id,
                                         const std::string& subject_id,
                                         const Digest32& activity_digest,
                                         int64_t timeout_ms, const Difficulty& difficulty) {
    for (const std::string* id : {&user_id, &device_id, &subject_id}) {
        if (id->size() > (1u << 16)) {
            throw std::invalid_argument("cookie field id longer than 2^16 bytes");
        }
    }
    std::vector<uint8_t> out;
    out.reserve(24 + user_id.size() + device_id.size() + subject_id.size() + 72);
    put_field(out, as_bytes_span(user_id));
    put_field(out, as_bytes_span(device_id));
    put_field(out, as_bytes_span(subject_id));
    put_field(out, activity_digest);

    uint8_t ts[8];
    uint64_t t = static_cast<uint64_t>(timeout_ms);
    for (int i = 0; i < 8; ++i) ts[i] = static_cast<uint8_t>(t >> (56 - 8 * i));
    put_field(out, {ts, 8});

    put_field(out, difficulty.value.to_be_bytes());
    return out;
}

PuzzleCookie compute_cookie(const ServiceKey& key, const ActivityDescriptor& desc,
                            int64_t timeout_ms, const Difficulty& difficulty) {
    std::vector<uint8_t> input = encode_cookie_input(
        desc.user_id, desc.device_id, desc.subject_id, desc.activity_digest, timeout_ms,
        difficulty);
    return PuzzleCookie{hmac_sha256(key, input)};
}

PuzzleBuild build_puzzle(const ServiceKey& key, const ActivityDescriptor& desc,
                         const PuzzleBuildInputs& in) {
    if (in.shares_required < 1) throw std::invalid_argument("shares_required must be >= 1");
    if (!(in.hashrate_hps > 0)) throw std::invalid_argument("hashrate must be positive");
    if (!(in.penalty_s > 0)) throw std::invalid_argument("penalty must be positive");

    int64_t penalty_ms = std::max<int64_t>(1, std::llround(in.penalty_s * 1000.0));

    // An expired timeout resets to now; an idle user banks no credit.
    int64_t base = std::max(in.stored_timeout_ms, in.now_ms);
    int64_t new_timeout = base + penalty_ms;

    double delta = std::floor(in.hashrate_hps * in.penalty_s / (2.0 * in.shares_required));
    // Caps at 2^63-1 hashes, far past any profiled device-day product.
    constexpr double kMaxDelta = 9.2e18;
    U256 difficulty_value = delta < 1.0 ? U256(1)
                            : delta > kMaxDelta
                                ? U256(static_cast<uint64_t>(kMaxDelta))
                                : U256(static_cast<uint64_t>(delta));
    Difficulty difficulty{difficulty_value};

    PuzzleBuild out;
    out.puzzle.cookie = compute_cookie(key, desc, new_timeout, difficulty);
    out.puzzle.difficulty = difficulty;
    out.puzzle.timeout_ms = new_timeout;
    out.puzzle.shares_required = in.shares_required;
    out.new_timeout_ms = new_timeout;
    out.penalty_ms = penalty_ms;
    return out;
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::accepted: return "accepted";
        case VerdictStatus::bad_cookie: return "bad_cookie";
        case VerdictStatus::bad_shares: return "bad_shares";
        case VerdictStatus::count_mismatch: return "count_mismatch";
    }
    return "unknown";
}

Verdict verify_solution(const ServiceKey& key, const ActivityDescriptor& desc,
                        int64_t timeout_ms, const Difficulty& difficulty,
                        const PuzzleCookie& cookie, std::span<const Share> shares,
                        uint32_t shares_required, int64_t now_ms) {
    Verdict v;

    if (difficulty.value.is_zero() || difficulty.value > U256::target_one()) {
        v.status = VerdictStatus::bad_cookie; // unissuable field values
        return v;
    }
    PuzzleCookie expected = compute_cookie(key, desc, timeout_ms, difficulty);
    if (!digest_equal(expected.gamma, cookie.gamma)) {
        v.status = VerdictStatus::bad_cookie;
        return v;
    }

    switch (verify_shares(shares, cookie.gamma, difficulty, shares_required)) {
        case ShareCheck::count_mismatch:
            v.status = VerdictStatus::count_mismatch;
            return v;
        case ShareCheck::duplicate_share:
        case ShareCheck::bad_share:
            v.status = VerdictStatus::bad_shares;
            return v;
        case ShareCheck::ok:
            break;
    }

    v.status = VerdictStatus::accepted;
    v.post_at_ms = std::max(now_ms, timeout_ms);
    int64_t solve_ms = now_ms - desc.issued_at_ms;
    if (solve_ms > 0) {
        double tau_s = static_cast<double>(solve_ms) / 1000.0;
        v.measured_hashrate_hps =
            2.0 * shares_required * difficulty.value.to_double() / tau_s;
    }
    return v;
}

std::optional<ServiceKey> parse_service_key(std::string_view hex64) {
    if (hex64.size() != 64) return std::nullopt;
    auto bytes = from_hex(hex64);
    if (!bytes) return std::nullopt;
    ServiceKey key;
    std::copy(bytes->begin(), bytes->end(), key.begin());
    return key;
}

} // namespace fraudsys
