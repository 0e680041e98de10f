#include "fraudsys/puzzle.hpp"

#include <atomic>
#include <cstring>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

namespace fraudsys {

static void check_difficulty(const Difficulty& d) {
    if (d.value.is_zero() || d.value > U256::target_one()) {
        throw std::invalid_argument("difficulty out of range [1, 2^255-1]");
    }
}

Target difficulty_to_target(const Difficulty& d) {
    check_difficulty(d);
    return Target{U256::target_one() / d.value};
}

Difficulty target_to_difficulty(const Target& t) {
    if (t.value.is_zero() || t.value > U256::target_one()) {
        throw std::invalid_argument("target out of range [1, 2^255-1]");
    }
    return Difficulty{U256::target_one() / t.value};
}

double expected_solve_time_s(const Difficulty& d, double hashrate_hps) {
    if (!(hashrate_hps > 0.0)) throw std::invalid_argument("hashrate must be positive");
    return 2.0 * d.value.to_double() / hashrate_hps;
}

static bool digest_below(const uint8_t* digest, const std::array<uint8_t, 32>& target_be) {
    return std::memcmp(digest, target_be.data(), 32) < 0;
}

bool share_meets_target(const Share& share, const Digest32& cookie, const Target& target) {
    uint8_t msg[64];
    std::memcpy(msg, share.nonce.data(), 32);
    std::memcpy(msg + 32, cookie.data(), 32);
    Digest32 d = double_sha256({msg, 64});
    return digest_below(d.data(), target.value.to_be_bytes());
}

ShareCheck verify_shares(std::span<const Share> shares, const Digest32& cookie,
                         const Difficulty& d, size_t q) {
    if (shares.size() != q) return ShareCheck::count_mismatch;
    std::set<std::array<uint8_t, 32>> seen;
    for (const Share& s : shares) {
        if (!seen.insert(s.nonce).second) return ShareCheck::duplicate_share;
    }
    Target t = difficulty_to_target(d);
    for (const Share& s : shares) {
        if (!share_meets_target(s, cookie, t)) return ShareCheck::bad_share;
    }
    return ShareCheck::ok;
}

NonceStream::NonceStream() {
    std::random_device rd;
    for (int i = 0; i < 8; ++i) {
        uint32_t x = rd();
        std::memcpy(seed_.data() + 4 * i, &x, 4);
    }
}

NonceStream::NonceStream(uint64_t seed) {
    uint8_t msg[24] = {'n', 'o', 'n', 'c', 'e', '-', 's', 'e', 'e', 'd',
                       0,   0,   0,   0,   0,   0,   0,   0,   0,   0,
                       0,   0,   0,   0};
    for (int i = 0; i < 8; ++i) msg[16 + i] = static_cast<uint8_t>(seed >> (8 * i));
    seed_ = Sha256::hash({msg, sizeof(msg)});
}

void NonceStream::fill(uint8_t* out32xn, size_t n, const Sha256dKernel& kernel) {
    // Pre-padded single block: seed(32) || counter_be(8) || 0x80 || zeros
    // || bitlen(320).
    std::vector<uint8_t> blocks(n * 64, 0);
    for (size_t i = 0; i < n; ++i) {
        uint8_t* b = blocks.data() + i * 64;
        std::memcpy(b, seed_.data(), 32);
        uint64_t c = counter_++;
        for (int j = 0; j < 8; ++j) b[32 + j] = static_cast<uint8_t>(c >> (56 - 8 * j));
        b[40] = 0x80;
        b[62] = 0x01;
        b[63] = 0x40;
    }
    kernel.sha256_block(out32xn, blocks.data(), n);
}

namespace {

struct SolveShared {
    std::mutex mu;
    std::set<std::array<uint8_t, 32>> nonces;
    std::vector<Share> shares;
    std::atomic<uint64_t> attempts{0};
    std::atomic<bool> done{false};
    size_t q;
};

void solve_worker(const Digest32& cookie, const std::array<uint8_t, 32>& target_be,
                  const Sha256dKernel& kernel, NonceStream stream, SolveShared& shared,
                  std::optional<std::chrono::steady_clock::time_point> deadline) {
    const size_t batch = std::max<size_t>(kernel.lanes, 8);
    std::vector<uint8_t> nonces(batch * 32);
    std::vector<uint8_t> msgs(batch * 64);
    std::vector<uint8_t> digests(batch * 32);

    while (!shared.done.load(std::memory_order_relaxed)) {
        if (deadline && std::chrono::steady_clock::now() >= *deadline) return;
        stream.fill(nonces.data(), batch, kernel);
        for (size_t i = 0; i < batch; ++i) {
            std::memcpy(msgs.data() + i * 64, nonces.data() + i * 32, 32);
            std::memcpy(msgs.data() + i * 64 + 32, cookie.data(), 32);
        }
        kernel.sha256d64(digests.data(), msgs.data(), batch);
        shared.attempts.fetch_add(batch, std::memory_order_relaxed);
        for (size_t i = 0; i < batch; ++i) {
            if (!digest_below(digests.data() + i * 32, target_be)) continue;
            Share s;
            std::memcpy(s.nonce.data(), nonces.data() + i * 32, 32);
            std::lock_guard<std::mutex> lock(shared.mu);
            if (shared.shares.size() >= shared.q) break;
            if (!shared.nonces.insert(s.nonce).second) continue; // duplicate, re-draw
            shared.shares.push_back(s);
            if (shared.shares.size() == shared.q) {
                shared.done.store(true, std::memory_order_relaxed);
                break;
            }
        }
    }
}

} // namespace

std::optional<SolveResult> solve_puzzle(const Digest32& cookie, const Difficulty& d,
                                        size_t q, const SolveOptions& opts) {
    if (q < 1) throw std::invalid_argument("share count must be >= 1");
    Target target = difficulty_to_target(d);
    const std::array<uint8_t, 32> target_be = target.value.to_be_bytes();
    const Sha256dKernel& kernel = opts.kernel ? *opts.kernel : best_sha256d_kernel();

    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (opts.deadline) deadline = std::chrono::steady_clock::now() + *opts.deadline;

    SolveShared shared;
    shared.q = q;

    auto stream_for = [&](unsigned worker) {
        return opts.seed ? NonceStream(*opts.seed + 0x9e3779b97f4a7c15ull * worker)
                         : NonceStream();
    };

    unsigned threads = std::max(1u, opts.threads);
    if (threads == 1) {
        solve_worker(cookie, target_be, kernel, stream_for(0), shared, deadline);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                solve_worker(cookie, target_be, kernel, stream_for(t), shared, deadline);
            });
        }
        for (auto& th : pool) th.join();
    }

    if (shared.shares.size() < q) return std::nullopt; // deadline hit
    return SolveResult{std::move(shared.shares), shared.attempts.load()};
}

} // namespace fraudsys
