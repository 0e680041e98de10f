#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>

#include "fraudsys/hex.hpp"
#include "fraudsys/hmac_sha256.hpp"
#include "fraudsys/sha256.hpp"
#include "fraudsys/sha256_kernels.hpp"

using namespace fraudsys;

TEST_CASE("sha256 standard vectors") {
    CHECK(to_hex(Sha256::hash(as_bytes_span(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(Sha256::hash(as_bytes_span("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    // One million 'a', fed in uneven chunks to exercise buffering.
    Sha256 h;
    std::vector<uint8_t> chunk(997, 'a');
    size_t left = 1000000;
    while (left > 0) {
        size_t n = std::min(left, chunk.size());
        h.update({chunk.data(), n});
        left -= n;
    }
    CHECK(to_hex(h.finish()) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("double sha256 matches the known test vector") {
    CHECK(to_hex(double_sha256(as_bytes_span("hello"))) ==
          "9595c9df90075148eb06860365df33584b75bff782a510c6cd4883a419833d50");
    // Determinism.
    CHECK(double_sha256(as_bytes_span("hello")) == double_sha256(as_bytes_span("hello")));
}

TEST_CASE("flipping any message bit changes the double hash") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<uint8_t> msg(1 + rng() % 80);
        for (auto& b : msg) b = static_cast<uint8_t>(rng());
        Digest32 base = double_sha256(msg);
        size_t bit = rng() % (msg.size() * 8);
        msg[bit / 8] ^= static_cast<uint8_t>(1u << (bit % 8));
        CHECK(double_sha256(msg) != base);
    }
}

TEST_CASE("hmac-sha256 rfc 4231 vectors") {
    std::vector<uint8_t> key(20, 0x0b);
    CHECK(to_hex(hmac_sha256(key, as_bytes_span("Hi There"))) ==
          "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
    CHECK(to_hex(hmac_sha256(as_bytes_span("Jefe"),
                             as_bytes_span("what do ya want for nothing?"))) ==
          "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
    std::vector<uint8_t> key3(20, 0xaa), data3(50, 0xdd);
    CHECK(to_hex(hmac_sha256(key3, data3)) ==
          "773ea91e36800e46854db8ebd09181a72959098b3ef8c122d9635514ced565fe");
}

TEST_CASE("digest_equal") {
    Digest32 a = Sha256::hash(as_bytes_span("x"));
    Digest32 b = a;
    CHECK(digest_equal(a, b));
    b[31] ^= 1;
    CHECK_FALSE(digest_equal(a, b));
}

TEST_CASE("batched kernels are equivalent to the scalar reference") {
    const auto& kernels = available_sha256d_kernels();
    REQUIRE(!kernels.empty());
    const Sha256dKernel* scalar = find_sha256d_kernel("scalar");
    REQUIRE(scalar != nullptr);

    std::mt19937_64 rng(7);
    for (size_t n : {1ul, 3ul, 8ul, 17ul, 64ul}) {
        std::vector<uint8_t> msgs(n * 64);
        for (auto& b : msgs) b = static_cast<uint8_t>(rng());

        std::vector<uint8_t> ref_d(n * 32), ref_b(n * 32);
        scalar->sha256d64(ref_d.data(), msgs.data(), n);
        scalar->sha256_block(ref_b.data(), msgs.data(), n);

        // The reference itself must agree with the streaming hasher.
        for (size_t i = 0; i < n; ++i) {
            Digest32 expect = double_sha256({msgs.data() + i * 64, 64});
            CHECK(std::memcmp(ref_d.data() + i * 32, expect.data(), 32) == 0);
        }

        for (const Sha256dKernel* k : kernels) {
            INFO("kernel ", k->name, " n=", n);
            std::vector<uint8_t> out_d(n * 32, 0xee), out_b(n * 32, 0xee);
            k->sha256d64(out_d.data(), msgs.data(), n);
            k->sha256_block(out_b.data(), msgs.data(), n);
            CHECK(out_d == ref_d);
            CHECK(out_b == ref_b);
        }
    }
}

TEST_CASE("kernel registry dispatch") {
    const auto& kernels = available_sha256d_kernels();
    // Scalar and the portable 4-lane kernel exist everywhere.
    CHECK(find_sha256d_kernel("scalar") != nullptr);
    CHECK(find_sha256d_kernel("vec4") != nullptr);
    CHECK(find_sha256d_kernel("nope") == nullptr);
    // best is the head of the availability list unless overridden.
    if (!std::getenv("FRAUDSYS_SHA256_KERNEL")) {
        CHECK(&best_sha256d_kernel() == kernels.front());
    }
}
