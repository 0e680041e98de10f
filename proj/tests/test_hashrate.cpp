#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "fraudsys/hashrate.hpp"

using namespace fraudsys;

TEST_CASE("profile lookup prefers exact model, then class, then table median") {
    ProfileTable t = ProfileTable::builtin_defaults();
    CHECK(t.initial_hashrate("Nexus 5", "phone") == doctest::Approx(13260.0));
    CHECK(t.initial_hashrate("AntMiner", "asic") == doctest::Approx(4.72e12));
    CHECK(t.initial_hashrate("Nexus 4", "whatever") == doctest::Approx(6530.0));

    // Unknown model in a known class: class median (phones: 6.53K, 10.1K,
    // 13.26K).
    CHECK(t.initial_hashrate("Pixel 9", "phone") == doctest::Approx(10100.0));

    // Unknown model and class: table median of six rows.
    CHECK(t.initial_hashrate("??", "??") == doctest::Approx((13260.0 + 1.7e6) / 2));
}

TEST_CASE("profile csv round trip") {
    ProfileTable t = ProfileTable::builtin_defaults();
    std::string csv = t.to_csv();
    std::istringstream in(csv);
    ProfileTable back = ProfileTable::load_csv(in);
    REQUIRE(back.rows().size() == 6);
    CHECK(back.initial_hashrate("Server", "server") == doctest::Approx(80e6));

    std::istringstream bad("model_name,cpu_class,hashrate_hps\nonly-two,fields\n");
    CHECK_THROWS(ProfileTable::load_csv(bad));
}

TEST_CASE("hashrate correction ratchets up only") {
    DeviceRecord rec{"d1", 10000.0, 0};

    SUBCASE("fast solve raises the estimate") {
        // delta = 18e6, q = 1, solved in 360 s -> eta' = 1e5.
        HashrateUpdate u = correct_hashrate(rec, Difficulty{U256(18'000'000)}, 1, 360.0);
        CHECK(u.measured_hps == doctest::Approx(100000.0));
        CHECK(u.applied);
        CHECK(u.hashrate_hps == doctest::Approx(100000.0));
    }
    SUBCASE("slow solve never lowers the estimate") {
        HashrateUpdate u = correct_hashrate(rec, Difficulty{U256(1000)}, 1, 3600.0);
        CHECK(u.measured_hps < rec.hashrate_hps);
        CHECK_FALSE(u.applied);
        CHECK(u.hashrate_hps == doctest::Approx(10000.0));
    }
    SUBCASE("measurement below eta_min is ignored") {
        DeviceRecord weak{"d2", 2000.0, 0};
        // eta' = 2*500/2 = 500 < 1000.
        HashrateUpdate u = correct_hashrate(weak, Difficulty{U256(500)}, 1, 2.0);
        CHECK(u.measured_hps == doctest::Approx(500.0));
        CHECK_FALSE(u.applied);
    }
    SUBCASE("measured equal to stored is a fixed point") {
        // eta' = 2*4*5000/4 = 10000 == stored.
        HashrateUpdate u = correct_hashrate(rec, Difficulty{U256(5000)}, 4, 4.0);
        CHECK(u.measured_hps == doctest::Approx(10000.0));
        CHECK_FALSE(u.applied);
        CHECK(u.hashrate_hps == doctest::Approx(10000.0));
    }
    SUBCASE("non-positive solve time is a clock anomaly") {
        HashrateUpdate u = correct_hashrate(rec, Difficulty{U256(1000)}, 1, 0.0);
        CHECK_FALSE(u.applied);
        CHECK(u.measured_hps == 0);
        CHECK(u.hashrate_hps == doctest::Approx(10000.0));
    }
    SUBCASE("stored value is non-decreasing under any sequence") {
        DeviceRecord r{"d3", 5000.0, 0};
        std::mt19937_64 rng(9);
        for (int i = 0; i < 200; ++i) {
            double solve = 0.5 + static_cast<double>(rng() % 1000);
            HashrateUpdate u =
                correct_hashrate(r, Difficulty{U256(1 + rng() % 100000)}, 2, solve);
            CHECK(u.hashrate_hps >= r.hashrate_hps);
            r.hashrate_hps = u.hashrate_hps;
        }
    }
}

TEST_CASE("bench measures a plausible double-hash rate") {
    BenchResult r = bench_double_hash(0.2, best_sha256d_kernel());
    CHECK(r.hashes > 0);
    CHECK(r.elapsed_s > 0.15);
    // Any machine running the suite manages well over 10 KH/s.
    CHECK(r.hashes_per_s > 1e4);
    CHECK_THROWS_AS(bench_double_hash(0.0, best_sha256d_kernel()), std::invalid_argument);
}
