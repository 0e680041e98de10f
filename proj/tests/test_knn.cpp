#include <doctest.h>

#include <random>
#include <sstream>
#include <stdexcept>

#include "fraudsys/knn.hpp"

using namespace fraudsys;

namespace {

FeatureVector fv(std::array<double, 13> a) { return FeatureVector::from_array(a); }

FeatureVector fv2(double x, double y) {
    std::array<double, 13> a{};
    a[0] = x;
    a[1] = y;
    return FeatureVector::from_array(a);
}

std::vector<LabeledExample> blobs(std::mt19937_64& rng, size_t per_class, double sep) {
    std::vector<LabeledExample> out;
    std::normal_distribution<> noise(0, 0.05);
    for (size_t i = 0; i < per_class; ++i) {
        out.push_back({fv2(noise(rng), noise(rng)), false, ""});
        out.push_back({fv2(sep + noise(rng), sep + noise(rng)), true, "w"});
    }
    return out;
}

} // namespace

TEST_CASE("training preconditions") {
    std::mt19937_64 rng(1);
    auto data = blobs(rng, 10, 1.0);
    CHECK(KnnModel::train(data, 5).size() == 20);
    CHECK_THROWS_AS(KnnModel::train(data, 21), std::invalid_argument);
    CHECK_THROWS_AS(KnnModel::train(data, 0), std::invalid_argument);

    std::vector<LabeledExample> single;
    for (int i = 0; i < 5; ++i) single.push_back({fv2(i, i), true, "w"});
    CHECK_THROWS_AS(KnnModel::train(single, 1), std::invalid_argument);
}

TEST_CASE("score is the fraud fraction of the neighbourhood") {
    // Points on a line: distances from the query at 0 are unambiguous.
    std::vector<LabeledExample> data;
    data.push_back({fv2(0.1, 0), true, "w"});
    data.push_back({fv2(0.2, 0), true, "w"});
    data.push_back({fv2(0.3, 0), true, "w"});
    data.push_back({fv2(0.4, 0), true, "w"});
    data.push_back({fv2(0.5, 0), false, ""});
    data.push_back({fv2(0.9, 0), false, ""});
    data.push_back({fv2(1.0, 0), false, ""});

    KnnModel m5 = KnnModel::train(data, 5);
    CHECK(m5.score(fv2(0, 0)) == doctest::Approx(0.8)); // 4 fraud + 1 honest

    KnnModel m1 = KnnModel::train(data, 1);
    CHECK(m1.score(fv2(0.1, 0)) == doctest::Approx(1.0)); // coincides with a fraud point
    CHECK(m1.score(fv2(1.0, 0)) == doctest::Approx(0.0));

    KnnModel m3 = KnnModel::train(data, 3);
    CHECK(m3.score(fv2(1.0, 0)) == doctest::Approx(0.0)); // all-honest neighbourhood
}

TEST_CASE("scores take exactly k+1 possible values") {
    std::mt19937_64 rng(2);
    auto data = blobs(rng, 30, 0.4);
    const size_t k = 7;
    KnnModel m = KnnModel::train(data, k);
    std::uniform_real_distribution<> u(-0.2, 0.7);
    for (int i = 0; i < 200; ++i) {
        double s = m.score(fv2(u(rng), u(rng)));
        double scaled = s * static_cast<double>(k);
        CHECK(scaled == doctest::Approx(std::round(scaled)));
        CHECK(s >= 0);
        CHECK(s <= 1);
    }
}

TEST_CASE("constant feature dimensions do not poison distances") {
    std::vector<LabeledExample> data;
    for (int i = 0; i < 6; ++i) {
        std::array<double, 13> a{};
        a.fill(42.0); // constant in every dimension except the first
        a[0] = i;
        data.push_back({fv(a), i >= 3, i >= 3 ? "w" : ""});
    }
    KnnModel m = KnnModel::train(data, 1);
    std::array<double, 13> q{};
    q.fill(42.0);
    q[0] = 5.2;
    double s = m.score(fv(q));
    CHECK(s == doctest::Approx(1.0));
    CHECK(std::isfinite(s));
}

TEST_CASE("training order does not change tie-free scores") {
    std::mt19937_64 rng(3);
    auto data = blobs(rng, 25, 0.6);
    KnnModel a = KnnModel::train(data, 5);
    auto shuffled = data;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    KnnModel b = KnnModel::train(shuffled, 5);
    std::uniform_real_distribution<> u(-0.1, 0.8);
    for (int i = 0; i < 100; ++i) {
        FeatureVector q = fv2(u(rng), u(rng));
        CHECK(a.score(q) == doctest::Approx(b.score(q)));
    }
}

TEST_CASE("positive per-dimension scaling leaves scores unchanged") {
    std::mt19937_64 rng(4);
    auto data = blobs(rng, 20, 0.7);
    KnnModel base = KnnModel::train(data, 5);

    const double cx = 1000.0, cy = 0.003;
    auto scaled = data;
    for (auto& e : scaled) {
        auto a = e.features.as_array();
        a[0] *= cx;
        a[1] *= cy;
        e.features = FeatureVector::from_array(a);
    }
    KnnModel other = KnnModel::train(scaled, 5);

    std::uniform_real_distribution<> u(-0.1, 0.8);
    for (int i = 0; i < 100; ++i) {
        double x = u(rng), y = u(rng);
        CHECK(base.score(fv2(x, y)) == doctest::Approx(other.score(fv2(x * cx, y * cy))));
    }
}

TEST_CASE("cross validation separates linear blobs") {
    std::mt19937_64 rng(5);
    auto data = blobs(rng, 100, 1.0);
    CvMetrics m = cross_validate(data, 10, 5, 7);
    CHECK(m.accuracy >= 0.99);
    CHECK(m.fpr <= 0.01);
}

TEST_CASE("cross validation on shuffled labels sits at chance level") {
    std::mt19937_64 rng(6);
    double total_acc = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<LabeledExample> data;
        std::uniform_real_distribution<> u(0, 1);
        for (int i = 0; i < 300; ++i) {
            data.push_back({fv2(u(rng), u(rng)), i % 2 == 0, ""});
        }
        std::shuffle(data.begin(), data.end(), rng);
        total_acc += cross_validate(data, 10, 5, seed).accuracy;
    }
    double mean = total_acc / 10.0;
    CHECK(mean > 0.45);
    CHECK(mean < 0.55);
}

TEST_CASE("cross validation rejects impossible stratification") {
    std::vector<LabeledExample> data;
    data.push_back({fv2(0, 0), true, "w"});
    for (int i = 0; i < 20; ++i) data.push_back({fv2(1 + i, 0), false, ""});
    // One fraud example: its fold's training partition always lacks fraud.
    CHECK_THROWS_AS(cross_validate(data, 5, 1, 1), std::runtime_error);
    CHECK_THROWS_AS(cross_validate(data, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("model serialization round trip") {
    std::mt19937_64 rng(7);
    auto data = blobs(rng, 15, 0.5);
    KnnModel m = KnnModel::train(data, 3);

    std::stringstream buf;
    m.save(buf);
    std::string blob = buf.str();
    CHECK(blob.substr(0, 6) == "FSKNN1");

    std::stringstream in(blob);
    KnnModel loaded = KnnModel::load(in);
    CHECK(loaded.k() == m.k());
    CHECK(loaded.size() == m.size());
    std::uniform_real_distribution<> u(-0.1, 0.7);
    for (int i = 0; i < 50; ++i) {
        FeatureVector q = fv2(u(rng), u(rng));
        CHECK(loaded.score(q) == doctest::Approx(m.score(q)));
    }

    std::stringstream bad("NOTAMODEL");
    CHECK_THROWS_AS(KnnModel::load(bad), std::runtime_error);
}
