#include <doctest.h>

#include <sstream>
#include <stdexcept>

#include "fraudsys/penalty.hpp"

using namespace fraudsys;

TEST_CASE("paper parameter anchors") {
    PenaltyParams p = PenaltyParams::paper_defaults();
    CHECK(fraud_to_penalty(0.0, p) == 2.0);
    // Continuity at thr from both branches (maxh == minf).
    double left = fraud_to_penalty(0.5, p);
    double right = p.maxf_s / (1.0 + (p.maxf_s - p.minf_s) / p.minf_s);
    CHECK(left == doctest::Approx(300.0).epsilon(1e-12));
    CHECK(right == doctest::Approx(300.0).epsilon(1e-12));
    // tau(1) against an arbitrary-precision evaluation of the closed form.
    CHECK(fraud_to_penalty(1.0, p) == doctest::Approx(86392.415267232750892).epsilon(1e-9));
    // Steepness: one decile above the threshold is an order of magnitude.
    CHECK(fraud_to_penalty(0.6, p) / fraud_to_penalty(0.5, p) >= 10.0);
    CHECK(fraud_to_penalty(0.6, p) == doctest::Approx(5651.1628895).epsilon(1e-6));
}

TEST_CASE("monotone non-decreasing on a dense grid and range bounded") {
    PenaltyParams p = PenaltyParams::paper_defaults();
    double prev = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        double r = static_cast<double>(i) / 10000.0;
        double tau = fraud_to_penalty(r, p);
        CHECK(tau >= prev);
        CHECK(tau >= p.minh_s);
        CHECK(tau <= p.maxf_s);
        prev = tau;
    }
    CHECK(fraud_to_penalty(1.0, p) < p.maxf_s);
}

TEST_CASE("discontinuity gap equals minf - maxh when they differ") {
    PenaltyParams p;
    p.minh_s = 2;
    p.maxh_s = 100;
    p.minf_s = 300;
    p.maxf_s = 86400;
    double below = fraud_to_penalty(0.5, p);
    double above = fraud_to_penalty(0.5 + 1e-12, p);
    CHECK(below == doctest::Approx(100.0));
    CHECK(above - below == doctest::Approx(p.minf_s - p.maxh_s).epsilon(1e-6));
}

TEST_CASE("exponential and logarithmic variants hit their endpoints") {
    PenaltyParams p = PenaltyParams::paper_defaults();
    CHECK(fraud_to_penalty_exp(0.5, p) == doctest::Approx(p.minf_s));
    CHECK(fraud_to_penalty_exp(1.0, p) == doctest::Approx(p.maxf_s));
    // The logarithmic form rises from minf at thr to maxf at r = 1.
    CHECK(fraud_to_penalty_log(0.5 + 1e-12, p) == doctest::Approx(p.minf_s).epsilon(1e-6));
    CHECK(fraud_to_penalty_log(1.0, p) == doctest::Approx(p.maxf_s));
    // Both share the linear branch below thr.
    CHECK(fraud_to_penalty_exp(0.2, p) == fraud_to_penalty(0.2, p));
    CHECK(fraud_to_penalty_log(0.2, p) == fraud_to_penalty(0.2, p));
}

TEST_CASE("invalid parameters and scores are rejected") {
    PenaltyParams p = PenaltyParams::paper_defaults();
    CHECK_THROWS_AS(fraud_to_penalty(-0.1, p), std::invalid_argument);
    CHECK_THROWS_AS(fraud_to_penalty(1.1, p), std::invalid_argument);

    PenaltyParams bad = p;
    bad.maxh_s = 400; // maxh > minf
    CHECK_THROWS_AS(fraud_to_penalty(0.1, bad), std::invalid_argument);
    bad = p;
    bad.thr = 1.0;
    CHECK_THROWS_AS(fraud_to_penalty(0.1, bad), std::invalid_argument);
    bad = p;
    bad.minh_s = 0;
    CHECK_THROWS_AS(fraud_to_penalty(0.1, bad), std::invalid_argument);
}

TEST_CASE("plot csv has the requested grid") {
    PenaltyParams p = PenaltyParams::paper_defaults();
    std::string csv = penalty_curves_csv(p, 11);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "r,tau_logistic_s,tau_exp_s,tau_log_s");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 11);
}
