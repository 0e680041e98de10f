#pragma once

#include <string>
#include <vector>

namespace fraudsys {

// Fraud-score-to-penalty conversion parameters, all times in seconds.
// minh/maxh bound the honest region (r <= thr), minf/maxf the fraudulent
// region. Throws std::invalid_argument when the ordering invariants are
// violated at construction.
struct PenaltyParams {
    double minh_s = 2.0;
    double maxh_s = 300.0;
    double minf_s = 300.0;
    double maxf_s = 86400.0;
    double thr = 0.5;
    double k_growth = 30.0;

    void validate() const;

    static PenaltyParams paper_defaults() { return PenaltyParams{}; }
};

// Piecewise conversion: linear up to thr, then a generalized logistic
// whose value approaches maxf. Continuous at thr exactly when maxh ==
// minf; otherwise the jump equals minf - maxh. Output clamped to
// [minh, maxf] to absorb floating-point drift at r = 1.
double fraud_to_penalty(double r, const PenaltyParams& p);

// Comparison curves: same linear branch, exponential/logarithmic growth
// above thr. Used by the plot command only.
double fraud_to_penalty_exp(double r, const PenaltyParams& p);
double fraud_to_penalty_log(double r, const PenaltyParams& p);

// (r, tau) rows for the comparison plot as CSV text.
std::string penalty_curves_csv(const PenaltyParams& p, int points);

} // namespace fraudsys
