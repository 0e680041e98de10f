#include "fraudsys/penalty.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fraudsys {

void PenaltyParams::validate() const {
    if (!(0 < minh_s && minh_s <= maxh_s && maxh_s <= minf_s && minf_s < maxf_s)) {
        throw std::invalid_argument("penalty params must satisfy 0 < minh <= maxh <= minf < maxf");
    }
    if (!(0 < thr && thr < 1)) throw std::invalid_argument("thr must be in (0,1)");
    if (!(k_growth > 0)) throw std::invalid_argument("growth rate must be positive");
}

static void check_score(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("fraud score outside [0,1]");
}

static double linear_branch(double r, const PenaltyParams& p) {
    return (p.maxh_s - p.minh_s) / p.thr * r + p.minh_s;
}

static double clamp_penalty(double tau, const PenaltyParams& p) {
    return std::min(std::max(tau, p.minh_s), p.maxf_s);
}

double fraud_to_penalty(double r, const PenaltyParams& p) {
    p.validate();
    check_score(r);
    double tau;
    if (r <= p.thr) {
        tau = linear_branch(r, p);
    } else {
        tau = p.maxf_s /
              (1.0 + (p.maxf_s - p.minf_s) / p.minf_s * std::exp(-p.k_growth * (r - p.thr)));
    }
    return clamp_penalty(tau, p);
}

double fraud_to_penalty_exp(double r, const PenaltyParams& p) {
    p.validate();
    check_score(r);
    double tau;
    if (r <= p.thr) {
        tau = linear_branch(r, p);
    } else {
        tau = (p.maxf_s - p.minf_s) * (std::exp(r) - std::exp(p.thr)) /
                  (std::exp(1.0) - std::exp(p.thr)) +
              p.minf_s;
    }
    return clamp_penalty(tau, p);
}

double fraud_to_penalty_log(double r, const PenaltyParams& p) {
    p.validate();
    check_score(r);
    double tau;
    if (r <= p.thr) {
        tau = linear_branch(r, p);
    } else {
        tau = (p.minf_s - p.maxf_s) * std::log(r) / std::log(p.thr) + p.maxf_s;
    }
    return clamp_penalty(tau, p);
}

std::string penalty_curves_csv(const PenaltyParams& p, int points) {
    if (points < 2) throw std::invalid_argument("need at least two points");
    std::ostringstream out;
    out << "r,tau_logistic_s,tau_exp_s,tau_log_s\n";
    out.precision(10);
    for (int i = 0; i < points; ++i) {
        double r = static_cast<double>(i) / (points - 1);
        out << r << ',' << fraud_to_penalty(r, p) << ',' << fraud_to_penalty_exp(r, p)
            << ',' << fraud_to_penalty_log(r, p) << '\n';
    }
    return out.str();
}

} // namespace fraudsys
