#include "fof/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "fof/kernels.hpp"

namespace fof {

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: requires x > 0");
    return std::lgamma(x);
}

double log_add_exp(double a, double b) {
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    if (hi == kLogZero) return kLogZero;
    return hi + std::log1p(std::exp(lo - hi));
}

double log_sum_exp(std::span<const double> values) {
    return kern::vlog_sum_exp(values);
}

double hurwitz_zeta(double alpha, double q) {
    if (!(alpha > 1.0)) throw std::domain_error("hurwitz_zeta: requires alpha > 1");
    if (!(q >= 1.0)) throw std::domain_error("hurwitz_zeta: requires q >= 1");
    constexpr int kExplicit = 64;
    double s = 0.0;
    for (int j = 0; j < kExplicit; ++j) s += std::pow(q + j, -alpha);
    // Euler-Maclaurin closure of the tail starting at N = q + 64
    double nn = q + kExplicit;
    double inv = 1.0 / nn;
    double t = std::pow(nn, -alpha);  // N^-alpha
    s += t * nn / (alpha - 1.0);      // integral term N^(1-alpha)/(alpha-1)
    s += 0.5 * t;
    double a1 = alpha * inv;
    s += t * a1 / 12.0;
    double a3 = a1 * (alpha + 1.0) * (alpha + 2.0) * inv * inv;
    s -= t * a3 / 720.0;
    double a5 = a3 * (alpha + 3.0) * (alpha + 4.0) * inv * inv;
    s += t * a5 / 30240.0;
    return s;
}

double exposure_factor(double a, double p) {
    if (a == 0.0) return -std::log1p(-p);
    double lp = std::log(p);
    double t = a * std::log1p(-p);
    if (t < 700.0) {
        // -(expm1(a ln(1-p))) / (a exp(a ln p))
        return -std::expm1(t) / (a * std::exp(a * lp));
    }
    // (1-p)^a dominates (only reachable for a < 0)
    return std::exp(t - a * lp - std::log(-a));
}

double log_exposure_factor(double a, double p) {
    if (a == 0.0) return std::log(-std::log1p(-p));
    double lp = std::log(p);
    double t = a * std::log1p(-p);
    if (t < 700.0) {
        double num = -std::expm1(t) / a;  // positive for a < 1
        return std::log(num) - a * lp;
    }
    return t - a * lp - std::log(-a);
}

}  // namespace fof
