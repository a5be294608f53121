#include <cmath>
#include <limits>

#include "fof/kernels.hpp"

namespace fof::kern {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void exp_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void log_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::log(x[i]);
}

void lgamma_scalar(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::lgamma(x[i]);
}

void log_add_exp_scalar(const double* x, const double* y, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double hi = x[i] > y[i] ? x[i] : y[i];
        double lo = x[i] > y[i] ? y[i] : x[i];
        out[i] = hi == kNegInf ? kNegInf : hi + std::log1p(std::exp(lo - hi));
    }
}

double log_sum_exp_scalar(const double* x, std::size_t n) {
    double hi = kNegInf;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > hi) hi = x[i];
    if (hi == kNegInf) return kNegInf;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - hi);
    return hi + std::log(s);
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend b{"scalar",          exp_scalar,
                           log_scalar,        lgamma_scalar,
                           log_add_exp_scalar, log_sum_exp_scalar};
    return b;
}

}  // namespace fof::kern
