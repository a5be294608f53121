#pragma once

#include <cstddef>
#include <span>

// Vectorized primitives behind the numeric hot loops: log-space table
// recursions, griddy-Gibbs grid evaluation, and log-domain reductions.
// A scalar reference backend is always available; an AVX2 backend is
// selected at runtime when the CPU supports it.  Set FOF_KERNELS=scalar
// (or =avx2) in the environment to force a backend.

namespace fof::kern {

struct Backend {
    const char* name;
    // out[i] = exp(x[i]); underflows to 0, overflows to +inf
    void (*exp)(const double* x, double* out, std::size_t n);
    // out[i] = log(x[i]); requires x[i] >= 0, log(0) = -inf
    void (*log)(const double* x, double* out, std::size_t n);
    // out[i] = lgamma(x[i]); requires x[i] > 0
    void (*lgamma)(const double* x, double* out, std::size_t n);
    // out[i] = log(exp(x[i]) + exp(y[i])); -inf encodes zero
    void (*log_add_exp)(const double* x, const double* y, double* out, std::size_t n);
    // log(sum_i exp(x[i])); empty input gives -inf
    double (*log_sum_exp)(const double* x, std::size_t n);
};

const Backend& scalar_backend();
const Backend& active_backend();

inline void vexp(std::span<const double> x, std::span<double> out) {
    active_backend().exp(x.data(), out.data(), x.size());
}
inline void vlog(std::span<const double> x, std::span<double> out) {
    active_backend().log(x.data(), out.data(), x.size());
}
inline void vlgamma(std::span<const double> x, std::span<double> out) {
    active_backend().lgamma(x.data(), out.data(), x.size());
}
inline void vlog_add_exp(std::span<const double> x, std::span<const double> y,
                         std::span<double> out) {
    active_backend().log_add_exp(x.data(), y.data(), out.data(), x.size());
}
inline double vlog_sum_exp(std::span<const double> x) {
    return active_backend().log_sum_exp(x.data(), x.size());
}

}  // namespace fof::kern
