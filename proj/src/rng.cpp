#include "fof/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fof {
namespace {

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    constexpr std::uint64_t kMul0 = 0xD2511F53;
    constexpr std::uint64_t kMul1 = 0xCD9E8D57;
    std::uint64_t p0 = kMul0 * ctr[0];
    std::uint64_t p1 = kMul1 * ctr[2];
    std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
    std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
    ctr[1] = static_cast<std::uint32_t>(p1);
    ctr[3] = static_cast<std::uint32_t>(p0);
    ctr[0] = out0;
    ctr[2] = out2;
}

inline void philox10(std::uint64_t block, std::uint64_t stream, std::uint64_t seed,
                     std::uint32_t out[4]) {
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9;  // golden ratio
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85;  // sqrt(3) - 1
    std::uint32_t key[2] = {static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
    std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block),
                            static_cast<std::uint32_t>(block >> 32),
                            static_cast<std::uint32_t>(stream),
                            static_cast<std::uint32_t>(stream >> 32)};
    for (int r = 0; r < 10; ++r) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    out[0] = ctr[0];
    out[1] = ctr[1];
    out[2] = ctr[2];
    out[3] = ctr[3];
}

inline std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {}

void RngStream::refill() {
    philox10(block_, stream_, seed_, buf_);
    ++block_;
    pos_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) {
    // Lemire's nearly-divisionless rejection keeps the draw exactly uniform
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
        std::uint64_t threshold = (0 - n) % n;
        while (lo < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * n;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::split(std::uint64_t child) const {
    return RngStream(seed_, mix64(stream_ ^ mix64(child)));
}

double RngStream::exponential() {
    // -log of a strictly positive uniform
    for (;;) {
        double u = next_double();
        if (u > 0.0) return -std::log(u);
    }
}

double RngStream::normal() {
    if (has_spare_normal_) {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    // Marsaglia polar
    for (;;) {
        double u = 2.0 * next_double() - 1.0;
        double v = 2.0 * next_double() - 1.0;
        double s = u * u + v * v;
        if (s >= 1.0 || s == 0.0) continue;
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_normal_ = v * f;
        has_spare_normal_ = true;
        return u * f;
    }
}

double RngStream::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        throw std::domain_error("gamma: requires positive shape and scale");
    if (shape < 1.0) {
        // boost via Gamma(shape+1) * U^(1/shape)
        double u;
        do {
            u = next_double();
        } while (u == 0.0);
        return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double t = 1.0 + c * x;
        if (t <= 0.0) continue;
        double v = t * t * t;
        double u = next_double();
        if (u < 1.0 - 0.0331 * x * x * x * x) return scale * d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return scale * d * v;
    }
}

double RngStream::beta(double a, double b) {
    double x = gamma(a, 1.0);
    double y = gamma(b, 1.0);
    double s = x + y;
    if (s <= 0.0) return 0.5;  // both shapes tiny; one degenerate retry path
    return x / s;
}

std::uint64_t RngStream::poisson(double lambda) {
    if (!(lambda > 0.0)) return 0;
    if (lambda < 10.0) {
        // Knuth product of uniforms
        double limit = std::exp(-lambda);
        std::uint64_t k = 0;
        double prod = next_double();
        while (prod > limit) {
            ++k;
            prod *= next_double();
        }
        return k;
    }
    // Hormann's PTRS transformed rejection
    double b = 0.931 + 2.53 * std::sqrt(lambda);
    double a = -0.059 + 0.02483 * b;
    double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double v_r = 0.9277 - 3.6224 / (b - 2.0);
    double log_lambda = std::log(lambda);
    for (;;) {
        double u = next_double() - 0.5;
        double v = next_double();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        double k = kf;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            k * log_lambda - lambda - std::lgamma(k + 1.0))
            return static_cast<std::uint64_t>(kf);
    }
}

std::uint64_t RngStream::binomial(std::uint64_t n, double p) {
    if (n == 0 || p <= 0.0) return 0;
    if (p >= 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    // p <= 0.5 from here
    if (static_cast<double>(n) * p <= 30.0 || n <= 60) {
        // BINV inversion
        double q = 1.0 - p;
        double s = p / q;
        double f = std::pow(q, static_cast<double>(n));
        double u = next_double();
        std::uint64_t k = 0;
        double acc = f;
        while (u > acc && k < n) {
            ++k;
            f *= s * (static_cast<double>(n - k + 1) / static_cast<double>(k));
            acc += f;
        }
        return k;
    }
    // Split on a beta-distributed order statistic; recursion depth is O(log n)
    std::uint64_t m = n / 2 + 1;
    double x = beta(static_cast<double>(m), static_cast<double>(n - m + 1));
    if (x <= p) return m + binomial(n - m, (p - x) / (1.0 - x));
    return binomial(m - 1, p / x);
}

}  // namespace fof
