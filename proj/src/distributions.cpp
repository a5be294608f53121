#include "fof/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fof/numerics.hpp"

namespace fof {

double gnb_log_pmf(std::uint64_t n, const GnbpParams& params, std::uint32_t cap) {
    params.validate();
    if (params.a == 0.0) {
        // NB(gamma0, p)
        double g = params.gamma0;
        return log_gamma(static_cast<double>(n) + g) - log_gamma(g) -
               std::lgamma(static_cast<double>(n) + 1.0) +
               static_cast<double>(n) * std::log(params.p) + g * std::log1p(-params.p);
    }
    if (n > cap) throw TableCapError("gnb_log_pmf: n exceeds the table cap");
    double ln_norm = log_normalizer(static_cast<std::uint32_t>(n), params, cap);
    return static_cast<double>(n) * std::log(params.p) - params.gamma0 * params.psi() +
           ln_norm - std::lgamma(static_cast<double>(n) + 1.0);
}

double tnb_log_pmf(std::uint64_t u, double a, double p) {
    if (u == 0) throw std::domain_error("tnb_log_pmf: support starts at 1");
    if (!(a < 1.0) || !(p > 0.0 && p < 1.0))
        throw std::domain_error("tnb_log_pmf: requires a < 1 and p in (0,1)");
    double du = static_cast<double>(u);
    if (a == 0.0) {
        // logarithmic distribution
        return -std::log(-std::log1p(-p)) + du * std::log(p) - std::log(du);
    }
    return std::lgamma(du - a) - std::lgamma(1.0 - a) - std::lgamma(du + 1.0) +
           du * std::log(p) - log_exposure_factor(a, p) - a * std::log(p);
}

TnbSampler::TnbSampler(double a, double p) : a_(a), p_(p) {
    if (!(a < 1.0) || !(p > 0.0 && p < 1.0))
        throw std::domain_error("tnb sampler: requires a < 1 and p in (0,1)");
    cdf_.push_back(std::exp(tnb_log_pmf(1, a_, p_)));
}

void TnbSampler::extend() {
    std::uint64_t u = cdf_.size() + 1;
    cdf_.push_back(cdf_.back() + std::exp(tnb_log_pmf(u, a_, p_)));
}

std::uint64_t TnbSampler::operator()(RngStream& rng) {
    double target = rng.next_double();
    while (cdf_.back() < target) {
        double prev = cdf_.back();
        extend();
        if (cdf_.back() == prev) break;  // increments vanished in rounding
    }
    auto it = std::lower_bound(cdf_.begin(), cdf_.end(), target);
    if (it == cdf_.end()) --it;
    return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
}

namespace {

bool is_negative_integer(double a) {
    return a <= -1.0 && std::fabs(a - std::round(a)) < 1e-12;
}

}  // namespace

ReferenceLaw cluster_count_law(const GnbpParams& params) {
    params.validate();
    double a = params.a;
    double g = params.gamma0;
    double p = params.p;
    if (a > 0.0 && a < 1.0) {
        return {ReferenceLaw::Kind::shifted_poisson, g / (a * std::pow(p, a)), 0.0, 0.0};
    }
    if (a == 0.0) {
        return {ReferenceLaw::Kind::log_scaling, 0.0, g, 0.0};
    }
    if (is_negative_integer(a)) {
        double expo = -a / (1.0 - a);
        double lim = std::pow(g * std::pow(p, -a), 1.0 / (1.0 - a)) / (-a);
        return {ReferenceLaw::Kind::power_scaling, 0.0, lim, expo};
    }
    throw std::domain_error("cluster_count_law: no limit law for this discount");
}

ReferenceLaw cluster_size_count_law(std::uint32_t i, const GnbpParams& params) {
    params.validate();
    if (i == 0) throw std::domain_error("cluster_size_count_law: size must be >= 1");
    double a = params.a;
    double g = params.gamma0;
    double p = params.p;
    double di = static_cast<double>(i);
    if (a == 0.0) return {ReferenceLaw::Kind::poisson, g / di, 0.0, 0.0};
    if ((a > 0.0 && a < 1.0) || is_negative_integer(a)) {
        double lr = std::lgamma(di - a) - std::lgamma(1.0 - a) + std::log(g) -
                    a * std::log(p) - std::lgamma(di + 1.0);
        return {ReferenceLaw::Kind::poisson, std::exp(lr), 0.0, 0.0};
    }
    throw std::domain_error("cluster_size_count_law: no limit law for this discount");
}

}  // namespace fof
