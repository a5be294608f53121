#include "fof/cluster.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fof/numerics.hpp"
#include "sweeper.hpp"

namespace fof {

GammaKernel::GammaKernel(double p) : p_(p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gamma kernel: p must lie in (0,1)");
}

double GammaKernel::log_moment(std::uint32_t j) const {
    if (j == 0) throw std::domain_error("mixing kernel: moments start at j = 1");
    return std::lgamma(static_cast<double>(j)) + static_cast<double>(j) * std::log(p_);
}

double GammaKernel::log_psi() const { return std::log(-std::log1p(-p_)); }

GGammaKernel::GGammaKernel(double a, double p) : a_(a), p_(p) {
    if (!(a < 1.0)) throw std::domain_error("ggamma kernel: requires a < 1");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("ggamma kernel: p must lie in (0,1)");
}

double GGammaKernel::log_moment(std::uint32_t j) const {
    if (j == 0) throw std::domain_error("mixing kernel: moments start at j = 1");
    double dj = static_cast<double>(j);
    return std::lgamma(dj - a_) - std::lgamma(1.0 - a_) + (dj - a_) * std::log(p_);
}

double GGammaKernel::log_psi() const { return log_exposure_factor(a_, p_); }

double generic_cluster_size_log_pmf(std::uint32_t j, const MixingKernel& kernel) {
    return kernel.log_moment(j) - std::lgamma(static_cast<double>(j) + 1.0) -
           kernel.log_psi();
}

ClusterAssignment generic_compound(const MixingKernel& kernel, double gamma0,
                                   RngStream& rng) {
    if (!(gamma0 > 0.0)) throw std::domain_error("generic_compound: gamma0 must be positive");
    std::uint64_t l = rng.poisson(gamma0 * std::exp(kernel.log_psi()));
    std::vector<double> cdf;
    cdf.push_back(std::exp(generic_cluster_size_log_pmf(1, kernel)));
    std::vector<std::uint32_t> sizes;
    sizes.reserve(l);
    for (std::uint64_t k = 0; k < l; ++k) {
        double target = rng.next_double();
        while (cdf.back() < target) {
            double prev = cdf.back();
            cdf.push_back(prev + std::exp(generic_cluster_size_log_pmf(
                                     static_cast<std::uint32_t>(cdf.size() + 1), kernel)));
            if (cdf.back() == prev) break;
        }
        std::size_t lo = 0, hi = cdf.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] < target)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo >= cdf.size()) lo = cdf.size() - 1;
        sizes.push_back(static_cast<std::uint32_t>(lo + 1));
    }
    return ClusterAssignment::from_sizes(sizes);
}

double log_ecpf_fof(const FoFVector& fof, const GnbpParams& params) {
    params.validate();
    const double lg1a = std::lgamma(1.0 - params.a);
    double size_terms = 0.0;
    std::uint64_t n = 0, l = 0;
    for (const auto& [size, mult] : fof.counts) {
        size_terms += static_cast<double>(mult) *
                      (std::lgamma(static_cast<double>(size) - params.a) - lg1a);
        n += std::uint64_t{size} * mult;
        l += mult;
    }
    double dn = static_cast<double>(n);
    double dl = static_cast<double>(l);
    return -std::lgamma(dn + 1.0) - params.gamma0 * params.psi() +
           dl * std::log(params.gamma0) + (dn - params.a * dl) * std::log(params.p) +
           size_terms;
}

double log_ecpf(const ClusterAssignment& assign, const GnbpParams& params) {
    return log_ecpf_fof(assign.fof(), params);
}

double log_eppf(const ClusterAssignment& assign, const GnbpParams& params,
                double log_norm) {
    params.validate();
    const double lg1a = std::lgamma(1.0 - params.a);
    double size_terms = 0.0;
    for (std::uint32_t s : assign.sizes)
        size_terms += std::lgamma(static_cast<double>(s) - params.a) - lg1a;
    double dl = static_cast<double>(assign.cluster_count());
    return dl * params.log_new_weight() - log_norm + size_terms;
}

double log_eppf(const ClusterAssignment& assign, const GnbpParams& params,
                std::uint32_t cap) {
    return log_eppf(assign, params,
                    log_normalizer(static_cast<std::uint32_t>(assign.n()), params, cap));
}

double log_cluster_count_pmf(std::uint32_t l, std::uint32_t n, const GnbpParams& params,
                             const StirlingTable& table, double log_norm) {
    if (l > n) return kLogZero;
    if (l == 0) return n == 0 ? 0.0 : kLogZero;
    return static_cast<double>(l) * params.log_new_weight() + table.log_at(n, l) -
           log_norm;
}

double log_cluster_count_pmf(std::uint32_t l, std::uint32_t n, const GnbpParams& params,
                             std::uint32_t cap) {
    StirlingTable table(params.a, n == 0 ? 1 : n, cap);
    double log_norm = log_normalizer_from_s(table, n, params);
    return log_cluster_count_pmf(l, n, params, table, log_norm);
}

double fof_log_rate(std::uint32_t i, const GnbpParams& params) {
    params.validate();
    if (i == 0) throw std::domain_error("fof_log_rate: size must be >= 1");
    double di = static_cast<double>(i);
    return std::lgamma(di - params.a) - std::lgamma(1.0 - params.a) +
           std::log(params.gamma0) + (di - params.a) * std::log(params.p) -
           std::lgamma(di + 1.0);
}

double log_prefix_eppf(const ClusterAssignment& prefix, const CompletionTable& table) {
    const GnbpParams& params = table.params();
    std::uint32_t i = static_cast<std::uint32_t>(prefix.n());
    if (i == 0 || i > table.population_size())
        throw std::invalid_argument("log_prefix_eppf: prefix length out of range");
    std::uint32_t l_i = static_cast<std::uint32_t>(prefix.cluster_count());
    const double lg1a = std::lgamma(1.0 - params.a);
    double size_terms = 0.0;
    for (std::uint32_t s : prefix.sizes)
        size_terms += std::lgamma(static_cast<double>(s) - params.a) - lg1a;
    return table.log_at(i, l_i) + static_cast<double>(l_i) * params.log_new_weight() -
           log_normalizer_from_r(table) + size_terms;
}

double log_prefix_cluster_count_pmf(std::uint32_t l_i, std::uint32_t i,
                                    const StirlingTable& s_table,
                                    const CompletionTable& r_table) {
    if (i == 0 || i > r_table.population_size())
        throw std::invalid_argument("prefix cluster count: length out of range");
    if (l_i == 0 || l_i > i) return kLogZero;
    const GnbpParams& params = r_table.params();
    return static_cast<double>(l_i) * params.log_new_weight() + s_table.log_at(i, l_i) +
           r_table.log_at(i, l_i) - log_normalizer_from_r(r_table);
}

FoFVector simulate_fof_poisson(const GnbpParams& params, std::uint32_t i_max,
                               RngStream& rng) {
    params.validate();
    const double total = params.gamma0 * params.psi();
    FoFVector out;
    if (i_max == 0) i_max = 1;
    double rate = std::exp(fof_log_rate(1, params));
    double covered = 0.0;
    for (std::uint32_t i = 1;; ++i) {
        if (i > i_max && total - covered < 1e-12) break;
        std::uint64_t m = rng.poisson(rate);
        if (m > 0) out.add_cluster(i, m);
        covered += rate;
        rate *= params.p * (static_cast<double>(i) - params.a) / (i + 1.0);
        if (i > (1u << 26)) break;  // rate underflow safety
    }
    return out;
}

FoFVector simulate_fof_stickbreak(const GnbpParams& params, RngStream& rng) {
    params.validate();
    const double a = params.a, p = params.p;
    std::uint64_t remaining = rng.poisson(params.gamma0 * params.psi());
    FoFVector out;
    // sum_{t>=1} Gamma(t-a) p^t / t!  in closed form
    const double denom_total =
        std::exp(std::lgamma(1.0 - a) + a * std::log(p) + log_exposure_factor(a, p));
    double term = std::exp(std::lgamma(1.0 - a)) * p;  // t = 1
    double prefix = 0.0;
    for (std::uint32_t i = 1; remaining > 0; ++i) {
        double tail = denom_total - prefix;
        if (tail < 1e-8 * denom_total) {
            // the subtraction has cancelled; rebuild the tail directly
            tail = 0.0;
            double t = term;
            for (std::uint32_t j = i; t > tail * 1e-18 || j < i + 8; ++j) {
                tail += t;
                t *= p * (static_cast<double>(j) - a) / (j + 1.0);
                if (j > i + (1u << 20)) break;
            }
        }
        double q = term / tail;
        if (q > 1.0) q = 1.0;
        std::uint64_t m = rng.binomial(remaining, q);
        if (m > 0) out.add_cluster(i, m);
        remaining -= m;
        prefix += term;
        term *= p * (static_cast<double>(i) - a) / (i + 1.0);
    }
    return out;
}

ClusterAssignment simulate_compound(const GnbpParams& params, RngStream& rng) {
    params.validate();
    std::uint64_t l = rng.poisson(params.gamma0 * params.psi());
    TnbSampler draw_size(params.a, params.p);
    std::vector<std::uint32_t> sizes;
    sizes.reserve(l);
    for (std::uint64_t k = 0; k < l; ++k)
        sizes.push_back(static_cast<std::uint32_t>(draw_size(rng)));
    return ClusterAssignment::from_sizes(sizes);
}

ClusterAssignment sequential_sample(const CompletionTable& table, RngStream& rng) {
    const GnbpParams& params = table.params();
    const std::uint32_t n = table.population_size();
    const double a = params.a;
    const double w_new0 = std::exp(params.log_new_weight());

    ClusterAssignment z;
    z.labels.reserve(n);
    z.labels.push_back(1);
    z.sizes.push_back(1);
    std::uint32_t l = 1;
    for (std::uint32_t i = 1; i < n; ++i) {
        const double log_r_i = table.log_at(i, l);
        const double ratio_keep = std::exp(table.log_at(i + 1, l) - log_r_i);
        const double p_new =
            w_new0 * std::exp(table.log_at(i + 1, l + 1) - log_r_i);
        const double p_exist = (static_cast<double>(i) - a * l) * ratio_keep;
        if (std::fabs(p_exist + p_new - 1.0) > 1e-10)
            throw std::logic_error("sequential_sample: step probabilities do not sum to 1");
        double u = rng.next_double();
        if (u >= p_exist) {
            ++l;
            z.sizes.push_back(1);
            z.labels.push_back(l);
            continue;
        }
        // walk the existing clusters
        std::uint32_t k = 1;
        double acc = (static_cast<double>(z.sizes[0]) - a) * ratio_keep;
        while (acc < u && k < l) {
            ++k;
            acc += (static_cast<double>(z.sizes[k - 1]) - a) * ratio_keep;
        }
        ++z.sizes[k - 1];
        z.labels.push_back(k);
    }
    return z;
}

ClusterAssignment sequential_sample(std::uint32_t n, const GnbpParams& params,
                                    RngStream& rng, std::uint32_t cap) {
    if (n == 0) throw std::domain_error("sequential_sample: requires n >= 1");
    CompletionTable table(params, n, cap);
    return sequential_sample(table, rng);
}

ClusterAssignment gibbs_sweep(const ClusterAssignment& assign, const GnbpParams& params,
                              std::size_t frozen_prefix, RngStream& rng) {
    params.validate();
    assign.validate();
    detail::SweepModel model{params.a, std::exp(params.log_new_weight()), 0.0};
    detail::PartitionSweeper sweeper(assign, frozen_prefix, model);
    sweeper.sweep(rng);
    return sweeper.assignment();
}

double log_completion_density(const ClusterAssignment& assign,
                              std::uint32_t observed_prefix,
                              const CompletionTable& table) {
    const GnbpParams& params = table.params();
    const std::uint32_t n = table.population_size();
    assign.validate();
    if (assign.n() != n)
        throw std::invalid_argument("log_completion_density: assignment/table size mismatch");
    if (observed_prefix < 1 || observed_prefix > n)
        throw std::invalid_argument("log_completion_density: prefix out of range");
    const double a = params.a;

    std::uint32_t l_i = 0;
    std::vector<std::uint32_t> prefix_sizes(assign.cluster_count(), 0);
    for (std::uint32_t idx = 0; idx < observed_prefix; ++idx) {
        std::uint32_t k = assign.labels[idx];
        if (k > l_i) l_i = k;
        ++prefix_sizes[k - 1];
    }
    const std::uint32_t l_n = static_cast<std::uint32_t>(assign.cluster_count());

    double out = static_cast<double>(l_n - l_i) * params.log_new_weight() -
                 table.log_at(observed_prefix, l_i);
    const double lg1a = std::lgamma(1.0 - a);
    for (std::uint32_t k = 1; k <= l_n; ++k) {
        double final_term = std::lgamma(static_cast<double>(assign.sizes[k - 1]) - a);
        double base = k <= l_i ? std::lgamma(static_cast<double>(prefix_sizes[k - 1]) - a)
                               : lg1a;
        out += final_term - base;
    }
    return out;
}

double log_completion_density(const ClusterAssignment& assign,
                              std::uint32_t observed_prefix, const GnbpParams& params,
                              std::uint32_t cap) {
    CompletionTable table(params, static_cast<std::uint32_t>(assign.n()), cap);
    return log_completion_density(assign, observed_prefix, table);
}

}  // namespace fof
