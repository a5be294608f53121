#pragma once

#include <cstdint>
#include <vector>

#include "fof/rng.hpp"
#include "fof/tables.hpp"
#include "fof/types.hpp"

namespace fof {

// ln P(N = n) for the generalized negative binomial population size.
// Uses the normalizer tables except for the dedicated a = 0 branch, which
// is the plain negative binomial NB(gamma0, p).
double gnb_log_pmf(std::uint64_t n, const GnbpParams& params,
                   std::uint32_t cap = kDefaultTableCap);

// ln P(U = u) for the truncated negative binomial cluster-size law on
// {1,2,...}; the a = 0 branch is the logarithmic distribution.
double tnb_log_pmf(std::uint64_t u, double a, double p);

// Exact truncated-NB sampler: inverse CDF over a cached cumulative table,
// extended on demand.
class TnbSampler {
  public:
    TnbSampler(double a, double p);
    std::uint64_t operator()(RngStream& rng);

  private:
    void extend();
    double a_, p_;
    std::vector<double> cdf_;  // cdf_[u-1] = P(U <= u)
};

// Limit laws for the cluster statistics as the population grows
// (three regimes by the discount parameter).
struct ReferenceLaw {
    enum class Kind {
        poisson,          // statistic -> Poisson(rate)
        shifted_poisson,  // statistic -> 1 + Poisson(rate)
        log_scaling,      // statistic / ln(n) -> limit
        power_scaling,    // statistic / n^exponent -> limit
    };
    Kind kind;
    double rate = 0.0;
    double limit = 0.0;
    double exponent = 0.0;
};

// law of the number of clusters; defined for a in (0,1), a = 0, and
// a in {-1,-2,...}; throws std::domain_error elsewhere
ReferenceLaw cluster_count_law(const GnbpParams& params);
// law of the number of clusters of size i (same domain)
ReferenceLaw cluster_size_count_law(std::uint32_t i, const GnbpParams& params);

}  // namespace fof
