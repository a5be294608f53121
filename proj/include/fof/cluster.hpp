#pragma once

#include <cstdint>
#include <memory>

#include "fof/distributions.hpp"
#include "fof/rng.hpp"
#include "fof/tables.hpp"
#include "fof/types.hpp"

// Cluster-structure layer: joint and conditional partition laws of the
// completely-random-measure mixed Poisson model, the generalized NB process
// specialization, the three equivalent simulation constructions, and the
// sequential / Gibbs partition samplers.

namespace fof {

// Laplace-functional view of the mixing measure rho(dr): everything the
// compound-Poisson representation needs from it.
class MixingKernel {
  public:
    virtual ~MixingKernel() = default;
    // ln integral r^j e^-r rho(dr), j >= 1
    virtual double log_moment(std::uint32_t j) const = 0;
    // ln integral (1 - e^-r) rho(dr)
    virtual double log_psi() const = 0;
};

// gamma process with scale p/(1-p): cluster sizes are logarithmic
class GammaKernel final : public MixingKernel {
  public:
    explicit GammaKernel(double p);
    double log_moment(std::uint32_t j) const override;
    double log_psi() const override;

  private:
    double p_;
};

// generalized gamma process with discount a and scale p/(1-p):
// cluster sizes are truncated negative binomial
class GGammaKernel final : public MixingKernel {
  public:
    GGammaKernel(double a, double p);
    double log_moment(std::uint32_t j) const override;
    double log_psi() const override;

  private:
    double a_, p_;
};

// ln P(U = j) for the cluster-size law induced by a mixing kernel
double generic_cluster_size_log_pmf(std::uint32_t j, const MixingKernel& kernel);
// compound-Poisson draw under a mixing kernel with mass gamma0
ClusterAssignment generic_compound(const MixingKernel& kernel, double gamma0,
                                   RngStream& rng);

// ln p(z, n | params): the joint law of the population size and its
// partition, fully factorized over cluster sizes
double log_ecpf(const ClusterAssignment& assign, const GnbpParams& params);
double log_ecpf_fof(const FoFVector& fof, const GnbpParams& params);

// ln p(z | n, params): the size-dependent EPPF; the convenience overload
// builds the normalizer tables internally (O(n^2))
double log_eppf(const ClusterAssignment& assign, const GnbpParams& params,
                std::uint32_t cap = kDefaultTableCap);
double log_eppf(const ClusterAssignment& assign, const GnbpParams& params,
                double log_norm);

// ln P(L = l | n, params)
double log_cluster_count_pmf(std::uint32_t l, std::uint32_t n, const GnbpParams& params,
                             std::uint32_t cap = kDefaultTableCap);
double log_cluster_count_pmf(std::uint32_t l, std::uint32_t n, const GnbpParams& params,
                             const StirlingTable& table, double log_norm);

// ln of the Poisson rate for the number of size-i clusters
double fof_log_rate(std::uint32_t i, const GnbpParams& params);

// marginal law of a prefix z_{1:i} inside a population of size n;
// assign supplies the prefix, the table is built for the population
double log_prefix_eppf(const ClusterAssignment& prefix, const CompletionTable& table);
// marginal law of the prefix cluster count l_(i) inside a population of size n
double log_prefix_cluster_count_pmf(std::uint32_t l_i, std::uint32_t i,
                                    const StirlingTable& s_table,
                                    const CompletionTable& r_table);

// --- the three equivalent constructions ---

// independent Poisson counts per size; truncation auto-extends until the
// remaining rate mass is below 1e-12
FoFVector simulate_fof_poisson(const GnbpParams& params, std::uint32_t i_max,
                               RngStream& rng);
// cluster total first, then binomial stick-breaking over sizes
FoFVector simulate_fof_stickbreak(const GnbpParams& params, RngStream& rng);
// Poisson number of clusters with iid truncated-NB sizes
ClusterAssignment simulate_compound(const GnbpParams& params, RngStream& rng);

// --- partition samplers conditioned on the population size ---

// unbiased forward draw from the size-dependent prediction rule
ClusterAssignment sequential_sample(std::uint32_t n, const GnbpParams& params,
                                    RngStream& rng, std::uint32_t cap = kDefaultTableCap);
ClusterAssignment sequential_sample(const CompletionTable& table, RngStream& rng);

// one Gibbs sweep over positions frozen_prefix+1..n in random order, using
// the proportional full conditional; returns the canonically relabelled
// assignment and leaves the EPPF invariant
ClusterAssignment gibbs_sweep(const ClusterAssignment& assign, const GnbpParams& params,
                              std::size_t frozen_prefix, RngStream& rng);

// ln p(z_{i+1:n} | z_{1:i}, n, params) for a full assignment of length n
double log_completion_density(const ClusterAssignment& assign, std::uint32_t observed_prefix,
                              const GnbpParams& params,
                              std::uint32_t cap = kDefaultTableCap);
double log_completion_density(const ClusterAssignment& assign, std::uint32_t observed_prefix,
                              const CompletionTable& table);

}  // namespace fof
