#pragma once

#include <cstdint>
#include <map>

#include "fof/types.hpp"

namespace fof {

// Discrete power-law tail fit: P(size = i) = i^-alpha / zeta(alpha, i_min)
// for i >= i_min.  alpha maximizes the zeta likelihood per candidate cutoff;
// the cutoff minimizes the KS distance between the empirical tail and the
// fitted law.  alpha_h is the least-squares slope of the log-log head.
struct PowerLawFit {
    std::uint32_t i_min = 1;
    double alpha = 0.0;
    double alpha_h = 0.0;         // NaN when the head has fewer than 2 points
    double head_intercept = 0.0;  // NaN when the index set is empty
    double tail_intercept = 0.0;
    double ks_distance = 0.0;
};

// throws std::domain_error when no cutoff leaves >= 2 distinct tail sizes
PowerLawFit fit_powerlaw_tail(const FoFVector& fof);

// Least-squares refit baseline: slopes estimated on the sample, intercepts
// refitted on the population, prediction per size piecewise around i_min.
// single_line marks the fallback when one index set is empty.
struct LsRefit {
    std::map<std::uint32_t, double> predicted;
    bool single_line = false;
    PowerLawFit sample_fit;
};

LsRefit ls_refit_baseline(const FoFVector& sample_fof, const FoFVector& population_fof);
// same refit with slopes already estimated
LsRefit ls_refit_with(const PowerLawFit& sample_fit, const FoFVector& population_fof);

// sqrt of the mean squared log-scale error over sizes 1..100 present in pop;
// predictions are floored at 1e-12 before the log
double rmse(const FoFVector& pop, const std::map<std::uint32_t, double>& pred);

// head terms for sizes 1..49 plus one pooled tail term for sizes >= 50;
// denominators floored at 1e-8, an all-zero tail contributes 0
double chi_squared(const FoFVector& pop, const std::map<std::uint32_t, double>& pred);

}  // namespace fof
