#pragma once

#include <limits>
#include <span>

// Special functions and log-space primitives.  Zero is represented in log
// space as -infinity throughout the library; no operation here produces NaN
// for in-domain inputs.

namespace fof {

inline constexpr double kLogZero = -std::numeric_limits<double>::infinity();

// ln Gamma(x) for x > 0; throws std::domain_error otherwise
double log_gamma(double x);

// ln(exp(a) + exp(b))
double log_add_exp(double a, double b);

// ln sum_i exp(v[i]); empty input yields kLogZero
double log_sum_exp(std::span<const double> values);

// Hurwitz zeta sum_{j>=0} (q+j)^-alpha for alpha > 1, q >= 1.
// 64 explicit terms closed with an Euler-Maclaurin tail correction.
double hurwitz_zeta(double alpha, double q);

// The cluster exposure factor (1-(1-p)^a) / (a p^a), evaluated as the
// limit -ln(1-p) at a = 0.  Finite and positive for a < 1, p in (0,1).
double exposure_factor(double a, double p);
double log_exposure_factor(double a, double p);

}  // namespace fof
