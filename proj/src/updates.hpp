#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "fof/inference.hpp"
#include "fof/rng.hpp"
#include "fof/types.hpp"

// Internal parameter-update machinery shared by the fixed-assignment fitters
// and the extrapolation chains.

namespace fof::detail {

// -gamma0 * psi(a,p) evaluated without overflow for any a < 1, given
// lp = ln p and l1mp = ln(1-p)
double neg_gamma_psi(double gamma0, double a, double lp, double l1mp);

// draw an index proportional to exp(mass[g]); scratch must match mass in size
std::size_t sample_log_masses(std::span<const double> mass, std::span<double> scratch,
                              RngStream& rng);

// Griddy-Gibbs workspace for the generalized NB discount and probability
// updates.  Holds the reparameterized grid 1/(2-a) = (0,1), per-grid
// lgamma rows keyed by cluster size, and scratch buffers.
class GriddyGibbs {
  public:
    explicit GriddyGibbs(std::uint32_t grid_points);

    // conditional draw of a given (gamma0, p) and the cluster sizes
    double sample_a(const FoFVector& fof, std::uint64_t l, double gamma0, double p,
                    bool negative_only, RngStream& rng);
    // conditional draw of p given (gamma0, a != 0)
    double sample_p(std::uint64_t n, std::uint64_t l, double gamma0, double a,
                    RngStream& rng);

  private:
    const std::vector<double>& lgamma_row(std::uint32_t size);

    std::uint32_t m_;
    std::size_t neg_count_;               // prefix of the grid with a < 0
    std::vector<double> a_grid_, lg1ma_;  // a values and lnGamma(1-a)
    std::vector<double> p_grid_, log_p_, log_1mp_;
    std::vector<double> mass_, t1_, t2_, scratch_;
    std::unordered_map<std::uint32_t, std::vector<double>> rows_;
};

// one Pitman-Yor auxiliary-variable round updating params in place
void py_update(const FoFVector& fof, std::uint64_t n, std::uint64_t l, PyParams& params,
               double e0, double f0, RngStream& rng);

double py_log_eppf_fof(const FoFVector& fof, const PyParams& params);

}  // namespace fof::detail
