#pragma once

#include <cstdint>
#include <vector>

#include "fof/rng.hpp"
#include "fof/types.hpp"

namespace fof {

struct McmcConfig {
    std::uint32_t iterations = 1000;
    std::uint32_t burn_in = 500;
    std::uint32_t inner_sweeps = 5;  // suffix passes per iteration
    double e0 = 0.01;                // gamma prior shape on gamma0
    double f0 = 0.01;                // gamma prior rate on gamma0
    std::uint32_t grid_points = 9999;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TraceRow {
    std::uint32_t iter;
    double gamma0;
    double a;
    double p;  // NaN for Pitman-Yor rows
    std::uint64_t l;
    double log_ecpf;
};

struct McmcTrace {
    std::vector<TraceRow> rows;
};

// Grid restriction for the discount parameter: the sampler moves a over the
// reparameterized grid 1/(2-a) in (0,1), optionally truncated to a < 0, or
// holds it fixed.
struct AMode {
    enum class Kind { free, negative_only, fixed };
    Kind kind = Kind::free;
    double value = 0.0;

    static AMode free_a() { return {Kind::free, 0.0}; }
    static AMode negative() { return {Kind::negative_only, -1.0}; }
    static AMode fixed(double v) { return {Kind::fixed, v}; }
};

struct PyParams {
    double gamma0 = 1.0;  // concentration, > 0
    double a = 0.5;       // discount in [0,1)
};

// one conjugate draw: Gamma(e0 + l, 1/(f0 + psi(a,p)))
double sample_gamma0(std::uint64_t l, const GnbpParams& params, const McmcConfig& cfg,
                     RngStream& rng);
// griddy-Gibbs draw of the discount over the 1/(2-a) grid
double sample_a_griddy(const ClusterAssignment& assign, const GnbpParams& params,
                       const McmcConfig& cfg, RngStream& rng);
// exact Beta(1+n, 1+gamma0) draw at a = 0, griddy-Gibbs otherwise
double sample_p(const ClusterAssignment& assign, const GnbpParams& params,
                const McmcConfig& cfg, RngStream& rng);

// full parameter chain on a fixed assignment
McmcTrace fit_gnbp(const ClusterAssignment& assign, const McmcConfig& cfg, AMode mode,
                   RngStream& rng);

// Pitman-Yor EPPF and its auxiliary-variable parameter chain
double py_log_eppf(const ClusterAssignment& assign, const PyParams& params);
McmcTrace fit_pitman_yor(const ClusterAssignment& assign, const McmcConfig& cfg,
                         RngStream& rng);

}  // namespace fof
