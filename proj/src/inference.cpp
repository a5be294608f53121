#include "fof/inference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fof/cluster.hpp"
#include "updates.hpp"

namespace fof {

void McmcConfig::validate() const {
    if (burn_in >= iterations)
        throw std::domain_error("mcmc config: burn_in must be below iterations");
    if (inner_sweeps < 1) throw std::domain_error("mcmc config: inner_sweeps >= 1");
    if (!(e0 > 0.0) || !(f0 > 0.0))
        throw std::domain_error("mcmc config: prior parameters must be positive");
    if (grid_points < 3) throw std::domain_error("mcmc config: grid too coarse");
}

double sample_gamma0(std::uint64_t l, const GnbpParams& params, const McmcConfig& cfg,
                     RngStream& rng) {
    double rate = cfg.f0 + params.psi();
    return std::max(rng.gamma(cfg.e0 + static_cast<double>(l), 1.0 / rate), 1e-300);
}

double sample_a_griddy(const ClusterAssignment& assign, const GnbpParams& params,
                       const McmcConfig& cfg, RngStream& rng) {
    detail::GriddyGibbs griddy(cfg.grid_points);
    return griddy.sample_a(assign.fof(), assign.cluster_count(), params.gamma0, params.p,
                           false, rng);
}

double sample_p(const ClusterAssignment& assign, const GnbpParams& params,
                const McmcConfig& cfg, RngStream& rng) {
    std::uint64_t n = assign.n();
    if (params.a == 0.0)
        return rng.beta(1.0 + static_cast<double>(n), 1.0 + params.gamma0);
    detail::GriddyGibbs griddy(cfg.grid_points);
    return griddy.sample_p(n, assign.cluster_count(), params.gamma0, params.a, rng);
}

McmcTrace fit_gnbp(const ClusterAssignment& assign, const McmcConfig& cfg, AMode mode,
                   RngStream& rng) {
    cfg.validate();
    assign.validate();
    if (assign.n() == 0) throw std::invalid_argument("fit_gnbp: empty assignment");

    const FoFVector fof = assign.fof();
    const std::uint64_t n = assign.n();
    const std::uint64_t l = assign.cluster_count();

    GnbpParams params{1.0, 0.0, 0.5};
    switch (mode.kind) {
        case AMode::Kind::free: params.a = 0.0; break;
        case AMode::Kind::negative_only: params.a = -1.0; break;
        case AMode::Kind::fixed: params.a = mode.value; break;
    }
    const bool move_a = mode.kind != AMode::Kind::fixed;

    detail::GriddyGibbs griddy(cfg.grid_points);
    McmcTrace trace;
    trace.rows.reserve(cfg.iterations);
    for (std::uint32_t iter = 1; iter <= cfg.iterations; ++iter) {
        params.gamma0 = sample_gamma0(l, params, cfg, rng);
        if (move_a)
            params.a = griddy.sample_a(fof, l, params.gamma0, params.p,
                                       mode.kind == AMode::Kind::negative_only, rng);
        if (params.a == 0.0)
            params.p = rng.beta(1.0 + static_cast<double>(n), 1.0 + params.gamma0);
        else
            params.p = griddy.sample_p(n, l, params.gamma0, params.a, rng);
        trace.rows.push_back(
            {iter, params.gamma0, params.a, params.p, l, log_ecpf_fof(fof, params)});
    }
    return trace;
}

double py_log_eppf(const ClusterAssignment& assign, const PyParams& params) {
    return detail::py_log_eppf_fof(assign.fof(), params);
}

McmcTrace fit_pitman_yor(const ClusterAssignment& assign, const McmcConfig& cfg,
                         RngStream& rng) {
    cfg.validate();
    assign.validate();
    if (assign.n() == 0) throw std::invalid_argument("fit_pitman_yor: empty assignment");

    const FoFVector fof = assign.fof();
    const std::uint64_t n = assign.n();
    const std::uint64_t l = assign.cluster_count();

    PyParams params{1.0, 0.5};
    McmcTrace trace;
    trace.rows.reserve(cfg.iterations);
    for (std::uint32_t iter = 1; iter <= cfg.iterations; ++iter) {
        detail::py_update(fof, n, l, params, cfg.e0, cfg.f0, rng);
        trace.rows.push_back({iter, params.gamma0, params.a,
                              std::numeric_limits<double>::quiet_NaN(), l,
                              detail::py_log_eppf_fof(fof, params)});
    }
    return trace;
}

}  // namespace fof
