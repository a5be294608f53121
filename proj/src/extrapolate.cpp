#include "fof/extrapolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fof/cluster.hpp"
#include "sweeper.hpp"
#include "updates.hpp"

namespace fof {
namespace {

detail::SweepModel sweep_model_for(ModelKind kind, const GnbpParams& gnbp,
                                   const PyParams& py) {
    switch (kind) {
        case ModelKind::gnbp:
            return {gnbp.a, std::exp(gnbp.log_new_weight()), 0.0};
        case ModelKind::crp:
            return {0.0, gnbp.gamma0, 0.0};
        case ModelKind::pitman_yor:
            return {py.a, py.gamma0, py.a};
    }
    throw std::logic_error("unknown model kind");
}

FoFVector fof_from_sizes(const std::vector<std::uint32_t>& sizes) {
    FoFVector out;
    for (std::uint32_t s : sizes) out.add_cluster(s);
    return out;
}

}  // namespace

ClusterAssignment subsample_without_replacement(const ClusterAssignment& population,
                                                std::uint64_t m, RngStream& rng) {
    const std::uint64_t n = population.n();
    if (m < 1 || m > n)
        throw std::invalid_argument("subsample: need 1 <= m <= population size");
    std::vector<std::uint32_t> idx(n);
    for (std::uint64_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(i);
    for (std::uint64_t i = 0; i < m; ++i) {
        std::uint64_t j = i + rng.below(n - i);
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());
    std::vector<std::uint32_t> labels(m);
    for (std::uint64_t i = 0; i < m; ++i) labels[i] = population.labels[idx[i]];
    return ClusterAssignment::from_labels(labels);
}

ExtrapolationResult run_extrapolation(const ExtrapolationJob& job, RngStream& rng) {
    job.cfg.validate();
    job.observed.validate();
    const std::uint64_t i = job.observed.n();
    const std::uint64_t n = job.population_size;
    if (i < 1 || n < i)
        throw std::invalid_argument("extrapolation: need 1 <= sample size <= n");

    GnbpParams gnbp = job.gnbp_params;
    if (job.model.kind == ModelKind::crp) gnbp.a = 0.0;
    if (job.model.kind == ModelKind::gnbp && !job.fixed_params) {
        switch (job.model.a_mode.kind) {
            case AMode::Kind::free: gnbp.a = 0.0; break;
            case AMode::Kind::negative_only: gnbp.a = -1.0; break;
            case AMode::Kind::fixed: gnbp.a = job.model.a_mode.value; break;
        }
    }
    gnbp.validate();
    PyParams py = job.py_params;

    // Warm-start the parameters from a short fit on the observed prefix.
    // The sequential initialization of the latent suffix uses the
    // proportional rule at these parameters; starting it from the defaults
    // opens far too few clusters, and the discount update can then lock the
    // chain into a merged state (the new-cluster weight gamma0 p^-a collapses
    // as a heads negative).
    if (!job.fixed_params) {
        McmcConfig warm = job.cfg;
        warm.iterations = 60;
        warm.burn_in = 30;
        if (job.model.kind == ModelKind::pitman_yor) {
            McmcTrace t = fit_pitman_yor(job.observed, warm, rng);
            py.gamma0 = t.rows.back().gamma0;
            py.a = t.rows.back().a;
        } else {
            AMode mode = job.model.kind == ModelKind::crp ? AMode::fixed(0.0)
                                                          : job.model.a_mode;
            McmcTrace t = fit_gnbp(job.observed, warm, mode, rng);
            gnbp.gamma0 = t.rows.back().gamma0;
            gnbp.a = t.rows.back().a;
            gnbp.p = t.rows.back().p;
        }
    }

    detail::PartitionSweeper sweeper(job.observed, i,
                                     sweep_model_for(job.model.kind, gnbp, py));
    sweeper.init_suffix_sequential(n, rng);

    const bool gnbp_like =
        job.model.kind == ModelKind::gnbp || job.model.kind == ModelKind::crp;
    const bool move_a = job.model.kind == ModelKind::gnbp && !job.fixed_params &&
                        job.model.a_mode.kind != AMode::Kind::fixed;
    detail::GriddyGibbs griddy(job.cfg.grid_points);

    ExtrapolationResult result;
    result.trace.rows.reserve(job.cfg.iterations);
    std::map<std::uint32_t, std::uint64_t> accum;

    for (std::uint32_t iter = 1; iter <= job.cfg.iterations; ++iter) {
        for (std::uint32_t t = 0; t < job.cfg.inner_sweeps; ++t) sweeper.sweep(rng);

        const std::uint64_t l = sweeper.cluster_count();
        const FoFVector fof = fof_from_sizes(sweeper.assignment().sizes);

        if (!job.fixed_params) {
            if (gnbp_like) {
                gnbp.gamma0 = sample_gamma0(l, gnbp, job.cfg, rng);
                if (move_a)
                    gnbp.a = griddy.sample_a(
                        fof, l, gnbp.gamma0, gnbp.p,
                        job.model.a_mode.kind == AMode::Kind::negative_only, rng);
                if (gnbp.a == 0.0)
                    gnbp.p = rng.beta(1.0 + static_cast<double>(n), 1.0 + gnbp.gamma0);
                else
                    gnbp.p = griddy.sample_p(n, l, gnbp.gamma0, gnbp.a, rng);
            } else {
                detail::py_update(fof, n, l, py, job.cfg.e0, job.cfg.f0, rng);
            }
            sweeper.set_model(sweep_model_for(job.model.kind, gnbp, py));
        }

        if (gnbp_like) {
            result.trace.rows.push_back(
                {iter, gnbp.gamma0, gnbp.a, gnbp.p, l, log_ecpf_fof(fof, gnbp)});
        } else {
            result.trace.rows.push_back({iter, py.gamma0, py.a,
                                         std::numeric_limits<double>::quiet_NaN(), l,
                                         detail::py_log_eppf_fof(fof, py)});
        }

        if (iter > job.cfg.burn_in) {
            ++result.posterior.kept;
            for (const auto& [size, mult] : fof.counts) accum[size] += mult;
            if (job.record_fof_samples) result.fof_samples.push_back(fof);
            if (job.record_assignment_samples)
                result.assignment_samples.push_back(sweeper.assignment());
        }
    }

    for (const auto& [size, total] : accum)
        result.posterior.mean[size] =
            static_cast<double>(total) / static_cast<double>(result.posterior.kept);
    result.final_assignment = sweeper.assignment();
    return result;
}

}  // namespace fof
