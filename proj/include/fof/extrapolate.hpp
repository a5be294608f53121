#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "fof/inference.hpp"
#include "fof/rng.hpp"
#include "fof/types.hpp"

namespace fof {

enum class ModelKind { gnbp, pitman_yor, crp };

// Which partition model drives the latent-suffix sweeps and the parameter
// updates.  crp is the a = 0 restriction of the generalized NB process.
struct ExtrapolationModel {
    ModelKind kind = ModelKind::gnbp;
    AMode a_mode = AMode::free_a();  // gnbp only
};

struct ExtrapolationJob {
    ClusterAssignment observed;      // canonical sample of size i
    std::uint64_t population_size;   // n >= i
    ExtrapolationModel model;
    McmcConfig cfg;

    // hold the parameters fixed instead of sampling them
    bool fixed_params = false;
    GnbpParams gnbp_params{1.0, 0.0, 0.5};  // used when fixed or as the start
    PyParams py_params{1.0, 0.5};

    bool record_fof_samples = false;
    bool record_assignment_samples = false;
};

struct PosteriorFoF {
    std::map<std::uint32_t, double> mean;  // posterior mean count per size
    std::uint64_t kept = 0;
};

struct ExtrapolationResult {
    PosteriorFoF posterior;
    McmcTrace trace;
    ClusterAssignment final_assignment;
    std::vector<FoFVector> fof_samples;              // only when requested
    std::vector<ClusterAssignment> assignment_samples;  // only when requested
};

// uniformly random m-subset of the population indices, relabelled canonically
ClusterAssignment subsample_without_replacement(const ClusterAssignment& population,
                                                std::uint64_t m, RngStream& rng);

ExtrapolationResult run_extrapolation(const ExtrapolationJob& job, RngStream& rng);

}  // namespace fof
