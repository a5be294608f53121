#pragma once

#include <cstdint>
#include <vector>

#include "fof/rng.hpp"
#include "fof/types.hpp"
#include "fof/weight_tree.hpp"

// Shared Gibbs machinery for partitions with proportional full conditionals:
// an existing cluster k is chosen with weight (n_k - discount) and a new one
// with weight new_const + new_per_cluster * l.  Covers the generalized NB
// process (new_per_cluster = 0) and Pitman-Yor (new_const = gamma0,
// new_per_cluster = a) rules.

namespace fof::detail {

struct SweepModel {
    double discount = 0.0;
    double new_const = 1.0;
    double new_per_cluster = 0.0;
};

class PartitionSweeper {
  public:
    PartitionSweeper(ClusterAssignment assign, std::size_t frozen_prefix,
                     const SweepModel& model);

    // updates the weight rule (parameters moved by an outer sampler)
    void set_model(const SweepModel& model);

    // draws the unfrozen suffix forward by the proportional prediction rule;
    // existing suffix labels are discarded
    void init_suffix_sequential(std::uint64_t target_n, RngStream& rng);

    // one full pass over the unfrozen positions in random order, followed by
    // canonical relabelling and a weight rebuild
    void sweep(RngStream& rng);

    const ClusterAssignment& assignment() const { return z_; }
    std::uint64_t cluster_count() const { return live_; }

  private:
    void relabel_and_rebuild();
    std::uint32_t open_cluster();

    ClusterAssignment z_;
    std::size_t frozen_;
    SweepModel model_;
    WeightTree tree_;
    std::vector<std::uint32_t> free_slots_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> remap_, new_sizes_;
    std::vector<double> weights_;
    std::uint64_t live_ = 0;
};

}  // namespace fof::detail
