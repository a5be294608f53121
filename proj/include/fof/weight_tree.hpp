#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fof {

// Fenwick tree over nonnegative weights: O(log n) point update, total, and
// inverse-CDF sampling.  Backs the categorical draws of the Gibbs sweeps,
// where cluster weights change by one unit per reassignment.
class WeightTree {
  public:
    WeightTree() = default;
    explicit WeightTree(std::span<const double> weights) { assign(weights); }

    void assign(std::span<const double> weights);
    void push_back(double w);
    void add(std::size_t i, double delta);
    double total() const { return total_; }
    std::size_t size() const { return tree_.size(); }

    // index whose cumulative-weight interval contains u, for u in [0, total)
    std::size_t sample(double u) const;

  private:
    std::vector<double> tree_;  // 1-based implicit layout
    std::size_t top_ = 0;       // highest power of two <= size
    double total_ = 0.0;
};

}  // namespace fof
