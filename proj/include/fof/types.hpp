#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace fof {

// Frequency-of-frequencies vector: counts[i] = number of clusters of size i.
// Zero entries are absent; n = sum i*m_i, l = sum m_i.
struct FoFVector {
    std::map<std::uint32_t, std::uint64_t> counts;

    std::uint64_t total_size() const {
        std::uint64_t n = 0;
        for (const auto& [size, mult] : counts) n += std::uint64_t{size} * mult;
        return n;
    }
    std::uint64_t cluster_count() const {
        std::uint64_t l = 0;
        for (const auto& [size, mult] : counts) l += mult;
        return l;
    }
    void add_cluster(std::uint32_t size, std::uint64_t mult = 1) {
        if (size == 0 || mult == 0) return;
        counts[size] += mult;
    }
    bool operator==(const FoFVector&) const = default;
};

// Cluster labels z_1..z_n in order of appearance: z_1 = 1 and each new label
// is one past the prefix maximum.  sizes[k-1] tallies label k.
struct ClusterAssignment {
    std::vector<std::uint32_t> labels;
    std::vector<std::uint32_t> sizes;

    std::size_t n() const { return labels.size(); }
    std::size_t cluster_count() const { return sizes.size(); }

    // relabels arbitrary positive labels into canonical order of appearance
    static ClusterAssignment from_labels(std::span<const std::uint32_t> raw);
    // concatenates clusters of the given sizes, labelled 1..k in order
    static ClusterAssignment from_sizes(std::span<const std::uint32_t> cluster_sizes);

    FoFVector fof() const;
    // throws std::invalid_argument when the canonical-form invariants fail
    void validate() const;
    bool operator==(const ClusterAssignment&) const = default;
};

// Mass, discount, and probability parameters of the generalized NB process.
struct GnbpParams {
    double gamma0 = 1.0;  // > 0
    double a = 0.0;       // < 1
    double p = 0.5;       // in (0,1)

    // the exposure factor (1-(1-p)^a)/(a p^a); -ln(1-p) at a = 0
    double psi() const;
    double log_psi() const;
    // ln(gamma0 * p^-a), the new-cluster weight of the prediction rules
    double log_new_weight() const;
    void validate() const;
};

}  // namespace fof
