#include "fof/types.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "fof/numerics.hpp"

namespace fof {

ClusterAssignment ClusterAssignment::from_labels(std::span<const std::uint32_t> raw) {
    ClusterAssignment out;
    out.labels.reserve(raw.size());
    std::unordered_map<std::uint32_t, std::uint32_t> relabel;
    relabel.reserve(raw.size() / 4 + 8);
    for (std::uint32_t z : raw) {
        if (z == 0) throw std::invalid_argument("cluster labels must be positive");
        auto [it, inserted] =
            relabel.try_emplace(z, static_cast<std::uint32_t>(relabel.size() + 1));
        std::uint32_t k = it->second;
        out.labels.push_back(k);
        if (inserted)
            out.sizes.push_back(1);
        else
            ++out.sizes[k - 1];
    }
    return out;
}

ClusterAssignment ClusterAssignment::from_sizes(
    std::span<const std::uint32_t> cluster_sizes) {
    ClusterAssignment out;
    std::uint32_t k = 0;
    for (std::uint32_t s : cluster_sizes) {
        if (s == 0) throw std::invalid_argument("cluster sizes must be positive");
        ++k;
        out.sizes.push_back(s);
        out.labels.insert(out.labels.end(), s, k);
    }
    return out;
}

FoFVector ClusterAssignment::fof() const {
    FoFVector out;
    for (std::uint32_t s : sizes) out.add_cluster(s);
    return out;
}

void ClusterAssignment::validate() const {
    std::uint32_t seen = 0;
    std::vector<std::uint64_t> tally(sizes.size(), 0);
    for (std::uint32_t z : labels) {
        if (z == 0 || z > seen + 1 || z > sizes.size())
            throw std::invalid_argument("assignment labels not in canonical order");
        if (z == seen + 1) ++seen;
        ++tally[z - 1];
    }
    if (seen != sizes.size())
        throw std::invalid_argument("assignment has unused cluster slots");
    for (std::size_t k = 0; k < sizes.size(); ++k)
        if (tally[k] != sizes[k])
            throw std::invalid_argument("assignment sizes disagree with labels");
}

double GnbpParams::psi() const { return exposure_factor(a, p); }

double GnbpParams::log_psi() const { return log_exposure_factor(a, p); }

double GnbpParams::log_new_weight() const { return std::log(gamma0) - a * std::log(p); }

void GnbpParams::validate() const {
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
        throw std::domain_error("gnbp params: gamma0 must be positive and finite");
    if (!(a < 1.0)) throw std::domain_error("gnbp params: discount must satisfy a < 1");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("gnbp params: p must lie in (0,1)");
}

}  // namespace fof
