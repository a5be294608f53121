#include "sweeper.hpp"

#include <cassert>
#include <stdexcept>

namespace fof::detail {

PartitionSweeper::PartitionSweeper(ClusterAssignment assign, std::size_t frozen_prefix,
                                   const SweepModel& model)
    : z_(std::move(assign)), frozen_(frozen_prefix), model_(model) {
    if (frozen_ > z_.n())
        throw std::invalid_argument("sweeper: frozen prefix longer than assignment");
    live_ = z_.cluster_count();
    relabel_and_rebuild();
}

void PartitionSweeper::set_model(const SweepModel& model) {
    bool discount_changed = model.discount != model_.discount;
    model_ = model;
    if (discount_changed) relabel_and_rebuild();
}

std::uint32_t PartitionSweeper::open_cluster() {
    if (!free_slots_.empty()) {
        std::uint32_t k = free_slots_.back();
        free_slots_.pop_back();
        tree_.add(k - 1, 1.0 - model_.discount);
        z_.sizes[k - 1] = 1;
        ++live_;
        return k;
    }
    z_.sizes.push_back(1);
    tree_.push_back(1.0 - model_.discount);
    ++live_;
    return static_cast<std::uint32_t>(z_.sizes.size());
}

void PartitionSweeper::init_suffix_sequential(std::uint64_t target_n, RngStream& rng) {
    if (target_n < frozen_) throw std::invalid_argument("sweeper: target below prefix");
    z_.labels.resize(frozen_);
    for (auto& s : z_.sizes) s = 0;
    for (std::size_t i = 0; i < frozen_; ++i) ++z_.sizes[z_.labels[i] - 1];
    relabel_and_rebuild();

    z_.labels.reserve(target_n);
    while (z_.labels.size() < target_n) {
        double w_new = model_.new_const + model_.new_per_cluster * static_cast<double>(live_);
        double u = rng.next_double() * (tree_.total() + w_new);
        std::uint32_t k;
        if (u >= tree_.total()) {
            k = open_cluster();
        } else {
            k = static_cast<std::uint32_t>(tree_.sample(u)) + 1;
            if (z_.sizes[k - 1] == 0) {
                // rounding pushed the draw into a reclaimed slot; it is free,
                // so opening the cluster there is the same event
                tree_.add(k - 1, 1.0 - model_.discount);
                z_.sizes[k - 1] = 1;
                ++live_;
            } else {
                ++z_.sizes[k - 1];
                tree_.add(k - 1, 1.0);
            }
        }
        z_.labels.push_back(k);
    }
    relabel_and_rebuild();
}

void PartitionSweeper::sweep(RngStream& rng) {
    const std::size_t n = z_.n();
    order_.resize(n - frozen_);
    for (std::size_t i = 0; i < order_.size(); ++i)
        order_[i] = static_cast<std::uint32_t>(frozen_ + i);
    for (std::size_t i = order_.size(); i > 1; --i) {
        std::size_t j = rng.below(i);
        std::swap(order_[i - 1], order_[j]);
    }

    for (std::uint32_t pos : order_) {
        std::uint32_t k = z_.labels[pos];
        std::uint32_t s = z_.sizes[k - 1];
        if (s == 1) {
            tree_.add(k - 1, -(1.0 - model_.discount));
            z_.sizes[k - 1] = 0;
            free_slots_.push_back(k);
            --live_;
        } else {
            tree_.add(k - 1, -1.0);
            z_.sizes[k - 1] = s - 1;
        }

        double w_new = model_.new_const + model_.new_per_cluster * static_cast<double>(live_);
        double u = rng.next_double() * (tree_.total() + w_new);
        std::uint32_t k2;
        if (u >= tree_.total()) {
            k2 = open_cluster();
        } else {
            k2 = static_cast<std::uint32_t>(tree_.sample(u)) + 1;
            if (z_.sizes[k2 - 1] == 0) {
                tree_.add(k2 - 1, 1.0 - model_.discount);
                z_.sizes[k2 - 1] = 1;
                ++live_;
            } else {
                ++z_.sizes[k2 - 1];
                tree_.add(k2 - 1, 1.0);
            }
        }
        z_.labels[pos] = k2;
    }
    relabel_and_rebuild();
}

void PartitionSweeper::relabel_and_rebuild() {
    remap_.assign(z_.sizes.size() + 1, 0);
    std::uint32_t next = 0;
    for (auto& z : z_.labels) {
        if (remap_[z] == 0) remap_[z] = ++next;
        z = remap_[z];
    }
    new_sizes_.assign(next, 0);
    for (std::uint32_t z : z_.labels) ++new_sizes_[z - 1];
    z_.sizes.assign(new_sizes_.begin(), new_sizes_.end());
    live_ = next;
    free_slots_.clear();

    weights_.resize(next);
    for (std::uint32_t k = 0; k < next; ++k)
        weights_[k] = static_cast<double>(z_.sizes[k]) - model_.discount;
    tree_.assign(weights_);
}

}  // namespace fof::detail
