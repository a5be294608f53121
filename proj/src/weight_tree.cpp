#include "fof/weight_tree.hpp"

namespace fof {

void WeightTree::assign(std::span<const double> weights) {
    tree_.assign(weights.begin(), weights.end());
    total_ = 0.0;
    for (double w : weights) total_ += w;
    // in-place Fenwick construction
    for (std::size_t i = 1; i <= tree_.size(); ++i) {
        std::size_t parent = i + (i & (0 - i));
        if (parent <= tree_.size()) tree_[parent - 1] += tree_[i - 1];
    }
    top_ = 1;
    while ((top_ << 1) <= tree_.size()) top_ <<= 1;
}

void WeightTree::push_back(double w) {
    tree_.push_back(w);
    std::size_t i = tree_.size();
    for (std::size_t k = 1; k < (i & (0 - i)); k <<= 1) tree_[i - 1] += tree_[i - 1 - k];
    total_ += w;
    while ((top_ << 1) <= tree_.size()) top_ <<= 1;
    if (top_ == 0) top_ = 1;
}

void WeightTree::add(std::size_t i, double delta) {
    total_ += delta;
    for (std::size_t j = i + 1; j <= tree_.size(); j += j & (0 - j))
        tree_[j - 1] += delta;
}

std::size_t WeightTree::sample(double u) const {
    std::size_t idx = 0;
    for (std::size_t mask = top_; mask > 0; mask >>= 1) {
        std::size_t next = idx + mask;
        if (next <= tree_.size() && tree_[next - 1] <= u) {
            u -= tree_[next - 1];
            idx = next;
        }
    }
    // a draw numerically at or past the total clamps to the last index
    return idx < tree_.size() ? idx : tree_.size() - 1;
}

}  // namespace fof
