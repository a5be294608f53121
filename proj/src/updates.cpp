#include "updates.hpp"

#include <algorithm>

#include <cmath>
#include <stdexcept>

#include "fof/kernels.hpp"

namespace fof::detail {

double neg_gamma_psi(double gamma0, double a, double lp, double l1mp) {
    if (a == 0.0) return gamma0 * l1mp;
    double t = a * l1mp;
    if (t < 700.0) {
        double den = a * std::exp(a * lp);
        return -gamma0 * (-std::expm1(t) / den);
    }
    // (1-p)^a dominates; psi ~ exp(a ln((1-p)/p)) / (-a), a < 0 here
    double s = t - a * lp - std::log(-a);
    return -gamma0 * std::exp(s);
}

std::size_t sample_log_masses(std::span<const double> mass, std::span<double> scratch,
                              RngStream& rng) {
    const std::size_t m = mass.size();
    double hi = mass[0];
    for (std::size_t g = 1; g < m; ++g)
        if (mass[g] > hi) hi = mass[g];
    for (std::size_t g = 0; g < m; ++g) scratch[g] = mass[g] - hi;
    kern::vexp(scratch.subspan(0, m), scratch.subspan(0, m));
    double total = 0.0;
    for (std::size_t g = 0; g < m; ++g) total += scratch[g];
    double u = rng.next_double() * total;
    double acc = 0.0;
    for (std::size_t g = 0; g < m; ++g) {
        acc += scratch[g];
        if (u < acc) return g;
    }
    return m - 1;
}

GriddyGibbs::GriddyGibbs(std::uint32_t grid_points) : m_(grid_points) {
    if (m_ < 3) throw std::domain_error("griddy grid needs at least 3 points");
    const double denom = static_cast<double>(m_) + 1.0;
    a_grid_.resize(m_);
    lg1ma_.resize(m_);
    p_grid_.resize(m_);
    log_p_.resize(m_);
    log_1mp_.resize(m_);
    mass_.resize(m_);
    t1_.resize(m_);
    t2_.resize(m_);
    scratch_.resize(m_);
    neg_count_ = 0;
    for (std::uint32_t k = 1; k <= m_; ++k) {
        double atil = static_cast<double>(k) / denom;
        double a = 2.0 - 1.0 / atil;
        a_grid_[k - 1] = a;
        if (a < 0.0) neg_count_ = k;
        double pg = static_cast<double>(k) / denom;
        p_grid_[k - 1] = pg;
        log_p_[k - 1] = std::log(pg);
        log_1mp_[k - 1] = std::log1p(-pg);
        t1_[k - 1] = 1.0 - a;
    }
    kern::vlgamma(t1_, lg1ma_);
}

const std::vector<double>& GriddyGibbs::lgamma_row(std::uint32_t size) {
    auto it = rows_.find(size);
    if (it != rows_.end()) return it->second;
    if (rows_.size() >= 512) rows_.clear();  // bound the cache at ~40 MB
    std::vector<double> row(m_);
    for (std::uint32_t g = 0; g < m_; ++g)
        row[g] = static_cast<double>(size) - a_grid_[g];
    kern::vlgamma(row, row);
    return rows_.emplace(size, std::move(row)).first->second;
}

double GriddyGibbs::sample_a(const FoFVector& fof, std::uint64_t l, double gamma0,
                             double p, bool negative_only, RngStream& rng) {
    const std::size_t count = negative_only ? neg_count_ : m_;
    const double lp = std::log(p);
    const double l1mp = std::log1p(-p);
    const double dl = static_cast<double>(l);

    // -gamma0 psi(a_g, p): exp lanes that would overflow are redone stably
    for (std::size_t g = 0; g < count; ++g) t1_[g] = a_grid_[g] * l1mp;
    kern::vexp(std::span(t1_).subspan(0, count), std::span(t1_).subspan(0, count));
    for (std::size_t g = 0; g < count; ++g) t2_[g] = a_grid_[g] * lp;
    kern::vexp(std::span(t2_).subspan(0, count), std::span(t2_).subspan(0, count));
    for (std::size_t g = 0; g < count; ++g) {
        double a = a_grid_[g];
        double ngp;
        if (a == 0.0) {
            ngp = gamma0 * l1mp;
        } else if (a * l1mp >= 700.0 || a * lp >= 700.0) {
            ngp = neg_gamma_psi(gamma0, a, lp, l1mp);
        } else {
            ngp = -gamma0 * ((1.0 - t1_[g]) / (a * t2_[g]));
        }
        mass_[g] = ngp - a * dl * lp;
    }

    // cluster-size terms grouped by the FoF vector; size-1 clusters cancel
    double mult_ge2 = 0.0;
    for (const auto& [size, mult] : fof.counts) {
        if (size < 2) continue;
        mult_ge2 += static_cast<double>(mult);
        const std::vector<double>& row = lgamma_row(size);
        const double w = static_cast<double>(mult);
        for (std::size_t g = 0; g < count; ++g) mass_[g] += w * row[g];
    }
    if (mult_ge2 > 0.0)
        for (std::size_t g = 0; g < count; ++g) mass_[g] -= mult_ge2 * lg1ma_[g];

    std::size_t pick = sample_log_masses(std::span(mass_).subspan(0, count),
                                         std::span(scratch_).subspan(0, count), rng);
    return a_grid_[pick];
}

double GriddyGibbs::sample_p(std::uint64_t n, std::uint64_t l, double gamma0, double a,
                             RngStream& rng) {
    if (a == 0.0)
        throw std::logic_error("griddy sample_p: a = 0 has the exact beta update");
    const double coef = static_cast<double>(n) - a * static_cast<double>(l);
    for (std::uint32_t g = 0; g < m_; ++g) t1_[g] = a * log_1mp_[g];
    kern::vexp(t1_, t1_);
    for (std::uint32_t g = 0; g < m_; ++g) t2_[g] = a * log_p_[g];
    kern::vexp(t2_, t2_);
    for (std::uint32_t g = 0; g < m_; ++g) {
        double ngp;
        if (a * log_1mp_[g] >= 700.0 || a * log_p_[g] >= 700.0) {
            ngp = neg_gamma_psi(gamma0, a, log_p_[g], log_1mp_[g]);
        } else {
            ngp = -gamma0 * ((1.0 - t1_[g]) / (a * t2_[g]));
        }
        mass_[g] = ngp + coef * log_p_[g];
    }
    std::size_t pick = sample_log_masses(mass_, scratch_, rng);
    return p_grid_[pick];
}

void py_update(const FoFVector& fof, std::uint64_t n, std::uint64_t l, PyParams& params,
               double e0, double f0, RngStream& rng) {
    const double a = params.a;
    const double g0 = params.gamma0;

    // concentration: auxiliary x and the table indicators y_k
    double rate = f0;
    if (n >= 2) {
        double x = rng.beta(static_cast<double>(n) - 1.0, g0 + 1.0);
        rate = f0 - std::log1p(-x);
    }
    std::uint64_t sy = 0;
    for (std::uint64_t k = 1; k < l; ++k)
        if (rng.bernoulli(g0 / (g0 + static_cast<double>(k) * a))) ++sy;
    params.gamma0 =
        std::max(rng.gamma(e0 + static_cast<double>(sy), 1.0 / rate), 1e-300);

    // discount: per-seat indicators, batched over equal seat index j.
    // The j = 1 factor of each cluster of size >= 2 is (1-a) with certainty.
    std::uint64_t m1 = 0;
    auto it = fof.counts.find(1);
    if (it != fof.counts.end()) m1 = it->second;
    std::uint64_t nb = l - m1;

    // tail counts c_j = #clusters of size > j, walked over the sparse FoF
    std::uint64_t cj = l;
    std::uint32_t prev_size = 0;
    for (const auto& [size, mult] : fof.counts) {
        for (std::uint32_t j = std::max<std::uint32_t>(prev_size, 2); j < size; ++j) {
            // seats j with c_j clusters still containing them
            double q = (1.0 - a) / (static_cast<double>(j) - a);
            nb += rng.binomial(cj, q);
        }
        prev_size = size;
        cj -= mult;
    }

    double alpha = 1.0 + static_cast<double>(l - 1 - sy);
    double beta = 1.0 + static_cast<double>(nb);
    params.a = std::min(std::max(rng.beta(alpha, beta), 0.0), 1.0 - 1e-12);
}

double py_log_eppf_fof(const FoFVector& fof, const PyParams& params) {
    if (!(params.gamma0 > 0.0) || !(params.a >= 0.0 && params.a < 1.0))
        throw std::domain_error("pitman-yor params: gamma0 > 0 and a in [0,1) required");
    const double a = params.a;
    const double lg1a = std::lgamma(1.0 - a);
    double out = 0.0;
    std::uint64_t n = 0, l = 0;
    for (const auto& [size, mult] : fof.counts) {
        out += static_cast<double>(mult) *
               (std::lgamma(static_cast<double>(size) - a) - lg1a);
        n += std::uint64_t{size} * mult;
        l += mult;
    }
    out += std::lgamma(params.gamma0) - std::lgamma(static_cast<double>(n) + params.gamma0);
    for (std::uint64_t k = 0; k < l; ++k)
        out += std::log(params.gamma0 + static_cast<double>(k) * a);
    return out;
}

}  // namespace fof::detail
