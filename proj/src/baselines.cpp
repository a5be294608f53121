#include "fof/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fof/numerics.hpp"

namespace fof {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double tail_log_likelihood(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& tail,
                           double alpha, std::uint32_t i_min) {
    double lz = std::log(hurwitz_zeta(alpha, static_cast<double>(i_min)));
    double out = 0.0;
    for (const auto& [i, m] : tail)
        out -= static_cast<double>(m) * (lz + alpha * std::log(static_cast<double>(i)));
    return out;
}

// d/d alpha of hurwitz_zeta, same explicit-sum plus Euler-Maclaurin layout
double hurwitz_zeta_dalpha(double alpha, double q) {
    constexpr int kExplicit = 64;
    double s = 0.0;
    for (int j = 0; j < kExplicit; ++j) {
        double x = q + j;
        s += std::log(x) * std::pow(x, -alpha);
    }
    double nn = q + kExplicit;
    double t = std::pow(nn, -alpha);
    double ln_n = std::log(nn);
    s += t * nn * (ln_n / (alpha - 1.0) + 1.0 / ((alpha - 1.0) * (alpha - 1.0)));
    s += 0.5 * t * ln_n;
    s += t / nn * (alpha * ln_n - 1.0) / 12.0;
    return -s;
}

double tail_gradient(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& tail,
                     double alpha, std::uint32_t i_min) {
    double q = static_cast<double>(i_min);
    double ratio = hurwitz_zeta_dalpha(alpha, q) / hurwitz_zeta(alpha, q);
    double out = 0.0;
    for (const auto& [i, m] : tail)
        out -= static_cast<double>(m) * (ratio + std::log(static_cast<double>(i)));
    return out;
}

double maximize_alpha(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& tail,
                      std::uint32_t i_min) {
    // golden-section search; the zeta likelihood is concave in alpha
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = 1.01, hi = 6.0;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = tail_log_likelihood(tail, x1, i_min);
    double f2 = tail_log_likelihood(tail, x2, i_min);
    while (hi - lo > 1e-7) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = tail_log_likelihood(tail, x2, i_min);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = tail_log_likelihood(tail, x1, i_min);
        }
    }
    // Newton polish on the analytic gradient pins the stationary point far
    // below the resolution golden section can reach on function values
    double alpha = 0.5 * (lo + hi);
    for (int it = 0; it < 8; ++it) {
        if (alpha <= 1.011 || alpha >= 5.999) break;
        const double h = 1e-4;
        double g = tail_gradient(tail, alpha, i_min);
        double curep = tail_gradient(tail, alpha + h, i_min);
        double curem = tail_gradient(tail, alpha - h, i_min);
        double gg = (curep - curem) / (2.0 * h);
        if (!(gg < 0.0)) break;
        double step = g / gg;
        if (std::fabs(step) > 0.1) step = step > 0 ? 0.1 : -0.1;
        alpha -= step;
        if (std::fabs(step) < 1e-13) break;
    }
    return std::min(std::max(alpha, 1.01), 6.0);
}

double ks_distance(const std::vector<std::pair<std::uint32_t, std::uint64_t>>& tail,
                   double alpha, std::uint32_t i_min) {
    double total = 0.0;
    for (const auto& [i, m] : tail) total += static_cast<double>(m);
    const double z0 = hurwitz_zeta(alpha, static_cast<double>(i_min));
    double cum = 0.0;
    double worst = 0.0;
    for (const auto& [i, m] : tail) {
        cum += static_cast<double>(m);
        double emp = cum / total;
        double fit = 1.0 - hurwitz_zeta(alpha, static_cast<double>(i) + 1.0) / z0;
        worst = std::max(worst, std::fabs(emp - fit));
    }
    return worst;
}

// least-squares slope of {(ln i, ln m_i)}
bool ols_slope(const std::vector<std::pair<double, double>>& pts, double* slope) {
    if (pts.size() < 2) return false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double nn = static_cast<double>(pts.size());
    double var = sxx - sx * sx / nn;
    if (var <= 0.0) return false;
    *slope = (sxy - sx * sy / nn) / var;
    return true;
}

}  // namespace

PowerLawFit fit_powerlaw_tail(const FoFVector& fof) {
    if (fof.counts.empty()) throw std::domain_error("powerlaw fit: empty FoF vector");

    std::vector<std::pair<std::uint32_t, std::uint64_t>> pts(fof.counts.begin(),
                                                             fof.counts.end());
    bool found = false;
    PowerLawFit best;
    best.ks_distance = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c + 2 <= pts.size(); ++c) {
        std::uint32_t i_min = pts[c].first;
        std::vector<std::pair<std::uint32_t, std::uint64_t>> tail(pts.begin() + c,
                                                                  pts.end());
        double alpha = maximize_alpha(tail, i_min);
        double d = ks_distance(tail, alpha, i_min);
        if (d < best.ks_distance) {
            best.i_min = i_min;
            best.alpha = alpha;
            best.ks_distance = d;
            found = true;
        }
    }
    if (!found) throw std::domain_error("powerlaw fit: fewer than 2 distinct tail sizes");

    // head slope over sizes below the cutoff
    std::vector<std::pair<double, double>> head;
    for (const auto& [i, m] : pts)
        if (i < best.i_min && m >= 1)
            head.emplace_back(std::log(static_cast<double>(i)),
                              std::log(static_cast<double>(m)));
    double slope;
    best.alpha_h = ols_slope(head, &slope) ? -slope : kNaN;

    // intercepts as mean residuals against the fixed slopes
    if (!head.empty() && !std::isnan(best.alpha_h)) {
        double s = 0.0;
        for (const auto& [x, y] : head) s += y + best.alpha_h * x;
        best.head_intercept = s / static_cast<double>(head.size());
    } else {
        best.head_intercept = kNaN;
    }
    double s = 0.0;
    std::size_t cnt = 0;
    for (const auto& [i, m] : pts)
        if (i >= best.i_min && m >= 3) {
            s += std::log(static_cast<double>(m)) +
                 best.alpha * std::log(static_cast<double>(i));
            ++cnt;
        }
    best.tail_intercept = cnt > 0 ? s / static_cast<double>(cnt) : kNaN;
    return best;
}

LsRefit ls_refit_baseline(const FoFVector& sample_fof, const FoFVector& population_fof) {
    return ls_refit_with(fit_powerlaw_tail(sample_fof), population_fof);
}

LsRefit ls_refit_with(const PowerLawFit& sample_fit, const FoFVector& population_fof) {
    if (population_fof.counts.empty())
        throw std::domain_error("ls refit: empty population FoF");
    LsRefit out;
    out.sample_fit = sample_fit;
    const std::uint32_t i_min = out.sample_fit.i_min;
    const double alpha = out.sample_fit.alpha;
    const double alpha_h = out.sample_fit.alpha_h;

    double head_c = 0.0, tail_c = 0.0;
    std::size_t head_n = 0, tail_n = 0;
    for (const auto& [i, m] : population_fof.counts) {
        double li = std::log(static_cast<double>(i));
        double lm = std::log(static_cast<double>(m));
        if (i < i_min && m >= 1 && !std::isnan(alpha_h)) {
            head_c += lm + alpha_h * li;
            ++head_n;
        }
        if (i >= i_min && m >= 3) {
            tail_c += lm + alpha * li;
            ++tail_n;
        }
    }
    if (head_n == 0 && tail_n == 0)
        throw std::domain_error("ls refit: both refit index sets are empty");
    out.single_line = head_n == 0 || tail_n == 0;
    if (head_n > 0) head_c /= static_cast<double>(head_n);
    if (tail_n > 0) tail_c /= static_cast<double>(tail_n);

    const std::uint32_t max_size = population_fof.counts.rbegin()->first;
    for (std::uint32_t i = 1; i <= max_size; ++i) {
        double li = std::log(static_cast<double>(i));
        bool use_head = i < i_min;
        if (head_n == 0) use_head = false;
        if (tail_n == 0) use_head = true;
        double v = use_head ? head_c - alpha_h * li : tail_c - alpha * li;
        out.predicted[i] = std::exp(v);
    }
    return out;
}

double rmse(const FoFVector& pop, const std::map<std::uint32_t, double>& pred) {
    double sum = 0.0;
    std::size_t cnt = 0;
    for (const auto& [i, m] : pop.counts) {
        if (i > 100 || m == 0) continue;
        auto it = pred.find(i);
        double phat = it == pred.end() ? 0.0 : it->second;
        phat = std::max(phat, 1e-12);
        double d = std::log(static_cast<double>(m)) - std::log(phat);
        sum += d * d;
        ++cnt;
    }
    return cnt == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(cnt));
}

double chi_squared(const FoFVector& pop, const std::map<std::uint32_t, double>& pred) {
    double head = 0.0;
    for (std::uint32_t i = 1; i <= 49; ++i) {
        auto pit = pop.counts.find(i);
        double m = pit == pop.counts.end() ? 0.0 : static_cast<double>(pit->second);
        auto qit = pred.find(i);
        double mh = qit == pred.end() ? 0.0 : qit->second;
        if (m == 0.0 && mh == 0.0) continue;
        double d = m - mh;
        head += d * d / std::max(mh, 1e-8);
    }
    double tm = 0.0, tp = 0.0;
    for (const auto& [i, m] : pop.counts)
        if (i >= 50) tm += static_cast<double>(m);
    for (const auto& [i, v] : pred)
        if (i >= 50) tp += v;
    if (tm == 0.0 && tp == 0.0) return head;
    double d = tm - tp;
    return head + d * d / std::max(tp, 1e-8);
}

}  // namespace fof
