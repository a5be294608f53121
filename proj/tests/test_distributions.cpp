#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fof/distributions.hpp"
#include "fof/numerics.hpp"
#include "fof/rng.hpp"
#include "oracles.hpp"

using namespace fof;

TEST_CASE("gnb pmf hand values") {
    GnbpParams params{2.0, 0.5, 0.5};
    // n = 0: only the l = 0 term survives
    CHECK(std::exp(gnb_log_pmf(0, params)) ==
          doctest::Approx(std::exp(-2.0 * params.psi())).epsilon(1e-13));
    CHECK(std::exp(gnb_log_pmf(0, params)) == doctest::Approx(0.19069).epsilon(1e-4));

    // a = 0 branch is NB(gamma0, p)
    GnbpParams nb{1.0, 0.0, 0.5};
    CHECK(std::exp(gnb_log_pmf(2, nb)) == doctest::Approx(0.125).epsilon(1e-13));
}

TEST_CASE("gnb pmf normalizes") {
    GnbpParams params{1.0, 0.5, 0.3};
    double total = 0.0;
    for (std::uint64_t n = 0; n <= 300; ++n) total += std::exp(gnb_log_pmf(n, params));
    CHECK(std::fabs(total - 1.0) < 1e-12);
}

TEST_CASE("gnb pmf is continuous at a = 0") {
    GnbpParams near_zero{1.3, 1e-6, 0.4};
    GnbpParams at_zero{1.3, 0.0, 0.4};
    for (std::uint64_t n = 0; n <= 50; ++n)
        CHECK(std::fabs(std::exp(gnb_log_pmf(n, near_zero)) -
                        std::exp(gnb_log_pmf(n, at_zero))) < 1e-4);
}

TEST_CASE("tnb pmf values and normalization") {
    // a -> 0 is the logarithmic distribution
    CHECK(tnb_log_pmf(1, 0.0, 0.5) ==
          doctest::Approx(std::log(0.5 / std::log(2.0))).epsilon(1e-13));

    double total = 0.0;
    for (std::uint64_t u = 1; u <= 400; ++u) total += std::exp(tnb_log_pmf(u, 0.5, 0.5));
    CHECK(std::fabs(total - 1.0) < 1e-12);

    // ratio of the FoF rates with the gamma0 factor cancelled
    GnbpParams params{1.0, 0.5, 0.5};
    double sum = 0.0;
    for (std::uint32_t i = 1; i <= 400; ++i) {
        (void)i;
    }
    CHECK(std::exp(tnb_log_pmf(1, 0.5, 0.5)) ==
          doctest::Approx(0.8535534).epsilon(1e-6));
    CHECK_THROWS_AS(tnb_log_pmf(0, 0.5, 0.5), std::domain_error);
    (void)params;
    (void)sum;
}

TEST_CASE("tnb sampler matches the analytic pmf") {
    TnbSampler sampler(0.5, 0.5);
    RngStream rng(311);
    const int n = 1000000;
    std::vector<std::uint64_t> hist(21, 0);
    for (int i = 0; i < n; ++i) {
        std::uint64_t u = sampler(rng);
        if (u <= 20) ++hist[u];
    }
    for (std::uint64_t u = 1; u <= 20; ++u) {
        double p = std::exp(tnb_log_pmf(u, 0.5, 0.5));
        double se = std::sqrt(p * (1 - p) / n);
        CHECK(std::fabs(static_cast<double>(hist[u]) / n - p) <= 4.0 * se + 1e-9);
    }
}

TEST_CASE("tnb sampler degenerate and logarithmic limits") {
    TnbSampler tiny(0.5, 1e-6);
    RngStream rng(312);
    bool all_ones = true;
    for (int i = 0; i < 100000; ++i)
        if (tiny(rng) != 1) all_ones = false;
    CHECK(all_ones);

    TnbSampler log_dist(0.0, 0.5);
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += static_cast<double>(log_dist(rng));
    double mean = 0.5 / (0.5 * std::log(2.0));  // p / ((1-p)(-ln(1-p)))
    CHECK(std::fabs(sum / n - mean) < 0.01);
}

TEST_CASE("compound identity: poisson many tnb sizes reproduce the gnb pmf") {
    GnbpParams params{1.0, 0.5, 0.5};
    RngStream rng(313);
    TnbSampler size(0.5, 0.5);
    const int reps = 1000000;
    std::vector<std::uint64_t> hist(16, 0);
    for (int r = 0; r < reps; ++r) {
        std::uint64_t l = rng.poisson(params.gamma0 * params.psi());
        std::uint64_t n = 0;
        for (std::uint64_t k = 0; k < l; ++k) n += size(rng);
        if (n <= 15) ++hist[n];
    }
    for (std::uint64_t n = 0; n <= 15; ++n) {
        double p = std::exp(gnb_log_pmf(n, params));
        double se = std::sqrt(p * (1 - p) / reps);
        CHECK(std::fabs(static_cast<double>(hist[n]) / reps - p) <= 4.0 * se + 1e-9);
    }
}

TEST_CASE("asymptotic laws per discount regime") {
    GnbpParams pos{1.0, 0.5, 0.5};
    ReferenceLaw count = cluster_count_law(pos);
    CHECK(count.kind == ReferenceLaw::Kind::shifted_poisson);
    CHECK(count.rate == doctest::Approx(2.8284271).epsilon(1e-7));

    GnbpParams zero{3.0, 0.0, 0.5};
    ReferenceLaw lzero = cluster_count_law(zero);
    CHECK(lzero.kind == ReferenceLaw::Kind::log_scaling);
    CHECK(lzero.limit == doctest::Approx(3.0));
    ReferenceLaw m2 = cluster_size_count_law(2, zero);
    CHECK(m2.kind == ReferenceLaw::Kind::poisson);
    CHECK(m2.rate == doctest::Approx(1.5).epsilon(1e-12));

    GnbpParams neg{1.0, -1.0, 0.5};
    ReferenceLaw lneg = cluster_count_law(neg);
    CHECK(lneg.kind == ReferenceLaw::Kind::power_scaling);
    CHECK(lneg.exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lneg.limit == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));

    CHECK_THROWS_AS(cluster_count_law(GnbpParams{1.0, -0.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(cluster_count_law(GnbpParams{1.0, -1.5, 0.5}), std::domain_error);
    CHECK_THROWS_AS(cluster_size_count_law(1, GnbpParams{1.0, -0.5, 0.5}),
                    std::domain_error);
}

TEST_CASE("gnbp params validation") {
    GnbpParams bad_gamma{-1.0, 0.0, 0.5};
    GnbpParams bad_a{1.0, 1.0, 0.5};
    GnbpParams bad_p{1.0, 0.0, 1.0};
    GnbpParams fine{1.0, -5.0, 0.5};
    CHECK_THROWS_AS(bad_gamma.validate(), std::domain_error);
    CHECK_THROWS_AS(bad_a.validate(), std::domain_error);
    CHECK_THROWS_AS(bad_p.validate(), std::domain_error);
    CHECK_NOTHROW(fine.validate());
}
