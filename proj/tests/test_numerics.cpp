#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fof/numerics.hpp"

using namespace fof;

TEST_CASE("log_gamma on known points") {
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
    // Gamma(10) = 9! = 362880
    CHECK(log_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-13));
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("log_gamma recurrence over a wide range") {
    for (double x = 0.1; x <= 100.0; x += 0.37) {
        double lhs = log_gamma(x + 1.0) - log_gamma(x);
        double rhs = std::log(x);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("log_sum_exp basics") {
    std::vector<double> two_ones = {std::log(1.0), std::log(1.0)};
    CHECK(log_sum_exp(two_ones) == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    std::vector<double> with_zero = {kLogZero, std::log(3.0)};
    CHECK(log_sum_exp(with_zero) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

    std::vector<double> quarters = {std::log(0.25), std::log(0.5), std::log(0.125)};
    CHECK(log_sum_exp(quarters) == doctest::Approx(std::log(0.875)).epsilon(1e-14));

    CHECK(log_sum_exp({}) == kLogZero);
}

TEST_CASE("log_sum_exp is permutation invariant and monotone") {
    std::vector<double> v = {-3.0, 0.5, 2.0, -10.0};
    std::vector<double> w = {2.0, -10.0, -3.0, 0.5};
    CHECK(log_sum_exp(v) == doctest::Approx(log_sum_exp(w)).epsilon(1e-14));
    std::vector<double> bigger = v;
    bigger[1] += 0.3;
    CHECK(log_sum_exp(bigger) > log_sum_exp(v));
}

TEST_CASE("hurwitz zeta known values") {
    CHECK(hurwitz_zeta(2.0, 1.0) ==
          doctest::Approx(M_PI * M_PI / 6.0).epsilon(1e-12));
    CHECK(hurwitz_zeta(2.0, 2.0) ==
          doctest::Approx(M_PI * M_PI / 6.0 - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(hurwitz_zeta(1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(hurwitz_zeta(2.0, 0.5), std::domain_error);
}

TEST_CASE("hurwitz zeta against a brute-force partial sum") {
    // compensated direct summation with an integral tail bound
    double direct = 0.0, comp = 0.0;
    for (std::uint64_t j = 3; j < 10'000'000; ++j) {
        double term = std::pow(static_cast<double>(j), -2.5) - comp;
        double next = direct + term;
        comp = (next - direct) - term;
        direct = next;
    }
    double tail_lo = std::pow(1e7, -1.5) / 1.5;  // integral from 1e7
    double val = hurwitz_zeta(2.5, 3.0);
    CHECK(val > direct + tail_lo - 1e-12);
    CHECK(val < direct + tail_lo + std::pow(1e7, -2.5) + 1e-12);
    CHECK(val == doctest::Approx(direct + tail_lo).epsilon(1e-10));
}

TEST_CASE("hurwitz zeta shift identity") {
    for (double alpha : {1.5, 2.0, 3.0}) {
        for (int q = 1; q <= 100; ++q) {
            double lhs = hurwitz_zeta(alpha, q) - hurwitz_zeta(alpha, q + 1.0);
            double rhs = std::pow(static_cast<double>(q), -alpha);
            CHECK(std::fabs(lhs - rhs) <= 1e-10 * rhs);
        }
    }
}

TEST_CASE("exposure factor limits and values") {
    // (1 - (1-p)^a)/(a p^a) at a=0.5, p=0.5 equals 2(sqrt 2 - 1)
    CHECK(exposure_factor(0.5, 0.5) ==
          doctest::Approx(2.0 * (std::sqrt(2.0) - 1.0)).epsilon(1e-14));
    CHECK(exposure_factor(0.0, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    // continuity at a -> 0
    CHECK(exposure_factor(1e-9, 0.3) ==
          doctest::Approx(exposure_factor(0.0, 0.3)).epsilon(1e-6));
    CHECK(exposure_factor(-1.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    // deep-negative discounts: never NaN, log form stays finite
    double deep = exposure_factor(-350.0, 0.875);
    CHECK(std::isfinite(deep));
    CHECK(deep > 0.0);
    CHECK(log_exposure_factor(-350.0, 0.875) ==
          doctest::Approx(std::log(deep)).epsilon(1e-10));
    CHECK(!std::isnan(exposure_factor(-9998.0, 0.9)));
    CHECK(std::isfinite(log_exposure_factor(-9998.0, 0.9)));
    CHECK(log_exposure_factor(0.5, 0.5) ==
          doctest::Approx(std::log(exposure_factor(0.5, 0.5))).epsilon(1e-13));
}
