#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fof/kernels.hpp"
#include "fof/rng.hpp"

using fof::kern::active_backend;
using fof::kern::Backend;
using fof::kern::scalar_backend;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// |x - y| <= tol * max(1, |y|)
bool close(double x, double y, double tol) {
    if (std::isinf(x) || std::isinf(y)) return x == y;
    return std::fabs(x - y) <= tol * std::max(1.0, std::fabs(y));
}

std::vector<double> random_in(double lo, double hi, std::size_t count,
                              std::uint64_t seed) {
    fof::RngStream rng(seed);
    std::vector<double> out(count);
    for (double& v : out) v = lo + (hi - lo) * rng.next_double();
    return out;
}

}  // namespace

TEST_CASE("active backend is usable and named") {
    const Backend& b = active_backend();
    CHECK(b.name != nullptr);
    double x = 1.0;
    double y;
    b.exp(&x, &y, 1);
    CHECK(close(y, std::exp(1.0), 1e-15));
}

TEST_CASE("vector exp matches scalar across ranges") {
    const Backend& v = active_backend();
    for (auto [lo, hi] : {std::pair{-5.0, 5.0}, {-700.0, 700.0}, {-0.01, 0.01}}) {
        auto xs = random_in(lo, hi, 1003, 42);
        std::vector<double> got(xs.size()), want(xs.size());
        v.exp(xs.data(), got.data(), xs.size());
        scalar_backend().exp(xs.data(), want.data(), xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i)
            CHECK(std::fabs(got[i] - want[i]) <= 2e-15 * std::max(want[i], 1e-300));
    }
}

TEST_CASE("vector exp handles clamps and infinities") {
    const Backend& v = active_backend();
    std::vector<double> xs = {-kInf, -800.0, 0.0, 710.0, kInf};
    std::vector<double> got(xs.size());
    v.exp(xs.data(), got.data(), xs.size());
    CHECK(got[0] == 0.0);
    CHECK(got[1] == 0.0);
    CHECK(got[2] == 1.0);
    CHECK(got[3] == kInf);
    CHECK(got[4] == kInf);
}

TEST_CASE("vector log matches scalar") {
    const Backend& v = active_backend();
    for (auto [lo, hi] :
         {std::pair{1e-300, 1.0}, {0.5, 2.0}, {1.0, 1e6}, {1e250, 1e300}}) {
        auto xs = random_in(lo, hi, 1003, 7);
        std::vector<double> got(xs.size()), want(xs.size());
        v.log(xs.data(), got.data(), xs.size());
        scalar_backend().log(xs.data(), want.data(), xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(close(got[i], want[i], 1e-14));
    }
    std::vector<double> edge = {0.0};
    std::vector<double> out(1);
    v.log(edge.data(), out.data(), 1);
    CHECK(out[0] == -kInf);
}

TEST_CASE("vector lgamma matches scalar on positive arguments") {
    const Backend& v = active_backend();
    for (auto [lo, hi] : {std::pair{1e-4, 1.0}, {0.5, 15.0}, {13.0, 100.0}, {100.0, 1e6}}) {
        auto xs = random_in(lo, hi, 1003, 99);
        std::vector<double> got(xs.size()), want(xs.size());
        v.lgamma(xs.data(), got.data(), xs.size());
        scalar_backend().lgamma(xs.data(), want.data(), xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) CHECK(close(got[i], want[i], 5e-13));
    }
}

TEST_CASE("log_add_exp agrees with scalar and handles log-zero") {
    const Backend& v = active_backend();
    auto xs = random_in(-50.0, 50.0, 1001, 3);
    auto ys = random_in(-50.0, 50.0, 1001, 4);
    xs[17] = -kInf;
    ys[17] = -3.0;
    xs[18] = -kInf;
    ys[18] = -kInf;
    std::vector<double> got(xs.size()), want(xs.size());
    v.log_add_exp(xs.data(), ys.data(), got.data(), xs.size());
    scalar_backend().log_add_exp(xs.data(), ys.data(), want.data(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(close(got[i], want[i], 1e-13));
    CHECK(got[17] == -3.0);
    CHECK(got[18] == -kInf);
}

TEST_CASE("log_sum_exp agrees with scalar and is exact on spikes") {
    const Backend& v = active_backend();
    auto xs = random_in(-30.0, 30.0, 997, 12);
    CHECK(close(v.log_sum_exp(xs.data(), xs.size()),
                scalar_backend().log_sum_exp(xs.data(), xs.size()), 1e-12));

    std::vector<double> spike = {-2000.0, 5.0, -1900.0};
    CHECK(v.log_sum_exp(spike.data(), spike.size()) == 5.0);
    CHECK(v.log_sum_exp(spike.data(), 0) == -kInf);
    std::vector<double> zeros = {-kInf, -kInf};
    CHECK(v.log_sum_exp(zeros.data(), zeros.size()) == -kInf);
}
