#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fof/tables.hpp"
#include "oracles.hpp"

using namespace fof;

namespace {

bool log_close(double lhs, double rhs, double tol) {
    return std::fabs(lhs - rhs) <= tol * std::max(1.0, std::fabs(rhs));
}

}  // namespace

TEST_CASE("stirling table boundary rows") {
    for (double a : {-2.0, -0.5, 0.0, 0.5, 0.9}) {
        StirlingTable t(a, 24);
        for (std::uint32_t n = 1; n <= 24; ++n) {
            CHECK(t.log_at(n, n) == 0.0);  // S_a(n,n) = 1 exactly
            // S_a(n,1) = prod_{j<n} (j-a)
            double expect = 0.0;
            for (std::uint32_t j = 1; j < n; ++j) expect += std::log(j - a);
            CHECK(log_close(t.log_at(n, 1), expect, 1e-13));
        }
    }
}

TEST_CASE("stirling known small values") {
    StirlingTable t0(0.0, 8);
    // unsigned Stirling numbers of the first kind at a = 0
    CHECK(std::exp(t0.log_at(3, 2)) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::exp(t0.log_at(4, 2)) == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(std::exp(t0.log_at(5, 3)) == doctest::Approx(35.0).epsilon(1e-12));

    StirlingTable th(0.5, 8);
    CHECK(std::exp(th.log_at(3, 2)) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("stirling recursion equals the composition-sum definition") {
    for (double a : {-1.5, -0.5, 0.0, 0.25, 0.5, 0.9}) {
        StirlingTable t(a, 9);
        for (std::uint32_t n = 1; n <= 9; ++n)
            for (std::uint32_t l = 1; l <= n; ++l) {
                double brute = oracle::stirling_bruteforce(n, l, a);
                CHECK(log_close(t.log_at(n, l), std::log(brute), 1e-10));
            }
    }
}

TEST_CASE("stirling recursion matches the alternating-sum form") {
    for (double a : {0.25, 0.5}) {
        StirlingTable t(a, 12);
        for (std::uint32_t n = 1; n <= 12; ++n)
            for (std::uint32_t l = 1; l <= n; ++l) {
                double alt = oracle::stirling_alternating(n, l, a);
                double rec = std::exp(t.log_at(n, l));
                CHECK(std::fabs(alt - rec) <= 1e-6 * std::max(1.0, rec));
            }
    }
}

TEST_CASE("stirling recurrence holds entrywise in log space") {
    StirlingTable t(0.7, 64);
    for (std::uint32_t n = 2; n <= 63; ++n)
        for (std::uint32_t l = 2; l <= n; ++l) {
            double lhs = t.log_at(n + 1, l);
            double rhs = std::log((n - 0.7 * l) * std::exp(t.log_at(n, l) - lhs) +
                                  std::exp(t.log_at(n, l - 1) - lhs)) +
                         lhs;
            CHECK(log_close(lhs, rhs, 1e-12));
        }
}

TEST_CASE("completion table boundaries and hand value") {
    GnbpParams params{2.0, 0.5, 0.5};
    CompletionTable t(params, 2);
    CHECK(t.log_at(2, 1) == 0.0);
    CHECK(t.log_at(2, 2) == 0.0);
    // R(1,1) = (1 - 0.5) + 2 * 2^(1/2)
    double expect = 0.5 + 2.0 * std::sqrt(2.0);
    CHECK(std::exp(t.log_at(1, 1)) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("completion recurrence at a = 0 drops the j term") {
    GnbpParams params{1.7, 0.0, 0.4};
    CompletionTable t(params, 12);
    for (std::uint32_t i = 1; i < 12; ++i)
        for (std::uint32_t j = 1; j + 1 <= i; ++j) {
            // first term independent of j at a = 0
            double lhs = std::exp(t.log_at(i, j) - t.log_at(i + 1, j));
            double rhs = static_cast<double>(i) +
                         1.7 * std::exp(t.log_at(i + 1, j + 1) - t.log_at(i + 1, j));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
}

TEST_CASE("normalizer identity between the two routes") {
    for (double a : {-2.0, -1.0, -0.5, 0.0, 0.25, 0.5, 0.9})
        for (double gamma0 : {0.5, 2.0})
            for (double p : {0.2, 0.7}) {
                GnbpParams params{gamma0, a, p};
                StirlingTable s(a, 200);
                for (std::uint32_t n : {1u, 2u, 5u, 17u, 64u, 200u}) {
                    CompletionTable r(params, n);
                    double via_s = log_normalizer_from_s(s, n, params);
                    double via_r = log_normalizer_from_r(r);
                    CHECK(log_close(via_r, via_s, 1e-10));
                }
            }
}

TEST_CASE("normalizer hand values") {
    GnbpParams params{2.0, 0.5, 0.5};
    CHECK(log_normalizer(2, params) ==
          doctest::Approx(std::log(2.0 * std::sqrt(2.0) * 0.5 + 8.0)).epsilon(1e-12));
    CHECK(log_normalizer(1, params) ==
          doctest::Approx(std::log(2.0 * std::sqrt(2.0))).epsilon(1e-12));
    CHECK(log_normalizer(0, params) == 0.0);
    // a = 0: sum of unsigned Stirling numbers 2 + 3 + 1 = 6
    GnbpParams crp{1.0, 0.0, 0.5};
    CHECK(log_normalizer(3, crp) == doctest::Approx(std::log(6.0)).epsilon(1e-12));
}

TEST_CASE("table cap is enforced") {
    CHECK_THROWS_AS(StirlingTable(0.5, 100, 64), TableCapError);
    GnbpParams params{1.0, 0.5, 0.5};
    CHECK_THROWS_AS(CompletionTable(params, 100, 64), TableCapError);
    CHECK_NOTHROW(StirlingTable(0.5, 100, 128));
}

TEST_CASE("table dump and load round-trip") {
    StirlingTable s(0.3, 40);
    std::stringstream buf;
    s.dump(buf);
    StirlingTable s2 = StirlingTable::load(buf);
    CHECK(s2.discount() == 0.3);
    CHECK(s2.n_max() == 40);
    for (std::uint32_t n = 1; n <= 40; n += 7)
        for (std::uint32_t l = 1; l <= n; ++l) CHECK(s.log_at(n, l) == s2.log_at(n, l));

    GnbpParams params{1.5, -0.5, 0.6};
    CompletionTable r(params, 33);
    std::stringstream buf2;
    r.dump(buf2);
    CompletionTable r2 = CompletionTable::load(buf2);
    CHECK(r2.population_size() == 33);
    CHECK(r2.params().gamma0 == 1.5);
    CHECK(r2.log_at(1, 1) == r.log_at(1, 1));

    std::stringstream bad("not a table");
    CHECK_THROWS(StirlingTable::load(bad));
}

TEST_CASE("cache directory round-trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "fof_cache_test";
    fs::create_directories(dir);
    setenv("FOF_CACHE_DIR", dir.c_str(), 1);
    GnbpParams params{1.0, 0.25, 0.5};
    CompletionTable fresh = completion_table_cached(params, 20);
    bool wrote = !fs::is_empty(dir);
    CompletionTable reloaded = completion_table_cached(params, 20);
    unsetenv("FOF_CACHE_DIR");
    CHECK(wrote);
    CHECK(fresh.log_at(1, 1) == reloaded.log_at(1, 1));
    fs::remove_all(dir);
}
