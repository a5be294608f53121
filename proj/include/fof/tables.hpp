#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fof/types.hpp"

// Triangular log-space tables.  Entries grow past the double range near
// n = 170 in linear space, so everything is kept as logarithms; every
// recursion coefficient is strictly positive for a < 1, hence no sign
// tracking.  Construction is O(n^2) and refused above the cap.

namespace fof {

inline constexpr std::uint32_t kDefaultTableCap = 4096;

struct TableCapError : std::length_error {
    using std::length_error::length_error;
};

// ln S_a(n,l) for 1 <= l <= n <= n_max, built by the forward recursion
// S_a(n+1,l) = (n - a l) S_a(n,l) + S_a(n,l-1) from S_a(1,1) = 1.
class StirlingTable {
  public:
    StirlingTable(double a, std::uint32_t n_max, std::uint32_t cap = kDefaultTableCap);

    double log_at(std::uint32_t n, std::uint32_t l) const {
        return entries_[row_offset(n) + (l - 1)];
    }
    double discount() const { return a_; }
    std::uint32_t n_max() const { return n_max_; }

    void dump(std::ostream& os) const;
    static StirlingTable load(std::istream& is);

  private:
    StirlingTable() = default;
    static std::size_t row_offset(std::uint32_t n) {
        return static_cast<std::size_t>(n - 1) * n / 2;
    }
    double a_ = 0.0;
    std::uint32_t n_max_ = 0;
    std::vector<double> entries_;
};

// ln R_{n,gamma0,a,p}(i,j) for 1 <= j <= i <= n, built backward from
// R(n,.) = 1 by R(i,j) = R(i+1,j)(i - a j) + R(i+1,j+1) gamma0 p^-a.
class CompletionTable {
  public:
    CompletionTable(const GnbpParams& params, std::uint32_t n,
                    std::uint32_t cap = kDefaultTableCap);

    double log_at(std::uint32_t i, std::uint32_t j) const {
        return entries_[row_offset(i) + (j - 1)];
    }
    const GnbpParams& params() const { return params_; }
    std::uint32_t population_size() const { return n_; }

    void dump(std::ostream& os) const;
    static CompletionTable load(std::istream& is);

  private:
    CompletionTable() = default;
    static std::size_t row_offset(std::uint32_t i) {
        return static_cast<std::size_t>(i - 1) * i / 2;
    }
    GnbpParams params_;
    std::uint32_t n_ = 0;
    std::vector<double> entries_;
};

// ln sum_{l=0..n} gamma0^l p^(-a l) S_a(n,l).  Computed from the completion
// table as ln(gamma0 p^-a) + ln R(1,1); debug builds cross-check the
// Stirling-sum route to 1e-10 relative.
double log_normalizer(std::uint32_t n, const GnbpParams& params,
                      std::uint32_t cap = kDefaultTableCap);
double log_normalizer_from_s(const StirlingTable& table, std::uint32_t n,
                             const GnbpParams& params);
double log_normalizer_from_r(const CompletionTable& table);

// Cache-aware builders: with FOF_CACHE_DIR set, tables are dumped to and
// reloaded from that directory keyed on their parameters.
StirlingTable stirling_table_cached(double a, std::uint32_t n_max,
                                    std::uint32_t cap = kDefaultTableCap);
CompletionTable completion_table_cached(const GnbpParams& params, std::uint32_t n,
                                        std::uint32_t cap = kDefaultTableCap);

}  // namespace fof
