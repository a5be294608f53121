#include "fof/tables.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "fof/kernels.hpp"
#include "fof/numerics.hpp"

static_assert(std::endian::native == std::endian::little,
              "table files are little-endian; big-endian hosts are unsupported");

namespace fof {
namespace {

constexpr char kMagic[7] = {'F', 'O', 'F', 'T', 'B', 'L', '1'};

void check_cap(std::uint32_t n, std::uint32_t cap, const char* what) {
    if (n > cap) {
        std::ostringstream msg;
        msg << what << ": size " << n << " exceeds table cap " << cap;
        throw TableCapError(msg.str());
    }
}

template <typename T>
void write_raw(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw std::runtime_error("table load: truncated stream");
    return v;
}

void write_header(std::ostream& os, char kind, std::uint64_t n, double a, double gamma0,
                  double p) {
    os.write(kMagic, sizeof(kMagic));
    write_raw(os, kind);
    write_raw(os, n);
    write_raw(os, a);
    write_raw(os, gamma0);
    write_raw(os, p);
}

struct Header {
    char kind;
    std::uint64_t n;
    double a, gamma0, p;
};

Header read_header(std::istream& is) {
    char magic[sizeof(kMagic)];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw std::runtime_error("table load: bad magic");
    Header h{};
    h.kind = read_raw<char>(is);
    h.n = read_raw<std::uint64_t>(is);
    h.a = read_raw<double>(is);
    h.gamma0 = read_raw<double>(is);
    h.p = read_raw<double>(is);
    return h;
}

std::uint64_t mix_key(std::uint64_t x, std::uint64_t y) {
    x ^= y + 0x9E3779B97F4A7C15ULL + (x << 6) + (x >> 2);
    x *= 0xBF58476D1CE4E5B9ULL;
    return x ^ (x >> 29);
}

std::optional<std::filesystem::path> cache_path(char kind, std::uint64_t n, double a,
                                                double gamma0, double p) {
    const char* dir = std::getenv("FOF_CACHE_DIR");
    if (dir == nullptr || *dir == '\0') return std::nullopt;
    std::uint64_t key = mix_key(n, std::bit_cast<std::uint64_t>(a));
    key = mix_key(key, std::bit_cast<std::uint64_t>(gamma0));
    key = mix_key(key, std::bit_cast<std::uint64_t>(p));
    char name[64];
    std::snprintf(name, sizeof(name), "%c_%016llx.tbl", kind,
                  static_cast<unsigned long long>(key));
    return std::filesystem::path(dir) / name;
}

}  // namespace

StirlingTable::StirlingTable(double a, std::uint32_t n_max, std::uint32_t cap) {
    if (!(a < 1.0)) throw std::domain_error("stirling table: requires a < 1");
    if (n_max < 1) throw std::domain_error("stirling table: requires n_max >= 1");
    check_cap(n_max, cap, "stirling table");
    a_ = a;
    n_max_ = n_max;
    entries_.resize(row_offset(n_max) + n_max);
    entries_[0] = 0.0;  // S_a(1,1) = 1

    std::vector<double> coef(n_max), lhs(n_max);
    for (std::uint32_t n = 1; n < n_max; ++n) {
        const double* prev = entries_.data() + row_offset(n);
        double* next = entries_.data() + row_offset(n + 1);
        // coefficients n - a l for l = 1..n
        for (std::uint32_t l = 1; l <= n; ++l)
            coef[l - 1] = static_cast<double>(n) - a * l;
        kern::vlog({coef.data(), n}, {coef.data(), n});
        for (std::uint32_t l = 0; l < n; ++l) lhs[l] = coef[l] + prev[l];
        next[0] = lhs[0];  // S_a(n,0) = 0 leaves a single term at l = 1
        kern::active_backend().log_add_exp(lhs.data() + 1, prev, next + 1, n - 1);
        next[n] = 0.0;  // S_a(n+1,n+1) = 1
    }
}

CompletionTable::CompletionTable(const GnbpParams& params, std::uint32_t n,
                                 std::uint32_t cap) {
    params.validate();
    if (n < 1) throw std::domain_error("completion table: requires n >= 1");
    check_cap(n, cap, "completion table");
    params_ = params;
    n_ = n;
    entries_.resize(row_offset(n) + n);

    double* last = entries_.data() + row_offset(n);
    for (std::uint32_t j = 0; j < n; ++j) last[j] = 0.0;  // R(n,.) = 1

    const double lw = params.log_new_weight();
    std::vector<double> coef(n), lhs(n), rhs(n);
    for (std::uint32_t i = n - 1; i >= 1; --i) {
        const double* next = entries_.data() + row_offset(i + 1);
        double* row = entries_.data() + row_offset(i);
        for (std::uint32_t j = 1; j <= i; ++j)
            coef[j - 1] = static_cast<double>(i) - params.a * j;
        kern::vlog({coef.data(), i}, {coef.data(), i});
        for (std::uint32_t j = 0; j < i; ++j) {
            lhs[j] = coef[j] + next[j];
            rhs[j] = lw + next[j + 1];
        }
        kern::active_backend().log_add_exp(lhs.data(), rhs.data(), row, i);
    }
}

void StirlingTable::dump(std::ostream& os) const {
    write_header(os, 'S', n_max_, a_, 0.0, 0.0);
    os.write(reinterpret_cast<const char*>(entries_.data()),
             static_cast<std::streamsize>(entries_.size() * sizeof(double)));
}

StirlingTable StirlingTable::load(std::istream& is) {
    Header h = read_header(is);
    if (h.kind != 'S') throw std::runtime_error("table load: not a Stirling table");
    StirlingTable t;
    t.a_ = h.a;
    t.n_max_ = static_cast<std::uint32_t>(h.n);
    t.entries_.resize(row_offset(t.n_max_) + t.n_max_);
    is.read(reinterpret_cast<char*>(t.entries_.data()),
            static_cast<std::streamsize>(t.entries_.size() * sizeof(double)));
    if (!is) throw std::runtime_error("table load: truncated entries");
    return t;
}

void CompletionTable::dump(std::ostream& os) const {
    write_header(os, 'R', n_, params_.a, params_.gamma0, params_.p);
    os.write(reinterpret_cast<const char*>(entries_.data()),
             static_cast<std::streamsize>(entries_.size() * sizeof(double)));
}

CompletionTable CompletionTable::load(std::istream& is) {
    Header h = read_header(is);
    if (h.kind != 'R') throw std::runtime_error("table load: not a completion table");
    CompletionTable t;
    t.params_ = GnbpParams{h.gamma0, h.a, h.p};
    t.n_ = static_cast<std::uint32_t>(h.n);
    t.entries_.resize(row_offset(t.n_) + t.n_);
    is.read(reinterpret_cast<char*>(t.entries_.data()),
            static_cast<std::streamsize>(t.entries_.size() * sizeof(double)));
    if (!is) throw std::runtime_error("table load: truncated entries");
    return t;
}

double log_normalizer_from_s(const StirlingTable& table, std::uint32_t n,
                             const GnbpParams& params) {
    if (n == 0) return 0.0;
    const double lw = params.log_new_weight();
    std::vector<double> terms(n);
    for (std::uint32_t l = 1; l <= n; ++l)
        terms[l - 1] = l * lw + table.log_at(n, l);
    return log_sum_exp(terms);
}

double log_normalizer_from_r(const CompletionTable& table) {
    return table.params().log_new_weight() + table.log_at(1, 1);
}

double log_normalizer(std::uint32_t n, const GnbpParams& params, std::uint32_t cap) {
    if (n == 0) return 0.0;
    CompletionTable r(params, n, cap);
    double via_r = log_normalizer_from_r(r);
#ifndef NDEBUG
    StirlingTable s(params.a, n, cap);
    double via_s = log_normalizer_from_s(s, n, params);
    assert(std::fabs(via_r - via_s) <= 1e-10 * std::max(1.0, std::fabs(via_s)));
#endif
    return via_r;
}

StirlingTable stirling_table_cached(double a, std::uint32_t n_max, std::uint32_t cap) {
    auto path = cache_path('S', n_max, a, 0.0, 0.0);
    if (path) {
        std::ifstream in(*path, std::ios::binary);
        if (in) {
            StirlingTable t = StirlingTable::load(in);
            if (t.discount() == a && t.n_max() == n_max) return t;
        }
    }
    StirlingTable t(a, n_max, cap);
    if (path) {
        std::ofstream out(*path, std::ios::binary);
        if (out) t.dump(out);
    }
    return t;
}

CompletionTable completion_table_cached(const GnbpParams& params, std::uint32_t n,
                                        std::uint32_t cap) {
    auto path = cache_path('R', n, params.a, params.gamma0, params.p);
    if (path) {
        std::ifstream in(*path, std::ios::binary);
        if (in) {
            CompletionTable t = CompletionTable::load(in);
            const GnbpParams& q = t.params();
            if (q.a == params.a && q.gamma0 == params.gamma0 && q.p == params.p &&
                t.population_size() == n)
                return t;
        }
    }
    CompletionTable t(params, n, cap);
    if (path) {
        std::ofstream out(*path, std::ios::binary);
        if (out) t.dump(out);
    }
    return t;
}

}  // namespace fof
