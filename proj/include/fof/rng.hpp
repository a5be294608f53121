#pragma once

#include <cstdint>

// Counter-based random stream (Philox4x32-10, Salmon et al. 2011).
// A stream is identified by (seed, stream id); equal identifiers produce
// equal draw sequences on every platform.  Streams are cheap to split for
// parallel chains and each instance is owned by a single thread.

namespace fof {

class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // uniform in [0, 1) with 53 random bits
    double next_double();
    // uniform integer in [0, n), n >= 1
    std::uint64_t below(std::uint64_t n);

    // derived stream for a child task; deterministic in (parent stream, child)
    RngStream split(std::uint64_t child) const;

    bool bernoulli(double p) { return next_double() < p; }
    double exponential();
    double normal();
    double gamma(double shape, double scale);
    double beta(double a, double b);
    std::uint64_t poisson(double lambda);
    std::uint64_t binomial(std::uint64_t n, double p);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int pos_ = 4;  // buffer exhausted
    double spare_normal_ = 0.0;
    bool has_spare_normal_ = false;
};

}  // namespace fof
