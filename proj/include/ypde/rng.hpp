#pragma once

#include <cstdint>

namespace ypde {

// Counter-based 64-bit generator "sm64ctr-v1".
//
// Stream layout: word k of stream s under seed c is
//   mix(mix(c + s * 0x9E3779B97F4A7C15 + k * 0xD1B54A32D192ED03))
// where mix is the SplitMix64 finalizer. Words are stateless in k, so seeds
// are portable across implementations and generation jobs can own disjoint
// streams derived from (seed, job index).
class CounterRng {
  public:
    CounterRng(uint64_t seed, uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    static uint64_t word(uint64_t seed, uint64_t stream, uint64_t k);

    uint64_t next_u64() { return word(seed_, stream_, counter_++); }

    // Uniform on (0, 1), never exactly 0 or 1.
    double next_uniform();

    // Standard normal via inverse CDF (Acklam's rational approximation with a
    // Halley refinement step); no rejection, hence cross-platform determinism.
    double next_gaussian();

    // Uniform integer in [0, n).
    uint64_t next_below(uint64_t n);

    uint64_t seed() const { return seed_; }
    uint64_t stream() const { return stream_; }

  private:
    uint64_t seed_;
    uint64_t stream_;
    uint64_t counter_ = 0;
};

// Inverse of the standard normal CDF.
double inverse_normal_cdf(double p);

}  // namespace ypde
