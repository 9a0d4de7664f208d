#pragma once

#include <cstdint>

namespace shipplan {

// SplitMix64. Chosen over std:: engines because its output is pinned by the
// algorithm itself, while uniform_int_distribution is implementation-defined;
// generated instances must be byte-identical across platforms and releases.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], multiply-shift bounded.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = uint64_t(hi - lo) + 1;
        return lo + int64_t((unsigned __int128)(next()) * span >> 64);
    }

    // Uniform double in [lo, hi) with 53-bit resolution.
    double uniform_real(double lo, double hi) {
        double u = double(next() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

  private:
    uint64_t state_;
};

// Derives an independent stream per sampling dimension so that adding
// products or edges never perturbs draws made by the other dimensions.
inline SplitMix64 stream(uint64_t seed, uint64_t dimension_tag) {
    SplitMix64 mixer(seed ^ (0x6a09e667f3bcc909ULL * (dimension_tag + 1)));
    return SplitMix64(mixer.next());
}

namespace stream_tag {
constexpr uint64_t weights = 1;
constexpr uint64_t volumes = 2;
constexpr uint64_t timing = 3;
constexpr uint64_t destinations = 4;
constexpr uint64_t network = 5;
}  // namespace stream_tag

}  // namespace shipplan
