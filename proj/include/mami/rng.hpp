#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "mami/cmat.hpp"

namespace mami::rng {

// splitmix64 step; cheap, well-mixed seed derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives a child seed from a base seed and a path of indices. Used to give
// every independent random consumer (channel block, symbol noise, data
// stream, sweep point) its own stream, so results do not depend on
// evaluation order.
inline std::uint64_t derive(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
    return s;
}

// Stream component tags for derive().
enum Purpose : std::uint64_t {
    kChannel = 1,
    kNoise = 2,
    kData = 3,
    kHardware = 4,
    kEvolve = 5,
    kSweepPoint = 6,
};

class Stream {
  public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return uni_(gen_); }
    double gauss() { return normal_(gen_); }

    // circularly-symmetric complex Gaussian, E|x|^2 = 1
    cplx cgauss() {
        return {normal_(gen_) * kInvSqrt2, normal_(gen_) * kInvSqrt2};
    }

    std::uint64_t bits64() { return gen_(); }
    bool bit() { return (gen_() >> 32) & 1u; }

  private:
    static constexpr double kInvSqrt2 = 0.70710678118654752440;
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

}  // namespace mami::rng
