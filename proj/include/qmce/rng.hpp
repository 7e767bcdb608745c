#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>

namespace qmce {

// Single pseudorandom generator for the whole artifact. The engine is
// std::mt19937_64, whose output sequence the standard pins bit-exactly;
// bounded and real-valued draws are implemented here instead of through
// std::*_distribution so that equal seeds give equal results on every
// standard library.
class Rng {
  public:
    static constexpr const char* kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // Unbiased draw from [0, n) by masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
        for (;;) {
            const std::uint64_t v = eng_() & mask;
            if (v < n) return v;
        }
    }

    bool bit() { return (eng_() >> 63) != 0; }

    // 53-bit uniform in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller; second sample of each pair is cached.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // Deterministic sub-seed for task `stream` of a master seed, so per-column
    // or per-trial results do not depend on processing order (splitmix64 mix).
    static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qmce
