#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace hardylab {

/// Deterministic seeded generator. Sub-streams are derived from (seed, name,
/// index), so concurrent consumers never observe shared state and every
/// instance is reproducible from its logged parameters.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    static std::uint64_t mix(std::uint64_t seed, std::string_view name, std::uint64_t index) {
        std::uint64_t h = splitmix(seed);
        for (char c : name) h = splitmix(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
        return splitmix(h ^ index);
    }

    static Rng substream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
        return Rng(mix(seed, name, index));
    }

    double normal() { return normal_(eng_); }
    std::complex<double> cnormal() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }
    double uniform() { return uni_(eng_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        std::uniform_int_distribution<int> d(lo, hi);
        return d(eng_);
    }
    bool coin(double p = 0.5) { return uniform() < p; }
    std::uint64_t next() { return eng_(); }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

}  // namespace hardylab
