#pragma once

#include <cmath>
#include <cstdint>

// Counter-friendly splittable RNG used by every Monte Carlo routine.
// SplitMix64 passes BigCrush, has a one-word state, and mixing
// (seed, stream) through one round gives independent substreams, which is
// what makes chunked parallel sampling deterministic regardless of the
// number of worker threads.

namespace cpf {

inline constexpr const char* rng_algorithm_name = "splitmix64";

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One-shot mix: derive a substream seed from (seed, stream index).
inline std::uint64_t rng_substream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    return splitmix64_next(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // uniform in [0,1), 53-bit resolution
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // uniform integer in [0, n), Lemire multiply-shift (bias < 2^-64)
    std::uint32_t next_below(std::uint64_t n) {
        const auto wide =
            static_cast<unsigned __int128>(next_u64()) * n;
        return static_cast<std::uint32_t>(wide >> 64);
    }

    // standard normal via Box-Muller; cheap enough for our trial counts
    double next_normal() {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
    }

    // photon count of a thermal state with mean n: P(k) = n^k/(n+1)^(k+1)
    std::uint32_t next_thermal_count(double n_mean) {
        if (n_mean <= 0.0) return 0;
        double u = next_double();
        while (u <= 0.0) u = next_double();
        double k = std::floor(std::log(u) / std::log(n_mean / (n_mean + 1.0)));
        return static_cast<std::uint32_t>(k);
    }

    // Poisson sampling. The product method needs exp(-mean) to stay a normal
    // double, so large means are split using Poisson(a)+Poisson(b)=Poisson(a+b).
    std::uint32_t next_poisson(double mean) {
        std::uint32_t total = 0;
        while (mean > 256.0) {
            total += poisson_product(256.0);
            mean -= 256.0;
        }
        return total + poisson_product(mean);
    }

private:
    std::uint32_t poisson_product(double mean) {
        if (mean <= 0.0) return 0;
        double l = std::exp(-mean);
        double p = 1.0;
        std::uint32_t k = 0;
        do {
            ++k;
            p *= next_double();
        } while (p > l);
        return k - 1;
    }

    std::uint64_t state_;
};

} // namespace cpf
