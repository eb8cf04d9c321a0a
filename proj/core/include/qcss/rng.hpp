#pragma once

#include <cstdint>
#include <random>

#include "qcss/gf2.hpp"

namespace qcss {

/// splitmix64 step; used to mix seeds so derived streams are independent.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Seed for a labeled child stream of a master seed. Fixed-label mixing
/// keeps experiment randomness reproducible bit-for-bit.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t label) {
    return splitmix64(master ^ splitmix64(label));
}

/// Deterministic RNG. mt19937_64 output is fully specified by the
/// standard and the mappings below avoid the library-defined
/// distributions, so identical seeds give identical draws everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, n); n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do { x = gen_(); } while (x >= limit);
        return x % n;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    BinVector random_vector(std::size_t len) {
        BinVector v(len);
        for (std::size_t i = 0; i < len; ++i)
            if (gen_() & 1) v.set(i, true);
        return v;
    }

    BinVector bernoulli_vector(std::size_t len, double p) {
        BinVector v(len);
        for (std::size_t i = 0; i < len; ++i)
            if (bernoulli(p)) v.set(i, true);
        return v;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace qcss
