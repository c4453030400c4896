#ifndef RSEP_RNG_HPP
#define RSEP_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace rsep {

/// Deterministic RNG: mt19937_64 has a standardized output sequence, and all
/// derived draws below avoid std::*_distribution (whose mappings are
/// implementation-defined), so identical seeds give identical streams on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    /// Sorted sample of k distinct values from [0, n) (Floyd's algorithm).
    std::vector<std::uint64_t> sample(std::uint64_t n, std::uint64_t k);

private:
    std::mt19937_64 engine_;
};

/// Stateless seed combiner (splitmix64 finalizer) for deriving independent
/// per-cell / per-repetition seeds from one base seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace rsep

#endif // RSEP_RNG_HPP
