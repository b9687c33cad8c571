#pragma once

#include <cstdint>
#include <random>

namespace pmsam {

/// Deterministic random stream with a pinned integer-to-double mapping.
///
/// Every stochastic operation in the library draws from an explicit
/// RandomStream, so replaying a stream reproduces a run bit for bit.
/// Substreams are derived by hashing (seed, iteration, label), which keeps
/// membranes statistically independent and lets them run on any worker
/// without coordination.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

    /// Stream for one membrane in one outer iteration.
    static RandomStream substream(std::uint64_t seed, std::uint64_t iteration,
                                  std::uint64_t label);

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1), built from the top 53 bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Fair coin from the top bit.
    bool coin() { return (next_u64() >> 63) != 0; }

private:
    std::mt19937_64 gen_;
};

namespace detail {

/// splitmix64 finalizer, used to mix substream derivation keys.
inline std::uint64_t mix64(std::uint64_t h, std::uint64_t v) {
    h += 0x9e3779b97f4a7c15ULL + v;
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    return h ^ (h >> 31);
}

} // namespace detail

inline RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t iteration,
                                            std::uint64_t label) {
    std::uint64_t h = detail::mix64(0, seed);
    h = detail::mix64(h, iteration);
    h = detail::mix64(h, label);
    return RandomStream(h);
}

} // namespace pmsam
