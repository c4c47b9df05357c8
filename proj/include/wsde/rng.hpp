#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace wsde {

/// SplitMix64 (Steele, Lea, Flood 2014). Used to expand a 64-bit seed into
/// generator state and to derive replicate seeds.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}
    std::uint64_t next() noexcept;

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). The state is filled from four
/// consecutive SplitMix64 outputs of the seed. The algorithm is fixed so that
/// paths replay bit-for-bit across platforms and compilers.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform on the open interval (0, 1) with 53-bit resolution:
    /// ((next() >> 11) + 0.5) * 2^-53.
    double uniform_open() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Standard normal variates by the Marsaglia polar method. Each accepted pair
/// (u, v) yields u*f first and caches v*f for the following call.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) noexcept : gen_(seed) {}
    double operator()() noexcept;

private:
    Xoshiro256 gen_;
    std::optional<double> cached_;
};

/// Seed of replicate `index` under `master`:
/// SplitMix64(master XOR SplitMix64(index).next()).next().
/// Depends only on (master, index), so replicates may run in any order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

} // namespace wsde
