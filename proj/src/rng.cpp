#include "wsde/rng.hpp"

#include <cmath>

namespace wsde {

namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
}

std::uint64_t Xoshiro256::next() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform_open() noexcept {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalSampler::operator()() noexcept {
    if (cached_) {
        const double z = *cached_;
        cached_.reset();
        return z;
    }
    double u = 0.0, v = 0.0, s = 0.0;
    do {
        u = 2.0 * gen_.uniform_open() - 1.0;
        v = 2.0 * gen_.uniform_open() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    return u * f;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    const std::uint64_t mixed_index = SplitMix64(index).next();
    return SplitMix64(master ^ mixed_index).next();
}

} // namespace wsde
