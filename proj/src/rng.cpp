#include "qpigeon/rng.hpp"

#include <cmath>

namespace qpigeon {

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// 53-bit mantissa in (0,1]; never 0, so safe under log.
double to_unit_open0(std::uint64_t w) {
    return (static_cast<double>(w >> 11) + 1.0) * 0x1.0p-53;
}

// 53-bit mantissa in [0,1).
double to_unit_open1(std::uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}
} // namespace

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + (k + 1) * kGamma);
}

std::array<double, 6> standard_normal6(std::uint64_t seed, std::uint64_t index) {
    std::array<double, 6> z{};
    const std::uint64_t base = 6 * index;
    for (int pair = 0; pair < 3; ++pair) {
        const double u1 = to_unit_open0(stream_word(seed, base + 2 * static_cast<std::uint64_t>(pair)));
        const double u2 = to_unit_open1(stream_word(seed, base + 2 * static_cast<std::uint64_t>(pair) + 1));
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * M_PI * u2;
        z[static_cast<std::size_t>(2 * pair)] = r * std::cos(phi);
        z[static_cast<std::size_t>(2 * pair + 1)] = r * std::sin(phi);
    }
    return z;
}

void fill_sample_block(std::uint64_t seed, std::uint64_t first, std::size_t count,
                       double scale, double* const coords[6]) {
    for (std::size_t i = 0; i < count; ++i) {
        const auto z = standard_normal6(seed, first + i);
        for (int t = 0; t < 6; ++t)
            coords[t][i] = scale * z[static_cast<std::size_t>(t)];
    }
}

} // namespace qpigeon
