#include "qpigeon/observables.hpp"

#include <cassert>
#include <cmath>

namespace qpigeon {

namespace {

void require_strength(double x) {
    if (x < 0.0) throw NegativeStrength("interaction strength x must be >= 0");
}

// Exponent denominator of the overlap kernel at sigma = 1: 8 under Eq7, 4
// under Eq9.
double kernel_scale(Convention c) {
    return c == Convention::Eq7 ? 8.0 : 4.0;
}

// d/dx of p_all_same_closed, up to the positive factor 3x/(8k).
double dip_derivative_core(double x, double k) {
    const double u = x * x;
    return 3.0 * std::exp(-3.0 * u / k) - 5.0 * std::exp(-5.0 * u / k);
}

} // namespace

double p_all_same_closed(double x, Convention c) {
    require_strength(x);
    const double k = kernel_scale(c);
    const double u = x * x;
    return (1.0 + 1.5 * std::exp(-5.0 * u / k) - 1.5 * std::exp(-3.0 * u / k)) / 8.0;
}

double p_all_same_gram(double x, Convention c) {
    require_strength(x);
    const auto g = gram_matrix(x, 1.0, c);
    const auto phases = detector_phases(kAllPlus);
    complex sum = 0.0;
    for (int b = 0; b < PathConfig::kCount; ++b)
        for (int b2 = 0; b2 < PathConfig::kCount; ++b2)
            sum += phases[static_cast<std::size_t>(b)] * std::conj(phases[static_cast<std::size_t>(b2)]) *
                   g[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
    sum /= 64.0;
    assert(std::abs(sum.imag()) <= 1e-14);
    return sum.real();
}

double expectation_u(double x, Convention c) {
    require_strength(x);
    double sum = 0.0;
    for (auto b : PathConfig::all()) sum += u_overlap(b, x, 1.0, c);
    return sum / 8.0;
}

double p_int(double x, Convention c, PIntVariant v) {
    const double e = expectation_u(x, c);
    return v == PIntVariant::Linear ? 1.0 - e : 1.0 - e * e;
}

MinimumReport find_minimum(Convention c) {
    const double k = kernel_scale(c);

    // Bracket the derivative sign change on (0, 4); the dip is the unique
    // interior stationary point, so a coarse scan suffices.
    const int kScan = 64;
    double lo = 1e-8;
    double hi = 4.0;
    double flo = dip_derivative_core(lo, k);
    bool bracketed = false;
    for (int i = 1; i <= kScan; ++i) {
        const double xi = 4.0 * static_cast<double>(i) / kScan;
        const double fi = dip_derivative_core(xi, k);
        if (flo < 0.0 && fi >= 0.0) {
            hi = xi;
            bracketed = true;
            break;
        }
        lo = xi;
        flo = fi;
    }
    assert(bracketed);
    (void)bracketed;

    int iterations = 0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (dip_derivative_core(mid, k) < 0.0)
            lo = mid;
        else
            hi = mid;
        ++iterations;
    }

    MinimumReport r;
    r.x_star = 0.5 * (lo + hi);
    r.p_star = p_all_same_closed(r.x_star, c);
    r.iterations = iterations;
    return r;
}

SignTriple pattern_signs(int pattern) {
    return {((pattern >> 2) & 1) ? -1 : +1, ((pattern >> 1) & 1) ? -1 : +1,
            (pattern & 1) ? -1 : +1};
}

std::string pattern_label(int pattern) {
    const auto s = pattern_signs(pattern);
    std::string out(3, '+');
    for (int k = 0; k < 3; ++k)
        if (s[static_cast<std::size_t>(k)] < 0) out[static_cast<std::size_t>(k)] = '-';
    return out;
}

std::array<double, 8> output_distribution(double x, Convention c) {
    require_strength(x);
    const auto g = gram_matrix(x, 1.0, c);
    std::array<double, 8> dist{};
    for (int pattern = 0; pattern < 8; ++pattern) {
        const auto phases = detector_phases(pattern_signs(pattern));
        complex sum = 0.0;
        for (int b = 0; b < PathConfig::kCount; ++b)
            for (int b2 = 0; b2 < PathConfig::kCount; ++b2)
                sum += phases[static_cast<std::size_t>(b)] *
                       std::conj(phases[static_cast<std::size_t>(b2)]) *
                       g[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)];
        sum /= 64.0;
        assert(std::abs(sum.imag()) <= 1e-12);
        dist[static_cast<std::size_t>(pattern)] = sum.real();
    }
    return dist;
}

DensityMatrix reduced_density(double x, Convention c) {
    require_strength(x);
    const auto g = gram_matrix(x, 1.0, c);
    DensityMatrix rho{};
    for (int b = 0; b < PathConfig::kCount; ++b)
        for (int b2 = 0; b2 < PathConfig::kCount; ++b2)
            rho[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)] =
                g[static_cast<std::size_t>(b)][static_cast<std::size_t>(b2)] / 8.0;
    return rho;
}

} // namespace qpigeon
