#include "qpigeon/pathspace.hpp"

#include <bit>
#include <cmath>

namespace qpigeon {

namespace {
constexpr double kDegenerateOverlap = 1e-14;
constexpr double kDegenerateProbability = 1e-28;
} // namespace

int hamming(PathConfig a, PathConfig b) {
    return std::popcount(static_cast<unsigned>(a.index() ^ b.index()));
}

double DiscreteState::norm_squared() const {
    double n = 0.0;
    for (const auto& a : amplitudes) n += std::norm(a);
    return n;
}

bool DiscreteState::normalized(double tol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
}

DiscreteState DiscreteState::conjugated() const {
    DiscreteState out;
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        out.amplitudes[i] = std::conj(amplitudes[i]);
    return out;
}

complex inner(const DiscreteState& a, const DiscreteState& b) {
    complex s = 0.0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    return s;
}

DiagonalProjector DiagonalProjector::same_pair(int i, int j) {
    std::uint8_t mask = 0;
    for (auto b : PathConfig::all())
        if (b.arm(i) == b.arm(j)) mask |= static_cast<std::uint8_t>(1u << b.index());
    return DiagonalProjector(mask);
}

DiagonalProjector DiagonalProjector::same_all() {
    return DiagonalProjector(static_cast<std::uint8_t>((1u << 0) | (1u << 7)));
}

DiagonalProjector DiagonalProjector::pair_arms(int i, Arm ai, int j, Arm aj) {
    std::uint8_t mask = 0;
    for (auto b : PathConfig::all())
        if (b.arm(i) == ai && b.arm(j) == aj) mask |= static_cast<std::uint8_t>(1u << b.index());
    return DiagonalProjector(mask);
}

DiscreteState plus_state() {
    DiscreteState s;
    // sqrt(0.125) is correctly rounded, so amp * amp == 0.125 exactly.
    const double amp = std::sqrt(0.125);
    for (auto& a : s.amplitudes) a = amp;
    return s;
}

std::array<complex, PathConfig::kCount> detector_phases(const SignTriple& signs) {
    std::array<complex, PathConfig::kCount> c{};
    for (auto b : PathConfig::all()) {
        complex phase = 1.0;
        for (int k = 0; k < 3; ++k)
            if (b.arm(k) == Arm::R) phase *= complex(0.0, static_cast<double>(signs[k]));
        c[static_cast<std::size_t>(b.index())] = phase;
    }
    return c;
}

DiscreteState post_state(const SignTriple& signs) {
    DiscreteState s;
    const auto phases = detector_phases(signs);
    // sqrt(0.125) is correctly rounded, so amp * amp == 0.125 exactly.
    const double amp = std::sqrt(0.125);
    for (std::size_t i = 0; i < phases.size(); ++i) s.amplitudes[i] = amp * phases[i];
    return s;
}

complex weak_value(const DiagonalProjector& p, const DiscreteState& pre,
                   const DiscreteState& post) {
    complex num = 0.0;
    complex den = 0.0;
    for (auto b : PathConfig::all()) {
        const complex term = std::conj(post[b]) * pre[b];
        den += term;
        if (p.contains(b)) num += term;
    }
    if (std::abs(den) <= kDegenerateOverlap)
        throw DegeneratePostSelection("weak value undefined: |<post|pre>| <= 1e-14");
    return num / den;
}

double strong_conditional_mean(const DiagonalProjector& p, const DiscreteState& pre,
                               const DiscreteState& post) {
    complex hit = 0.0;
    complex miss = 0.0;
    for (auto b : PathConfig::all()) {
        const complex term = std::conj(post[b]) * pre[b];
        if (p.contains(b))
            hit += term;
        else
            miss += term;
    }
    const double p_hit = std::norm(hit);
    const double p_miss = std::norm(miss);
    const double total = p_hit + p_miss;
    if (total <= kDegenerateProbability)
        throw DegeneratePostSelection(
            "conditional mean undefined: post-selection never succeeds");
    return p_hit / total;
}

InterferenceSign interference_sign(PathConfig b, PathConfig b2) {
    const int dk = b.r_count() - b2.r_count();
    if (dk & 1) return InterferenceSign::Neutral;
    return (dk % 4 == 0) ? InterferenceSign::Constructive : InterferenceSign::Destructive;
}

const char* to_string(InterferenceSign s) {
    switch (s) {
        case InterferenceSign::Neutral: return "neutral";
        case InterferenceSign::Constructive: return "constructive";
        case InterferenceSign::Destructive: return "destructive";
    }
    return "?";
}

} // namespace qpigeon
