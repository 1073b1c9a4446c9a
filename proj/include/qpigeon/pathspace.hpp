#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "qpigeon/errors.hpp"

// Discrete {L,R}^3 path algebra for three particles in a two-arm
// interferometer: the 8 basis path configurations, states over them,
// diagonal projectors, weak values and strong conditional means, and the
// Hamming-distance interference classification.

namespace qpigeon {

using complex = std::complex<double>;

enum class Arm : std::uint8_t { L = 0, R = 1 };

/// +1 or -1 detector sign per particle, e.g. {+1,+1,+1} for the all-plus port.
using SignTriple = std::array<int, 3>;

inline constexpr SignTriple kAllPlus{+1, +1, +1};

/// One assignment of the three particles to arms. Basis order is
/// lexicographic with L < R: LLL=0, LLR=1, LRL=2, LRR=3, RLL=4, RLR=5,
/// RRL=6, RRR=7 (particle 1 is the most significant position).
class PathConfig {
public:
    static constexpr int kCount = 8;

    constexpr explicit PathConfig(int index) : index_(index & 7) {}

    static constexpr PathConfig from_arms(Arm a1, Arm a2, Arm a3) {
        return PathConfig(4 * static_cast<int>(a1) + 2 * static_cast<int>(a2) +
                          static_cast<int>(a3));
    }

    constexpr int index() const { return index_; }

    /// Arm of particle `k` (0-based, k in [0,3)).
    constexpr Arm arm(int k) const {
        return static_cast<Arm>((index_ >> (2 - k)) & 1);
    }

    /// Number of particles in the right arm (0..3).
    constexpr int r_count() const {
        return ((index_ >> 2) & 1) + ((index_ >> 1) & 1) + (index_ & 1);
    }

    /// Configuration with every arm label flipped (L <-> R).
    constexpr PathConfig complement() const { return PathConfig(index_ ^ 7); }

    std::string label() const {
        std::string s(3, 'L');
        for (int k = 0; k < 3; ++k)
            if (arm(k) == Arm::R) s[k] = 'R';
        return s;
    }

    friend constexpr bool operator==(PathConfig a, PathConfig b) {
        return a.index_ == b.index_;
    }
    friend constexpr bool operator!=(PathConfig a, PathConfig b) {
        return a.index_ != b.index_;
    }

    static std::array<PathConfig, kCount> all() {
        return {PathConfig(0), PathConfig(1), PathConfig(2), PathConfig(3),
                PathConfig(4), PathConfig(5), PathConfig(6), PathConfig(7)};
    }

private:
    int index_;
};

/// Number of particles whose arm labels differ between `a` and `b`.
int hamming(PathConfig a, PathConfig b);

/// Complex amplitude vector over the 8 path configurations.
struct DiscreteState {
    std::array<complex, PathConfig::kCount> amplitudes{};

    complex operator[](PathConfig b) const { return amplitudes[static_cast<std::size_t>(b.index())]; }
    complex& operator[](PathConfig b) { return amplitudes[static_cast<std::size_t>(b.index())]; }

    double norm_squared() const;
    bool normalized(double tol = 1e-12) const;

    /// Component-wise complex conjugate.
    DiscreteState conjugated() const;
};

/// <a|b> = sum_b conj(a_b) * b_b.
complex inner(const DiscreteState& a, const DiscreteState& b);

/// Projector diagonal in the path basis, represented by its support set.
class DiagonalProjector {
public:
    constexpr DiagonalProjector() : mask_(0) {}
    constexpr explicit DiagonalProjector(std::uint8_t support_mask) : mask_(support_mask) {}

    static constexpr DiagonalProjector empty() { return DiagonalProjector(0x00); }
    static constexpr DiagonalProjector identity() { return DiagonalProjector(0xff); }

    /// Projector onto configurations where particles `i` and `j` share an arm.
    static DiagonalProjector same_pair(int i, int j);

    /// Projector onto {LLL, RRR}: all three particles in one arm.
    static DiagonalProjector same_all();

    /// Projector onto configurations with particle `i` in `ai` and `j` in `aj`.
    static DiagonalProjector pair_arms(int i, Arm ai, int j, Arm aj);

    constexpr bool contains(PathConfig b) const { return (mask_ >> b.index()) & 1; }
    constexpr std::uint8_t mask() const { return mask_; }
    constexpr int support_size() const {
        int n = 0;
        for (int b = 0; b < 8; ++b) n += (mask_ >> b) & 1;
        return n;
    }

    constexpr DiagonalProjector complement() const {
        return DiagonalProjector(static_cast<std::uint8_t>(~mask_));
    }

    friend constexpr bool operator==(DiagonalProjector a, DiagonalProjector b) {
        return a.mask_ == b.mask_;
    }

private:
    std::uint8_t mask_;
};

/// State behind the first beam splitter: |+++>, all amplitudes 1/(2*sqrt(2)).
DiscreteState plus_state();

/// Detector state (|L> + s1*i|R>)/sqrt(2) x ... for the given sign triple.
/// For the all-plus triple the amplitudes are i^{r_count(b)} / (2*sqrt(2)).
DiscreteState post_state(const SignTriple& signs);

/// Unit-modulus detection phases c_b = prod_k (s_k * i)^{[arm_k = R]}.
/// Equal to post_state(signs) amplitudes times 2*sqrt(2); for the all-plus
/// triple this is the canonical row (1, i, i, -1, i, -1, -1, -i). The
/// conjugate row (the literal bra coefficients) is detector_phases(signs)
/// conjugated component-wise.
std::array<complex, PathConfig::kCount> detector_phases(const SignTriple& signs);

/// Weak value <post|P|pre> / <post|pre>.
/// Throws DegeneratePostSelection when |<post|pre>| <= 1e-14.
complex weak_value(const DiagonalProjector& p, const DiscreteState& pre,
                   const DiscreteState& post);

/// Probability of outcome 1 for a sharp measurement of `p`, conditioned on
/// the post-selection succeeding afterwards:
///   |<post|P|pre>|^2 / (|<post|P|pre>|^2 + |<post|(1-P)|pre>|^2).
/// Throws DegeneratePostSelection when the denominator is <= 1e-28.
double strong_conditional_mean(const DiagonalProjector& p, const DiscreteState& pre,
                               const DiscreteState& post);

enum class InterferenceSign { Neutral, Constructive, Destructive };

/// Classifies the cross term 2*Re(c_b * conj(c_b2)) of the all-same-detector
/// post-selection, where c_b = i^{r_count(b)}. With dk = r_count(b) -
/// r_count(b2): neutral iff dk is odd (equivalently iff the Hamming distance
/// is odd), constructive iff dk = 0 mod 4, destructive iff dk = 2 mod 4.
/// Requires b != b2. Note the rule is stated in terms of dk, not the Hamming
/// distance: the two coincide only when all differing arm labels flip the
/// same way (e.g. LLR vs LRL has Hamming distance 2 but dk = 0, so it
/// interferes constructively).
InterferenceSign interference_sign(PathConfig b, PathConfig b2);

const char* to_string(InterferenceSign s);

} // namespace qpigeon
