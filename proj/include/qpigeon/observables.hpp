#pragma once

#include <array>
#include <complex>

#include "qpigeon/pathspace.hpp"
#include "qpigeon/profiles.hpp"

// Headline quantities of the experiment: the probability that all three
// particles exit at the same detector (closed form and Gram-matrix form),
// its interior minimum, the rotational-symmetry interaction witness, the
// full 8-outcome detector distribution, and the profile-traced reduced
// density matrix.

namespace qpigeon {

/// Closed form for the post-selected triple-coincidence probability at
/// x = a/sigma:
///   Eq7: (1/8) (1 + (3/2) e^{-5x^2/8} - (3/2) e^{-3x^2/8})
///   Eq9: same with both exponents doubled.
/// Value in (0, 1/8]. Throws NegativeStrength when x < 0.
double p_all_same_closed(double x, Convention c);

/// Same probability assembled from the branch Gram matrix:
/// (1/64) sum_{b,b2} c_b conj(c_b2) G[b][b2] with c the all-plus detection
/// phases. Agrees with the closed form to 1e-12.
double p_all_same_gram(double x, Convention c);

/// <phi|U|phi> = (1/8) sum_b u_overlap(b); real, in (1/4, 1].
double expectation_u(double x, Convention c);

/// The two published shapes of the interaction witness. Linear is
/// 1 - <U>; quadratic is 1 - <U>^2. They differ (large-x limits 3/4 vs
/// 15/16); the Eq9 closed form (3/4)(1 - e^{-5x^2/4}) is the linear one.
enum class PIntVariant { Linear, Quadratic };

/// Probability of certifying pairwise interaction by the broken third-turn
/// symmetry. Zero at x = 0, increasing in x.
double p_int(double x, Convention c, PIntVariant v);

struct MinimumReport {
    double x_star = 0.0;
    double p_star = 0.0;
    int iterations = 0;
};

/// Locates the interior minimum of p_all_same_closed by bracketing the sign
/// change of its derivative on (0, 4) and bisecting to width 1e-12.
/// For Eq7 the analytic location is 2*sqrt(ln(5/3)) with value
/// (1 - (3/5)^{5/2}) / 8; Eq9 rescales the location by 1/sqrt(2).
MinimumReport find_minimum(Convention c);

/// Probability of each detector sign pattern. Patterns are indexed like path
/// configurations with + < -: (+,+,+)=0, (+,+,-)=1, ..., (-,-,-)=7.
/// Entries sum to 1; uniform (1/8 each) at x = 0 and again as x -> infinity.
std::array<double, 8> output_distribution(double x, Convention c);

/// Sign triple for a distribution pattern index (0 -> {+,+,+}).
SignTriple pattern_signs(int pattern);
std::string pattern_label(int pattern);

using DensityMatrix = std::array<std::array<complex, PathConfig::kCount>, PathConfig::kCount>;

/// Path-space density matrix with the transverse profiles traced out:
/// rho[b][b2] = G[b][b2] / 8. Hermitian, unit trace, positive semidefinite.
/// As x -> infinity only the diagonal and the complement pairs survive.
DensityMatrix reduced_density(double x, Convention c);

} // namespace qpigeon
