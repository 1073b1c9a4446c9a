#pragma once

#include <array>
#include <complex>

#include "qpigeon/errors.hpp"
#include "qpigeon/pathspace.hpp"

// Transverse-mode geometry and Gaussian algebra: the repulsion triangle, the
// displacement-kick rule applied by pairwise repulsion inside an arm,
// closed-form overlaps of displaced Gaussians, the 8x8 branch Gram matrix,
// and the third-turn rotation/relabeling symmetry operator U.

namespace qpigeon {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double norm_squared(Vec2 v) { return dot(v, v); }

/// Gaussian width convention, selecting the overlap kernel. Named after the
/// CLI values `eq7` / `eq9`. Eq7 uses single-particle width sqrt(2)*sigma,
/// giving overlap exp(-d^2 a^2 / (8 sigma^2)); Eq9 uses width sigma, giving
/// exp(-d^2 a^2 / (4 sigma^2)). Observables under the two conventions are
/// related by x -> x/sqrt(2).
enum class Convention { Eq7, Eq9 };

/// Single-particle Gaussian width for the convention (sigma is the spread
/// parameter the closed forms are expressed in).
double profile_width(Convention c, double sigma);

/// Unit vectors toward the triangle vertices: v1=(1,0), v2=(-1/2, sqrt(3)/2),
/// v3=(-1/2, -sqrt(3)/2). Unit norm, zero sum, |vi-vj|^2 = 3 for i != j.
std::array<Vec2, 3> triangle_vectors();

/// Per-particle kick displacement (in units of the kick length a) for branch
/// `b`: particle i is pushed away from its co-occupants, picking up
/// -sum_{j != i, arm_j = arm_i} v_j. A lone particle is undisplaced; the
/// triple-occupancy branches displace particle i by v_i (the vectors sum to
/// zero); complementary branches share the same displacement pattern.
std::array<Vec2, 3> kick_displacements(PathConfig b);

/// Isotropic real 2-D Gaussian, unit L2 norm, centered at `center` (physical
/// length units).
struct GaussianProfile {
    Vec2 center{};
    double sigma = 1.0;
    Convention convention = Convention::Eq7;

    double width() const { return profile_width(convention, sigma); }

    /// Pointwise value; integral of value^2 over the plane is 1.
    double value(Vec2 r) const;
};

/// Closed-form inner product of two unit-norm Gaussians displaced to a*u and
/// a*w: exp(-a^2 |u-w|^2 / (4 width^2)). Symmetric, 1 iff u == w or a == 0.
/// Throws NonpositiveWidth when sigma <= 0.
double overlap(Vec2 u, Vec2 w, double a, double sigma, Convention c);

using Gram = std::array<std::array<double, PathConfig::kCount>, PathConfig::kCount>;

/// Gram matrix of the 8 branch profile products:
/// G[b][b2] = prod_i overlap(d_i(b), d_i(b2)). Symmetric, unit diagonal,
/// entries in (0,1], and G[b][complement(b)] = 1.
Gram gram_matrix(double a, double sigma, Convention c);

/// Rotation by +2*pi/3 (maps v1 -> v2 -> v3 -> v1).
Vec2 rotate_third_turn(Vec2 v);

/// Centers of U|branch>: the plane is rotated by a third turn and particle
/// coordinates are relabeled cyclically, the pairing fixed so that the
/// triple-occupancy branches are invariant. new_center[j] = R * center[p(j)]
/// with p = (2, 0, 1).
std::array<Vec2, 3> u_image_centers(const std::array<Vec2, 3>& centers);

/// Diagonal matrix element <branch_b| U |branch_b> of the symmetry operator.
/// Equals 1 for LLL/RRR at any strength; for pair branches the summed squared
/// center mismatch is 5 a^2, giving exp(-5 a^2 / (4 width^2)).
double u_overlap(PathConfig b, double a, double sigma, Convention c);

/// Product of three displaced Gaussians sharing width and convention; the
/// transverse factor attached to one path branch.
struct BranchProfile {
    PathConfig branch{0};
    std::array<GaussianProfile, 3> factors{};

    static BranchProfile make(PathConfig b, double a, double sigma, Convention c);

    /// Value at (x1,y1,x2,y2,x3,y3).
    double value(const std::array<double, 6>& point) const;
};

/// Path-and-profile state as per-branch coefficient/profile pairs.
struct DressedState {
    double a = 0.0;
    double sigma = 1.0;
    Convention convention = Convention::Eq7;
    std::array<complex, PathConfig::kCount> coefficients{};
    std::array<BranchProfile, PathConfig::kCount> branches{
        BranchProfile{}, BranchProfile{}, BranchProfile{}, BranchProfile{},
        BranchProfile{}, BranchProfile{}, BranchProfile{}, BranchProfile{}};

    /// State just before detection: every coefficient 1/(2*sqrt(2)), branch
    /// profiles displaced by the kick rule. Throws NonpositiveWidth or
    /// NegativeStrength on bad parameters.
    static DressedState after_interaction(double a, double sigma, Convention c);
};

} // namespace qpigeon
