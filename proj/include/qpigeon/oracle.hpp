#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qpigeon/kernels/mc_integrand.hpp"
#include "qpigeon/pathspace.hpp"
#include "qpigeon/profiles.hpp"

// Independent numeric verification of the closed forms. The post-selected
// amplitude is rebuilt pointwise from the displacement rule (never from the
// closed-form probabilities) and |amplitude|^2 is integrated over the six
// transverse coordinates twice over: by importance-sampled Monte Carlo and
// by tensor-product Gauss-Hermite quadrature. Sigma is fixed to 1
// internally; scale invariance makes x = a/sigma the only free parameter.

namespace qpigeon::oracle {

struct IntegrationResult {
    double value = 0.0;
    /// Standard error of the mean (Monte Carlo) or the order-doubling
    /// discrepancy (quadrature).
    double error = 0.0;
    long long samples_or_order = 0;
    std::uint64_t seed = 0;
};

/// Post-selected transverse amplitude at (x1,y1,x2,y2,x3,y3):
/// sum_b c_b * (1/(2*sqrt(2))) * prod_i F(r_i; x * d_i(b)), with F the
/// unit-norm Gaussian of the convention and c_b the detection phases.
complex postselected_amplitude_at(const std::array<double, 6>& point, double x,
                                  Convention c, const SignTriple& post);

/// Proposal density used by the Monte Carlo estimator: the squared modulus
/// of the undisplaced profile product, i.e. six independent normals with
/// per-axis standard deviation width/sqrt(2).
double proposal_density(const std::array<double, 6>& point, Convention c);

/// Exact importance weight at a point: |amplitude|^2 / (8 * proposal). The
/// fast kernels must reproduce this value; tests pin them together.
double importance_weight_at(const std::array<double, 6>& point, double x, Convention c,
                            const SignTriple& post);

/// Precomputed affine-exponent table consumed by the kernels.
kernels::McBranchTable make_mc_branch_table(double x, Convention c, const SignTriple& post);

struct McOptions {
    /// Kernel variant name ("scalar", "simd128"/"simd256", "avx2"); empty
    /// selects the fastest available.
    const char* kernel = "";
    /// Worker threads over sample blocks; 0 = hardware concurrency. The
    /// result is bit-identical for every thread count.
    unsigned threads = 0;
};

/// Monte Carlo estimate of the post-selected probability for the given sign
/// pattern. Deterministic for fixed (seed, samples): sample i is a pure
/// function of (seed, i) and partial sums are combined in block order.
/// Throws InsufficientSamples below 1e4 samples.
IntegrationResult integrate_mc(double x, Convention c, const SignTriple& post,
                               long long samples, std::uint64_t seed,
                               const McOptions& opts = {});

inline constexpr int kMinQuadOrder = 4;
inline constexpr int kMaxQuadOrder = 64;

/// Gauss-Hermite nodes/weights for integral of e^{-u^2} f(u).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussHermiteRule& gauss_hermite_rule(int n);

/// Tensor-product Gauss-Hermite estimate of the same probability. The
/// integrand is a sum of separable Gaussians over the 64 branch pairs, so
/// the cost is 6 one-dimensional passes per pair rather than order^6 points.
/// `axis_order` permutes the traversal of the six axes (the estimate must
/// not depend on it). Throws OrderOutOfRange outside [4, 64].
IntegrationResult integrate_quad(double x, Convention c, const SignTriple& post, int order,
                                 const std::array<int, 6>& axis_order = {0, 1, 2, 3, 4, 5});

/// Quadrature estimate of <phi|U|phi> by the analogous per-branch overlap
/// integrals against the rotated-and-relabeled centers.
IntegrationResult u_expectation_quad(double x, Convention c, int order);

} // namespace qpigeon::oracle
