#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loop of the Monte Carlo oracle. With the sampling
// proposal equal to the undisplaced profile density, the importance weight at
// a 6-coordinate point r reduces to
//
//   h(r) = (1/64) | sum_b c_b exp(alpha_b . r + beta_b) |^2
//
// where alpha_b = m_b / s^2, beta_b = -|m_b|^2 / (2 s^2), m_b are the branch
// displacement centers, s the single-particle width, and c_b the unit
// detection phases (always fourth roots of unity, stored as real/imag
// coefficients in {-1, 0, 1}). The expectation of h over the proposal is the
// post-selected probability.
//
// Kernels evaluate h for a block of points held in structure-of-arrays
// layout. A scalar reference implementation is always available; wider
// variants are vectorized across points and selected at runtime by CPU
// capability. All variants share the sample generation and accumulation
// code, so they agree to within floating-point rounding of exp and fma.

namespace qpigeon::kernels {

inline constexpr int kBranches = 8;
inline constexpr int kAxes = 6;

struct McBranchTable {
    alignas(64) double alpha[kBranches][kAxes];
    alignas(64) double beta[kBranches];
    alignas(64) double re_coef[kBranches];
    alignas(64) double im_coef[kBranches];
};

/// coords[axis] points at n contiguous samples of that axis;
/// out[i] receives h for sample i.
using McIntegrandFn = void (*)(const double* const* coords, std::size_t n,
                               const McBranchTable& table, double* out);

struct KernelInfo {
    const char* name; // "scalar", "simd128"/"simd256", "avx2"
    McIntegrandFn fn;
};

/// Reference implementation, plain std:: math, one sample at a time.
void eval_mc_integrand_scalar(const double* const* coords, std::size_t n,
                              const McBranchTable& table, double* out);

/// Kernels usable on this machine, ordered slowest to fastest.
std::span<const KernelInfo> available_kernels();

/// Fastest available kernel.
McIntegrandFn select_kernel();

/// Lookup by name; nullptr when the variant is absent on this machine.
McIntegrandFn kernel_by_name(std::string_view name);

} // namespace qpigeon::kernels
