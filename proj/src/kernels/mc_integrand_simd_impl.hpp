#pragma once

#include <cstddef>
#include <experimental/simd>

#include "qpigeon/kernels/mc_integrand.hpp"

// Shared body for the vectorized integrand variants. Each translation unit
// including this header is compiled with its own target flags, so the
// anonymous namespace keeps every instantiation internal to its unit and the
// exported symbol is the single named wrapper defined by the includer.

namespace qpigeon::kernels {
namespace {

namespace stdx = std::experimental;

inline void eval_mc_integrand_scalar_tail(const double* const* coords, std::size_t first,
                                          std::size_t n, const McBranchTable& table,
                                          double* out) {
    const double* tail_coords[kAxes];
    for (int t = 0; t < kAxes; ++t) tail_coords[t] = coords[t] + first;
    eval_mc_integrand_scalar(tail_coords, n - first, table, out + first);
}

template <class V>
inline void eval_mc_integrand_simd_body(const double* const* coords, std::size_t n,
                                        const McBranchTable& table, double* out) {
    constexpr std::size_t W = V::size();
    std::size_t i = 0;
    for (; i + W <= n; i += W) {
        V sum_re(0.0);
        V sum_im(0.0);
        for (int b = 0; b < kBranches; ++b) {
            V e(table.beta[b]);
            for (int t = 0; t < kAxes; ++t) {
                V x(&coords[t][i], stdx::element_aligned);
                e += V(table.alpha[b][t]) * x;
            }
            const V g = stdx::exp(e);
            sum_re += V(table.re_coef[b]) * g;
            sum_im += V(table.im_coef[b]) * g;
        }
        const V h = (sum_re * sum_re + sum_im * sum_im) * V(1.0 / 64.0);
        h.copy_to(&out[i], stdx::element_aligned);
    }
    if (i < n) eval_mc_integrand_scalar_tail(coords, i, n, table, out);
}

} // namespace
} // namespace qpigeon::kernels
