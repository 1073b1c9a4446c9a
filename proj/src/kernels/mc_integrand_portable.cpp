// Portable vectorized variant: native_simd at the build's baseline target
// (SSE2 on stock x86-64, NEON on aarch64).

#include "mc_integrand_simd_impl.hpp"

namespace qpigeon::kernels {

void eval_mc_integrand_portable(const double* const* coords, std::size_t n,
                                const McBranchTable& table, double* out) {
    eval_mc_integrand_simd_body<stdx::native_simd<double>>(coords, n, table, out);
}

std::size_t portable_simd_width() { return stdx::native_simd<double>::size(); }

} // namespace qpigeon::kernels
