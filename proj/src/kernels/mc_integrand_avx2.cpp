// AVX2+FMA variant; this unit is compiled with -mavx2 -mfma and must only be
// entered after a runtime CPU check (see dispatch.cpp).

#include "mc_integrand_simd_impl.hpp"

namespace qpigeon::kernels {

void eval_mc_integrand_avx2(const double* const* coords, std::size_t n,
                            const McBranchTable& table, double* out) {
    eval_mc_integrand_simd_body<stdx::native_simd<double>>(coords, n, table, out);
}

} // namespace qpigeon::kernels
