#include "qpigeon/kernels/mc_integrand.hpp"

#include <vector>

namespace qpigeon::kernels {

void eval_mc_integrand_portable(const double* const* coords, std::size_t n,
                                const McBranchTable& table, double* out);
std::size_t portable_simd_width();

#if defined(QPIGEON_HAVE_AVX2_TU)
void eval_mc_integrand_avx2(const double* const* coords, std::size_t n,
                            const McBranchTable& table, double* out);
#endif

namespace {

std::vector<KernelInfo> build_registry() {
    std::vector<KernelInfo> ks;
    ks.push_back({"scalar", &eval_mc_integrand_scalar});
    ks.push_back({portable_simd_width() >= 4 ? "simd256" : "simd128",
                  &eval_mc_integrand_portable});
#if defined(QPIGEON_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        ks.push_back({"avx2", &eval_mc_integrand_avx2});
#endif
    return ks;
}

} // namespace

std::span<const KernelInfo> available_kernels() {
    static const std::vector<KernelInfo> registry = build_registry();
    return {registry.data(), registry.size()};
}

McIntegrandFn select_kernel() {
    return available_kernels().back().fn;
}

McIntegrandFn kernel_by_name(std::string_view name) {
    for (const auto& k : available_kernels())
        if (name == k.name) return k.fn;
    return nullptr;
}

} // namespace qpigeon::kernels
