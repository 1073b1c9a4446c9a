#include "qpigeon/kernels/mc_integrand.hpp"

#include <cmath>

namespace qpigeon::kernels {

void eval_mc_integrand_scalar(const double* const* coords, std::size_t n,
                              const McBranchTable& table, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double sum_re = 0.0;
        double sum_im = 0.0;
        for (int b = 0; b < kBranches; ++b) {
            double e = table.beta[b];
            for (int t = 0; t < kAxes; ++t) e += table.alpha[b][t] * coords[t][i];
            const double g = std::exp(e);
            sum_re += table.re_coef[b] * g;
            sum_im += table.im_coef[b] * g;
        }
        out[i] = (sum_re * sum_re + sum_im * sum_im) * (1.0 / 64.0);
    }
}

} // namespace qpigeon::kernels
