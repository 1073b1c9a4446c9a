#include "qpigeon/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "qpigeon/errors.hpp"
#include "qpigeon/rng.hpp"

namespace qpigeon::oracle {

namespace {

constexpr long long kMinMcSamples = 10000;
constexpr std::size_t kBlockSamples = 65536;

void require_strength(double x) {
    if (x < 0.0) throw NegativeStrength("interaction strength x must be >= 0");
}

/// Kahan-compensated accumulator; keeps block sums reproducible regardless
/// of how many samples a kernel call handled.
struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

std::array<Vec2, 3> branch_centers(PathConfig b, double x) {
    auto kicks = kick_displacements(b);
    return {x * kicks[0], x * kicks[1], x * kicks[2]};
}

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

BlockMoments reduce_block(const kernels::McBranchTable& table, kernels::McIntegrandFn fn,
                          std::uint64_t seed, long long first, long long count,
                          double axis_scale) {
    std::array<std::vector<double>, kernels::kAxes> coords;
    std::vector<double> values(static_cast<std::size_t>(count));
    double* coord_ptrs[kernels::kAxes];
    for (int a = 0; a < kernels::kAxes; ++a) {
        coords[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(count));
        coord_ptrs[a] = coords[static_cast<std::size_t>(a)].data();
    }
    fill_sample_block(seed, static_cast<std::uint64_t>(first),
                      static_cast<std::size_t>(count), axis_scale, coord_ptrs);
    const double* const_ptrs[kernels::kAxes];
    for (int a = 0; a < kernels::kAxes; ++a) const_ptrs[a] = coord_ptrs[a];
    fn(const_ptrs, static_cast<std::size_t>(count), table, values.data());

    Kahan sum;
    Kahan sum_sq;
    for (double v : values) {
        sum.add(v);
        sum_sq.add(v * v);
    }
    return {sum.sum, sum_sq.sum};
}

} // namespace

complex postselected_amplitude_at(const std::array<double, 6>& point, double x,
                                  Convention c, const SignTriple& post) {
    auto state = DressedState::after_interaction(x, 1.0, c);
    auto phases = detector_phases(post);
    complex total = 0.0;
    for (auto b : PathConfig::all()) {
        auto i = static_cast<std::size_t>(b.index());
        total += phases[i] * state.coefficients[i] * state.branches[i].value(point);
    }
    return total;
}

double proposal_density(const std::array<double, 6>& point, Convention c) {
    const GaussianProfile g{Vec2{0.0, 0.0}, 1.0, c};
    double q = 1.0;
    for (int axis = 0; axis < 3; ++axis) {
        Vec2 r{point[static_cast<std::size_t>(2 * axis)],
               point[static_cast<std::size_t>(2 * axis + 1)]};
        double f = g.value(r);
        q *= f * f;
    }
    return q;
}

double importance_weight_at(const std::array<double, 6>& point, double x, Convention c,
                            const SignTriple& post) {
    complex amp = postselected_amplitude_at(point, x, c, post);
    return std::norm(amp) / (8.0 * proposal_density(point, c));
}

kernels::McBranchTable make_mc_branch_table(double x, Convention c, const SignTriple& post) {
    require_strength(x);
    const double s = profile_width(c, 1.0);
    const double inv_s2 = 1.0 / (s * s);
    auto phases = detector_phases(post);

    kernels::McBranchTable table{};
    for (auto b : PathConfig::all()) {
        auto bi = static_cast<std::size_t>(b.index());
        auto centers = branch_centers(b, x);
        double norm_sq = 0.0;
        for (int axis = 0; axis < 3; ++axis) {
            const auto& m = centers[static_cast<std::size_t>(axis)];
            table.alpha[bi][static_cast<std::size_t>(2 * axis)] = m.x * inv_s2;
            table.alpha[bi][static_cast<std::size_t>(2 * axis + 1)] = m.y * inv_s2;
            norm_sq += norm_squared(m);
        }
        table.beta[bi] = -0.5 * norm_sq * inv_s2;
        table.re_coef[bi] = phases[bi].real();
        table.im_coef[bi] = phases[bi].imag();
    }
    return table;
}

IntegrationResult integrate_mc(double x, Convention c, const SignTriple& post,
                               long long samples, std::uint64_t seed,
                               const McOptions& opts) {
    require_strength(x);
    if (samples < kMinMcSamples)
        throw InsufficientSamples("integrate_mc needs at least 10000 samples, got " +
                                  std::to_string(samples));

    const auto table = make_mc_branch_table(x, c, post);
    kernels::McIntegrandFn fn = kernels::select_kernel();
    if (opts.kernel != nullptr && opts.kernel[0] != '\0') {
        fn = kernels::kernel_by_name(opts.kernel);
        if (fn == nullptr)
            throw InvalidRange(std::string("unknown kernel variant: ") + opts.kernel);
    }
    const double axis_scale = profile_width(c, 1.0) / std::sqrt(2.0);

    const long long block_count =
        (samples + static_cast<long long>(kBlockSamples) - 1) /
        static_cast<long long>(kBlockSamples);
    unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, 64u));

    std::vector<BlockMoments> blocks(static_cast<std::size_t>(block_count));
    auto run_range = [&](long long lo, long long hi) {
        for (long long blk = lo; blk < hi; ++blk) {
            long long first = blk * static_cast<long long>(kBlockSamples);
            long long count =
                std::min<long long>(static_cast<long long>(kBlockSamples), samples - first);
            blocks[static_cast<std::size_t>(blk)] =
                reduce_block(table, fn, seed, first, count, axis_scale);
        }
    };

    if (threads <= 1 || block_count <= 1) {
        run_range(0, block_count);
    } else {
        // Static block partition; values land in a fixed slot per block, so
        // the final reduction order is independent of scheduling.
        long long per = (block_count + threads - 1) / threads;
        std::vector<std::future<void>> tasks;
        for (unsigned t = 0; t < threads; ++t) {
            long long lo = static_cast<long long>(t) * per;
            long long hi = std::min<long long>(lo + per, block_count);
            if (lo >= hi) break;
            tasks.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& task : tasks) task.get();
    }

    Kahan total;
    Kahan total_sq;
    for (const auto& blk : blocks) {
        total.add(blk.sum);
        total_sq.add(blk.sum_sq);
    }

    const double n = static_cast<double>(samples);
    const double mean = total.sum / n;
    double variance = std::max(0.0, total_sq.sum / n - mean * mean);
    IntegrationResult result;
    result.value = mean;
    result.error = std::sqrt(variance / n);
    result.samples_or_order = samples;
    result.seed = seed;
    return result;
}

namespace {

struct HermiteEval {
    double value;            // p_n(x), orthonormal w.r.t. e^{-x^2}
    double derivative;       // p_n'(x)
    double christoffel_sum;  // sum_{k=0}^{n-1} p_k(x)^2 = 1 / weight at a node
};

/// Three-term recurrence for the orthonormal Hermite polynomials:
///   p_0 = pi^{-1/4},  sqrt((k+1)/2) p_{k+1} = x p_k - sqrt(k/2) p_{k-1}.
/// The running sum of squares is the reciprocal Christoffel number, which
/// stays well scaled (< 1e120 for n <= 128) even at the outermost nodes.
HermiteEval orthonormal_hermite(int n, double x) {
    double p_prev = 0.0;
    double p_curr = 1.0 / std::pow(std::acos(-1.0), 0.25);
    double d_prev = 0.0;
    double d_curr = 0.0;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += p_curr * p_curr;
        const double inv = 1.0 / std::sqrt((k + 1) / 2.0);
        const double c = std::sqrt(k / 2.0);
        const double p_next = (x * p_curr - c * p_prev) * inv;
        const double d_next = (p_curr + x * d_curr - c * d_prev) * inv;
        p_prev = p_curr;
        p_curr = p_next;
        d_prev = d_curr;
        d_curr = d_next;
    }
    return {p_curr, d_curr, sum};
}

} // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
    static std::mutex cache_mutex;
    static std::map<int, GaussHermiteRule> cache;

    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Nodes start as eigenvalues of the symmetric tridiagonal Jacobi matrix
    // (off-diagonal sqrt(k/2)) and are polished with two Newton steps on the
    // orthonormal recurrence. Weights are Christoffel numbers
    // 1 / sum_{k<n} p_k(node)^2 rather than eigenvector components, whose
    // first entries underflow the eigensolver's error floor at outer nodes.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double off = std::sqrt(k / 2.0);
        jacobi(k, k - 1) = off;
        jacobi(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);

    GaussHermiteRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double node = solver.eigenvalues()(k);
        for (int step = 0; step < 2; ++step) {
            const auto h = orthonormal_hermite(n, node);
            node -= h.value / h.derivative;
        }
        const auto h = orthonormal_hermite(n, node);
        rule.nodes[static_cast<std::size_t>(k)] = node;
        rule.weights[static_cast<std::size_t>(k)] = 1.0 / h.christoffel_sum;
    }
    // The rule is symmetric about zero; average mirrored entries so the
    // symmetry holds exactly in floating point.
    for (int k = 0; k < n / 2; ++k) {
        const auto lo = static_cast<std::size_t>(k);
        const auto hi = static_cast<std::size_t>(n - 1 - k);
        const double node = 0.5 * (rule.nodes[hi] - rule.nodes[lo]);
        rule.nodes[lo] = -node;
        rule.nodes[hi] = node;
        const double w = 0.5 * (rule.weights[lo] + rule.weights[hi]);
        rule.weights[lo] = w;
        rule.weights[hi] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

namespace {

void require_quad_order(int order) {
    if (order < kMinQuadOrder || order > kMaxQuadOrder)
        throw OrderOutOfRange("quadrature order " + std::to_string(order) +
                              " outside [" + std::to_string(kMinQuadOrder) + ", " +
                              std::to_string(kMaxQuadOrder) + "]");
}

/// One-dimensional overlap integral of two unit-norm Gaussian factors with
/// centers mu and nu along one axis:
///   I(mu, nu) = integral f(t; mu) f(t; nu) dt
/// evaluated with the substitution t = s*u against e^{-u^2} weights. The
/// e^{+u^2} factor restores the bare integrand at the node.
double axis_overlap_quad(const GaussHermiteRule& rule, double s, double mu, double nu) {
    const double inv_norm = 1.0 / (s * std::sqrt(std::acos(-1.0)));
    Kahan acc;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double t = s * rule.nodes[k];
        double du = t - mu;
        double dv = t - nu;
        double f = inv_norm * std::exp(-(du * du + dv * dv) / (2.0 * s * s) +
                                       rule.nodes[k] * rule.nodes[k]);
        acc.add(rule.weights[k] * f);
    }
    return s * acc.sum;
}

/// Probability assembled from pairwise branch overlaps: for each (b, b')
/// the 6-dimensional integral factors into per-axis products.
double quad_probability(double x, Convention c, const SignTriple& post, int order,
                        const std::array<int, 6>& axis_order) {
    const auto& rule = gauss_hermite_rule(order);
    const double s = profile_width(c, 1.0);
    auto phases = detector_phases(post);

    std::array<std::array<double, 6>, PathConfig::kCount> centers_flat{};
    for (auto b : PathConfig::all()) {
        auto centers = branch_centers(b, x);
        auto bi = static_cast<std::size_t>(b.index());
        for (int axis = 0; axis < 3; ++axis) {
            centers_flat[bi][static_cast<std::size_t>(2 * axis)] =
                centers[static_cast<std::size_t>(axis)].x;
            centers_flat[bi][static_cast<std::size_t>(2 * axis + 1)] =
                centers[static_cast<std::size_t>(axis)].y;
        }
    }

    Kahan re_acc;
    for (auto b : PathConfig::all()) {
        for (auto b2 : PathConfig::all()) {
            auto bi = static_cast<std::size_t>(b.index());
            auto bj = static_cast<std::size_t>(b2.index());
            double product = 1.0;
            for (int slot = 0; slot < 6; ++slot) {
                auto axis = static_cast<std::size_t>(axis_order[static_cast<std::size_t>(slot)]);
                product *=
                    axis_overlap_quad(rule, s, centers_flat[bi][axis], centers_flat[bj][axis]);
            }
            complex pair = phases[bi] * std::conj(phases[bj]);
            re_acc.add(pair.real() * product);
        }
    }
    return re_acc.sum / 64.0;
}

} // namespace

IntegrationResult integrate_quad(double x, Convention c, const SignTriple& post, int order,
                                 const std::array<int, 6>& axis_order) {
    require_strength(x);
    require_quad_order(order);
    std::array<int, 6> sorted = axis_order;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 6>{0, 1, 2, 3, 4, 5})
        throw InvalidRange("axis_order must be a permutation of 0..5");

    double value = quad_probability(x, c, post, order, axis_order);
    double refined = quad_probability(x, c, post, std::min(2 * order, 2 * kMaxQuadOrder),
                                      axis_order);
    IntegrationResult result;
    result.value = value;
    result.error = std::abs(refined - value);
    result.samples_or_order = order;
    return result;
}

IntegrationResult u_expectation_quad(double x, Convention c, int order) {
    require_strength(x);
    require_quad_order(order);
    const double s = profile_width(c, 1.0);

    // <phi|U|phi> = (1/8) sum_b prod_axis I(center(b), rotated center(b)).
    auto evaluate = [&](int n) {
        const auto& rule = gauss_hermite_rule(n);
        Kahan acc;
        for (auto b : PathConfig::all()) {
            auto centers = branch_centers(b, x);
            auto images = u_image_centers(centers);
            double product = 1.0;
            for (int axis = 0; axis < 3; ++axis) {
                const auto& mu = centers[static_cast<std::size_t>(axis)];
                const auto& nu = images[static_cast<std::size_t>(axis)];
                product *= axis_overlap_quad(rule, s, mu.x, nu.x);
                product *= axis_overlap_quad(rule, s, mu.y, nu.y);
            }
            acc.add(product);
        }
        return acc.sum / 8.0;
    };

    IntegrationResult result;
    result.value = evaluate(order);
    result.error = std::abs(evaluate(std::min(2 * order, 2 * kMaxQuadOrder)) - result.value);
    result.samples_or_order = order;
    return result;
}

} // namespace qpigeon::oracle
