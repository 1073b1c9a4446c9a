#include <CLI11.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "qpigeon/errors.hpp"
#include "qpigeon/observables.hpp"
#include "qpigeon/pathspace.hpp"
#include "qpigeon/profiles.hpp"
#include "qpigeon/sweep.hpp"

namespace {

using namespace qpigeon;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// The weak-value table consists of exact rationals of the ideal calculation;
// 15 significant digits plus suppression of sub-1e-13 residue prints those
// rationals instead of their few-ulp floating point neighbours.
double chop(double v) {
    return std::abs(v) < 1e-13 ? 0.0 : v;
}

std::string fmt_table(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.15g", chop(v));
    return buf;
}

std::string fmt_table(complex z) {
    const double re = chop(z.real());
    const double im = chop(z.imag());
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%.15g %c %.15gi", re, im < 0 ? '-' : '+', std::abs(im));
    return buf;
}

int cmd_weak_values() {
    const auto pre = plus_state();
    const auto post = post_state(kAllPlus);
    const complex overlap = inner(post, pre);

    std::cout << "weak values, pre = |+++>, post = |+i+i+i>\n\n";
    struct Row {
        const char* name;
        DiagonalProjector proj;
    };
    const std::array<Row, 4> rows = {{
        {"Pi_same_12 ", DiagonalProjector::same_pair(0, 1)},
        {"Pi_same_13 ", DiagonalProjector::same_pair(0, 2)},
        {"Pi_same_23 ", DiagonalProjector::same_pair(1, 2)},
        {"Pi_same_123", DiagonalProjector::same_all()},
    }};
    for (const auto& row : rows)
        std::cout << "  " << row.name << " : " << fmt_table(weak_value(row.proj, pre, post))
                  << "\n";

    std::cout << "\nfour-term decomposition of Pi_same_12 (terms cancel pairwise):\n";
    const auto proj12 = DiagonalProjector::same_pair(0, 1);
    for (auto b : PathConfig::all()) {
        if (!proj12.contains(b)) continue;
        auto i = static_cast<std::size_t>(b.index());
        complex term = std::conj(post.amplitudes[i]) * pre.amplitudes[i] / overlap;
        std::cout << "  " << b.label() << " : " << fmt_table(term) << "\n";
    }

    std::cout << "\npost-selection probability: " << fmt_table(std::norm(overlap)) << "\n";
    return 0;
}

int cmd_min(Convention convention) {
    const auto report = find_minimum(convention);
    const double analytic_x7 = 2.0 * std::sqrt(std::log(5.0 / 3.0));
    const double analytic_x =
        convention == Convention::Eq7 ? analytic_x7 : analytic_x7 / std::sqrt(2.0);
    const double analytic_p = (1.0 - std::pow(3.0 / 5.0, 2.5)) / 8.0;

    std::cout << "convention      : " << to_string(convention) << "\n";
    std::cout << "x_star          : " << fmt(report.x_star) << "\n";
    std::cout << "p_star          : " << fmt(report.p_star) << "\n";
    std::cout << "iterations      : " << report.iterations << "\n";
    std::cout << "analytic x_star : " << fmt(analytic_x)
              << (convention == Convention::Eq7 ? "  = 2*sqrt(ln(5/3))"
                                                : "  = 2*sqrt(ln(5/3))/sqrt(2)")
              << "\n";
    std::cout << "analytic p_star : " << fmt(analytic_p) << "  = (1 - (3/5)^(5/2))/8\n";
    return 0;
}

int cmd_distribution(double x, Convention convention) {
    const auto dist = output_distribution(x, convention);
    std::cout << "output distribution, convention=" << to_string(convention)
              << ", x=" << fmt(x) << "\n\n";
    double sum = 0.0;
    for (int s = 0; s < 8; ++s) {
        auto p = dist[static_cast<std::size_t>(s)];
        std::cout << "  " << pattern_label(s) << " : " << fmt(p) << "\n";
        sum += p;
    }
    std::cout << "\n  sum : " << fmt(sum) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-particle interferometer observables: closed forms, numeric "
                 "oracles, and reproducible CSV sweeps"};
    app.require_subcommand(1);

    const std::map<std::string, Convention> convention_names{{"eq7", Convention::Eq7},
                                                             {"eq9", Convention::Eq9}};
    const std::map<std::string, OracleMode> oracle_names{
        {"none", OracleMode::None}, {"mc", OracleMode::Mc}, {"quad", OracleMode::Quad}};

    SweepConfig config;
    std::string variant = "linear";
    auto* sweep = app.add_subcommand("sweep", "Evaluate all columns on a uniform x grid "
                                              "and write CSV");
    sweep->add_option("--x-min", config.x_min, "Grid start (>= 0)")
        ->capture_default_str();
    sweep->add_option("--x-max", config.x_max, "Grid end (> x-min)")
        ->capture_default_str();
    sweep->add_option("--steps", config.steps, "Grid points, endpoints inclusive (>= 2)")
        ->capture_default_str();
    sweep
        ->add_option("--convention", config.convention,
                     "Width convention: eq7 scales overlaps as exp(-d^2 x^2/8), eq9 as "
                     "exp(-d^2 x^2/4)")
        ->transform(CLI::CheckedTransformer(convention_names, CLI::ignore_case))
        ->default_str("eq7");
    sweep
        ->add_option("--variant", variant,
                     "Interference-loss variant (linear|quadratic); accepted for "
                     "interface compatibility, the CSV always carries both columns")
        ->check(CLI::IsMember({"linear", "quadratic"}));
    sweep
        ->add_option("--oracle", config.oracle,
                     "Numeric cross-check column: none, mc, or quad")
        ->transform(CLI::CheckedTransformer(oracle_names, CLI::ignore_case))
        ->default_str("none");
    sweep->add_option("--samples", config.samples, "Monte Carlo samples (oracle=mc)")
        ->capture_default_str();
    sweep->add_option("--order", config.order, "Quadrature order (oracle=quad)")
        ->capture_default_str();
    sweep->add_option("--seed", config.seed, "Monte Carlo seed (oracle=mc)")
        ->capture_default_str();
    sweep->add_option("--out", config.out_path, "Output path; '-' or empty writes stdout");

    Convention min_convention = Convention::Eq7;
    auto* min_cmd = app.add_subcommand("min", "Locate the interior minimum of the "
                                              "same-detector probability");
    min_cmd->add_option("--convention", min_convention, "Width convention (eq7|eq9)")
        ->transform(CLI::CheckedTransformer(convention_names, CLI::ignore_case))
        ->default_str("eq7");

    auto* weak = app.add_subcommand("weak-values", "Print the pre/post-selected weak "
                                                   "values and the pairwise-cancelling "
                                                   "decomposition");

    double dist_x = 0.0;
    Convention dist_convention = Convention::Eq7;
    auto* dist = app.add_subcommand("distribution", "Print the eight detector sign-pattern "
                                                    "probabilities at one x");
    dist->add_option("--x", dist_x, "Dimensionless strength (>= 0)")->required();
    dist->add_option("--convention", dist_convention, "Width convention (eq7|eq9)")
        ->transform(CLI::CheckedTransformer(convention_names, CLI::ignore_case))
        ->default_str("eq7");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sweep->parsed()) {
            run_sweep_to_file(config);
            return 0;
        }
        if (weak->parsed()) return cmd_weak_values();
        if (min_cmd->parsed()) return cmd_min(min_convention);
        if (dist->parsed()) return cmd_distribution(dist_x, dist_convention);
    } catch (const qpigeon::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
