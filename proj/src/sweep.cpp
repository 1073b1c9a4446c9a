#include "qpigeon/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include "qpigeon/errors.hpp"
#include "qpigeon/observables.hpp"
#include "qpigeon/oracle.hpp"
#include "qpigeon/pathspace.hpp"

namespace qpigeon {

namespace {

std::vector<double> uniform_grid(double x_min, double x_max, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    const double span = x_max - x_min;
    for (int i = 0; i < steps; ++i) {
        // Endpoint-exact affine form; the last entry is x_max itself.
        grid[static_cast<std::size_t>(i)] =
            x_min + span * (static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    grid.back() = x_max;
    return grid;
}

void append_number(std::string& row, double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    row += buf;
}

} // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    if (config.x_min < 0.0)
        throw InvalidRange("x_min must be nonnegative, got " + std::to_string(config.x_min));
    if (!(config.x_min < config.x_max))
        throw InvalidRange("x_min must be strictly below x_max");
    if (config.steps < 2)
        throw InvalidRange("steps must be at least 2, got " + std::to_string(config.steps));

    const auto grid = uniform_grid(config.x_min, config.x_max, config.steps);
    std::vector<SweepRecord> records;
    records.reserve(grid.size());
    for (double x : grid) {
        SweepRecord rec;
        rec.x = x;
        rec.p_lll_closed = p_all_same_closed(x, config.convention);
        rec.p_lll_gram = p_all_same_gram(x, config.convention);
        rec.p_int_linear = p_int(x, config.convention, PIntVariant::Linear);
        rec.p_int_quadratic = p_int(x, config.convention, PIntVariant::Quadratic);
        rec.expectation_u = expectation_u(x, config.convention);
        switch (config.oracle) {
        case OracleMode::None:
            break;
        case OracleMode::Mc: {
            auto r = oracle::integrate_mc(x, config.convention, kAllPlus, config.samples,
                                          config.seed);
            rec.oracle_value = r.value;
            rec.oracle_err = r.error;
            break;
        }
        case OracleMode::Quad: {
            auto r = oracle::integrate_quad(x, config.convention, kAllPlus, config.order);
            rec.oracle_value = r.value;
            rec.oracle_err = r.error;
            break;
        }
        }
        records.push_back(rec);
    }
    return records;
}

void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<SweepRecord>& records) {
    out << "# qpigeon sweep\n";
    out << "# convention=" << to_string(config.convention) << "\n";
    {
        std::string line = "# x_min=";
        append_number(line, config.x_min);
        line += " x_max=";
        append_number(line, config.x_max);
        line += " steps=" + std::to_string(config.steps);
        out << line << "\n";
    }
    out << "# oracle=" << to_string(config.oracle);
    if (config.oracle == OracleMode::Mc)
        out << " samples=" << config.samples << " seed=" << config.seed;
    if (config.oracle == OracleMode::Quad) out << " order=" << config.order;
    out << "\n";
    out << "x,p_lll_closed,p_lll_gram,p_int_linear,p_int_quadratic,expectation_u,"
           "oracle_value,oracle_err\n";

    for (const auto& rec : records) {
        std::string row;
        row.reserve(192);
        append_number(row, rec.x);
        row += ',';
        append_number(row, rec.p_lll_closed);
        row += ',';
        append_number(row, rec.p_lll_gram);
        row += ',';
        append_number(row, rec.p_int_linear);
        row += ',';
        append_number(row, rec.p_int_quadratic);
        row += ',';
        append_number(row, rec.expectation_u);
        row += ',';
        if (rec.oracle_value) append_number(row, *rec.oracle_value);
        row += ',';
        if (rec.oracle_err) append_number(row, *rec.oracle_err);
        row += '\n';
        out << row;
    }
    if (!out) throw IoError("failed while writing sweep CSV");
}

void run_sweep_to_file(const SweepConfig& config) {
    auto records = run_sweep(config);
    if (config.out_path.empty() || config.out_path == "-") {
        write_sweep_csv(std::cout, config, records);
        return;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) throw IoError("cannot open output path: " + config.out_path);
    write_sweep_csv(file, config, records);
    file.close();
    if (!file) throw IoError("failed to finalize output path: " + config.out_path);
}

std::string to_string(OracleMode mode) {
    switch (mode) {
    case OracleMode::None: return "none";
    case OracleMode::Mc: return "mc";
    case OracleMode::Quad: return "quad";
    }
    return "none";
}

std::string to_string(Convention c) {
    return c == Convention::Eq7 ? "eq7" : "eq9";
}

} // namespace qpigeon
