#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qpigeon/profiles.hpp"

// Parameter sweep over the dimensionless strength x: closed-form columns
// plus an optional numeric oracle column, serialized as CSV. Output is a
// pure function of the configuration, so repeated runs are byte-identical.

namespace qpigeon {

enum class OracleMode { None, Mc, Quad };

struct SweepConfig {
    double x_min = 0.0;
    double x_max = 5.0;
    /// Grid points, endpoints inclusive; at least 2.
    int steps = 51;
    Convention convention = Convention::Eq7;
    OracleMode oracle = OracleMode::None;
    long long samples = 1'000'000;
    int order = 40;
    std::uint64_t seed = 1;
    std::string out_path;
};

struct SweepRecord {
    double x = 0.0;
    double p_lll_closed = 0.0;
    double p_lll_gram = 0.0;
    double p_int_linear = 0.0;
    double p_int_quadratic = 0.0;
    double expectation_u = 0.0;
    std::optional<double> oracle_value;
    std::optional<double> oracle_err;
};

/// Evaluates every column on the uniform grid. Rows come back sorted by x.
/// Throws InvalidRange for an empty or negative grid specification.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Writes comment lines, the fixed header, and one row per record with 17
/// significant digits. Oracle cells are left empty when absent.
void write_sweep_csv(std::ostream& out, const SweepConfig& config,
                     const std::vector<SweepRecord>& records);

/// run_sweep + write to config.out_path ("-" or empty selects stdout).
/// Throws IoError when the path cannot be opened or written.
void run_sweep_to_file(const SweepConfig& config);

std::string to_string(OracleMode mode);
std::string to_string(Convention c);

} // namespace qpigeon
