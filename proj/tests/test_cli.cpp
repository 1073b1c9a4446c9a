#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qpigeon/observables.hpp"

namespace {

std::string g_cli;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string cmd =
        "\"" + g_cli + "\" " + args + " > " + out_path + " 2> " + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.code = (rc == -1) ? -1 : WEXITSTATUS(rc);
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

bool file_exists(const std::string& path) { return std::ifstream(path).good(); }

constexpr const char* kHeader =
    "x,p_lll_closed,p_lll_gram,p_int_linear,p_int_quadratic,expectation_u,"
    "oracle_value,oracle_err";

} // namespace

TEST_CASE("sweep emits the documented csv structure") {
    const std::string path = "sweep_basic.csv";
    std::remove(path.c_str());
    const auto r = run_cli("sweep --x-min 0 --x-max 5 --steps 51 --convention eq7 --out " +
                           path);
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());

    const auto lines = split_lines(slurp(path));
    std::remove(path.c_str());
    REQUIRE(lines.size() >= 4);

    std::size_t header_at = 0;
    bool convention_comment = false;
    while (header_at < lines.size() && lines[header_at].rfind('#', 0) == 0) {
        if (lines[header_at] == "# convention=eq7") convention_comment = true;
        ++header_at;
    }
    CHECK(convention_comment);
    REQUIRE(header_at < lines.size());
    CHECK(lines[header_at] == kHeader);

    const std::size_t rows = lines.size() - header_at - 1;
    CHECK(rows == 51);

    const auto first = split_fields(lines[header_at + 1]);
    REQUIRE(first.size() == 8);
    CHECK(first[0] == "0");
    CHECK(first[1] == "0.125");
    CHECK(first[6].empty());
    CHECK(first[7].empty());

    // Values are stored with enough digits to round-trip.
    const auto mid = split_fields(lines[header_at + 11]);
    CHECK(mid[1].size() >= 16);
}

TEST_CASE("sweep csv round-trips against the closed forms") {
    const std::string path = "sweep_roundtrip.csv";
    std::remove(path.c_str());
    const auto r =
        run_cli("sweep --x-min 0 --x-max 5 --steps 51 --convention eq9 --out " + path);
    REQUIRE(r.code == 0);

    const auto lines = split_lines(slurp(path));
    std::remove(path.c_str());
    int rows = 0;
    for (const auto& line : lines) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        const auto f = split_fields(line);
        REQUIRE(f.size() == 8);
        const double x = std::stod(f[0]);
        using namespace qpigeon;
        CHECK(std::abs(std::stod(f[1]) - p_all_same_closed(x, Convention::Eq9)) <= 1e-12);
        CHECK(std::abs(std::stod(f[2]) - p_all_same_gram(x, Convention::Eq9)) <= 1e-12);
        CHECK(std::abs(std::stod(f[3]) -
                       p_int(x, Convention::Eq9, PIntVariant::Linear)) <= 1e-12);
        CHECK(std::abs(std::stod(f[4]) -
                       p_int(x, Convention::Eq9, PIntVariant::Quadratic)) <= 1e-12);
        CHECK(std::abs(std::stod(f[5]) - expectation_u(x, Convention::Eq9)) <= 1e-12);
        ++rows;
    }
    CHECK(rows == 51);
}

TEST_CASE("sweep runs are byte-identical for a fixed seed") {
    const std::string a = "sweep_det_a.csv";
    const std::string b = "sweep_det_b.csv";
    const std::string flags =
        "sweep --x-min 0 --x-max 2 --steps 5 --oracle mc --samples 65536 --seed 42 --out ";
    REQUIRE(run_cli(flags + a).code == 0);
    REQUIRE(run_cli(flags + b).code == 0);
    const auto bytes_a = slurp(a);
    const auto bytes_b = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    REQUIRE(!bytes_a.empty());
    CHECK(bytes_a == bytes_b);
    CHECK(bytes_a.find("# oracle=mc samples=65536 seed=42") != std::string::npos);
}

TEST_CASE("sweep quadrature oracle column tracks the closed form") {
    const std::string path = "sweep_quad.csv";
    const auto r = run_cli(
        "sweep --x-min 0 --x-max 2 --steps 5 --oracle quad --order 40 --out " + path);
    REQUIRE(r.code == 0);
    const auto lines = split_lines(slurp(path));
    std::remove(path.c_str());
    int rows = 0;
    for (const auto& line : lines) {
        if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
        const auto f = split_fields(line);
        REQUIRE(f.size() == 8);
        REQUIRE(!f[6].empty());
        REQUIRE(!f[7].empty());
        CHECK(std::abs(std::stod(f[6]) - std::stod(f[1])) <= 1e-9);
        CHECK(std::stod(f[7]) <= 1e-9);
        ++rows;
    }
    CHECK(rows == 5);
}

TEST_CASE("sweep accepts the variant flag without changing the csv") {
    const std::string a = "sweep_var_a.csv";
    const std::string b = "sweep_var_b.csv";
    REQUIRE(run_cli("sweep --steps 11 --x-min 0 --x-max 1 --out " + a).code == 0);
    REQUIRE(run_cli("sweep --steps 11 --x-min 0 --x-max 1 --variant quadratic --out " + b)
                .code == 0);
    const auto bytes_a = slurp(a);
    const auto bytes_b = slurp(b);
    std::remove(a.c_str());
    std::remove(b.c_str());
    CHECK(bytes_a == bytes_b);

    CHECK(run_cli("sweep --steps 11 --variant cubic --out sweep_var_c.csv").code != 0);
    CHECK(!file_exists("sweep_var_c.csv"));
}

TEST_CASE("sweep rejects bad grids without touching the output file") {
    const std::string path = "sweep_bad.csv";
    std::remove(path.c_str());

    auto r = run_cli("sweep --x-min 3 --x-max 1 --out " + path);
    CHECK(r.code != 0);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(!file_exists(path));

    r = run_cli("sweep --x-min -1 --x-max 1 --out " + path);
    CHECK(r.code != 0);
    CHECK(!file_exists(path));

    r = run_cli("sweep --steps 1 --out " + path);
    CHECK(r.code != 0);
    CHECK(!file_exists(path));

    r = run_cli("sweep --convention eq5 --out " + path);
    CHECK(r.code != 0);
    CHECK(!file_exists(path));

    r = run_cli("sweep --oracle mc --samples 10 --out " + path);
    CHECK(r.code != 0);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(!file_exists(path));
}

TEST_CASE("weak value table prints the frozen rows") {
    const auto r = run_cli("weak-values");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Pi_same_12  : 0 + 0i") != std::string::npos);
    CHECK(r.out.find("Pi_same_13  : 0 + 0i") != std::string::npos);
    CHECK(r.out.find("Pi_same_23  : 0 + 0i") != std::string::npos);
    CHECK(r.out.find("Pi_same_123 : -0.5 + 0i") != std::string::npos);
    CHECK(r.out.find("LLL : -0.25 + 0.25i") != std::string::npos);
    CHECK(r.out.find("LLR : 0.25 + 0.25i") != std::string::npos);
    CHECK(r.out.find("RRL : 0.25 - 0.25i") != std::string::npos);
    CHECK(r.out.find("RRR : -0.25 - 0.25i") != std::string::npos);
    CHECK(r.out.find("post-selection probability: 0.125") != std::string::npos);
}

TEST_CASE("minimum report prints the frozen location per convention") {
    auto r = run_cli("min --convention eq7");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("x_star") != std::string::npos);
    CHECK(r.out.find("1.42944132") != std::string::npos);
    CHECK(r.out.find("0.09014314988") != std::string::npos);

    r = run_cli("min --convention eq9");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("1.01076765") != std::string::npos);
    CHECK(r.out.find("0.09014314988") != std::string::npos);
}

TEST_CASE("distribution prints eight probabilities that sum to one") {
    const auto r = run_cli("distribution --x 1 --convention eq9");
    REQUIRE(r.code == 0);

    const auto expect = qpigeon::output_distribution(1.0, qpigeon::Convention::Eq9);
    int found = 0;
    double sum_printed = -1.0;
    for (const auto& line : split_lines(r.out)) {
        const auto colon = line.find(" : ");
        if (colon == std::string::npos) continue;
        std::string key = line.substr(0, colon);
        key.erase(0, key.find_first_not_of(' '));
        const double value = std::stod(line.substr(colon + 3));
        if (key == "sum") {
            sum_printed = value;
            continue;
        }
        for (int s = 0; s < 8; ++s)
            if (key == qpigeon::pattern_label(s)) {
                CHECK(std::abs(value - expect[static_cast<std::size_t>(s)]) <= 1e-12);
                ++found;
            }
    }
    CHECK(found == 8);
    CHECK(std::abs(sum_printed - 1.0) <= 1e-12);
}

TEST_CASE("errors exit nonzero and never reach standard output") {
    auto r = run_cli("distribution --x -0.5");
    CHECK(r.code != 0);
    CHECK(r.err.find("error") != std::string::npos);
    CHECK(r.out.find("error") == std::string::npos);

    CHECK(run_cli("distribution").code != 0);
    CHECK(run_cli("no-such-command").code != 0);
    CHECK(run_cli("").code != 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli>\n", argv[0]);
        return 2;
    }
    g_cli = argv[1];

    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
