#include "wexpand/io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace wexpand;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("wexpand_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

double get_double(const Record& rec, const std::string& key) {
    for (const auto& [k, v] : rec)
        if (k == key)
            return std::get<double>(v);
    FAIL("missing key ", key);
    return 0.0;
}

int run_cli_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("wexpand");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace

TEST_CASE("defaults follow the hardware parameters") {
    const RunConfig cfg = parse_config({"feasibility"});
    CHECK(cfg.command == "feasibility");
    CHECK(cfg.g_hz == 24000.0);
    CHECK(cfg.delta_over_g == 10.0);
    CHECK(cfg.t_r_s == 0.03);
    CHECK(cfg.n_max == 5);
    CHECK(cfg.output_format == "json");

    const auto p = cfg.params();
    CHECK(p.g == doctest::Approx(2.0 * 3.14159265358979323846 * 24000.0).epsilon(1e-15));
    CHECK(p.delta == doctest::Approx(10.0 * p.g).epsilon(1e-15));
}

TEST_CASE("flags override config file values override defaults") {
    TempDir tmp;
    const fs::path cfg_file = tmp.path / "run.cfg";
    {
        std::ofstream out(cfg_file);
        out << "# sample config\n";
        out << "trials = 1000\n";
        out << "seed = 42\n";
    }
    const RunConfig cfg = parse_config(
        {"simulate", "--config", cfg_file.string(), "--trials", "5000"});
    CHECK(cfg.trials == 5000); // flag wins
    CHECK(cfg.seed == 42);     // file wins over default
}

TEST_CASE("unknown config keys are rejected") {
    TempDir tmp;
    const fs::path cfg_file = tmp.path / "bad.cfg";
    {
        std::ofstream out(cfg_file);
        out << "no_such_key = 1\n";
    }
    CHECK(run_cli_args({"simulate", "--config", cfg_file.string()}) == 2);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run_cli_args({"expand", "--target-n", "0"}) == 2);
    CHECK(run_cli_args({"no-such-command"}) == 2);
    CHECK(run_cli_args({"expand", "--trials", "abc"}) == 2);
    CHECK(run_cli_args({"feasibility", "--g-hz", "-5"}) == 2);
}

TEST_CASE("numerical guard exits with code 3") {
    // a one-rung ladder cannot hold the leaked photon population
    TempDir tmp;
    CHECK(run_cli_args({"validate", "--n-max", "1", "-o",
                        (tmp.path / "x.json").string()}) == 3);
}

TEST_CASE("expand --target-n 4 record carries the golden magnitudes and phases") {
    RunConfig cfg = parse_config({"expand", "--target-n", "4"});
    const auto records = run_command(cfg);
    REQUIRE(records.size() == 1);
    const Record& rec = records.front();
    const Complex a0{get_double(rec, "amp0_re"), get_double(rec, "amp0_im")};
    const Complex a1{get_double(rec, "amp1_re"), get_double(rec, "amp1_im")};
    const Complex a2{get_double(rec, "amp2_re"), get_double(rec, "amp2_im")};
    const Complex a3{get_double(rec, "amp3_re"), get_double(rec, "amp3_im")};
    for (const Complex& a : {a0, a1, a2, a3})
        CHECK(std::abs(a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::arg(a1 / a0) == doctest::Approx(-M_PI / 2).epsilon(1e-12));
    CHECK(std::arg(a2 / a0) == doctest::Approx(-M_PI / 2).epsilon(1e-12));
    CHECK(std::abs(std::abs(std::arg(a3 / a0)) - M_PI) < 1e-12);
}

TEST_CASE("large expand falls back to summary statistics") {
    RunConfig cfg = parse_config({"expand", "--target-n", "128"});
    const Record rec = run_command(cfg).front();
    const double expected = std::pow(2.0, -3.5);
    CHECK(get_double(rec, "min_magnitude") == doctest::Approx(expected).epsilon(1e-9));
    CHECK(get_double(rec, "max_magnitude") == doctest::Approx(expected).epsilon(1e-9));
    for (const auto& [k, v] : rec)
        CHECK(k.rfind("amp", 0) != 0);
}

TEST_CASE("reduce command reports a frequency near the telescoping product") {
    RunConfig cfg = parse_config(
        {"reduce", "--from", "4", "--to", "3", "--trials", "20000", "--seed", "7"});
    const Record rec = run_command(cfg).front();
    const double freq = get_double(rec, "success_frequency");
    CHECK(get_double(rec, "expected_probability") == doctest::Approx(0.75));
    CHECK(std::abs(freq - 0.75) < 3.0 * std::sqrt(0.75 * 0.25 / 20000.0));
}

TEST_CASE("every record echoes the seed and configuration") {
    for (const char* cmd : {"epr", "expand", "schedule", "feasibility"}) {
        RunConfig cfg = parse_config({cmd});
        for (const Record& rec : run_command(cfg)) {
            for (const char* key : {"command", "seed", "g_hz", "delta_over_g", "t_r_s",
                                    "theta_sigma", "trials", "n_max"}) {
                const bool found = std::any_of(rec.begin(), rec.end(),
                                               [&](const auto& kv) { return kv.first == key; });
                CHECK_MESSAGE(found, "missing ", key, " in ", cmd);
            }
        }
    }
}

TEST_CASE("CSV and JSON emissions agree on keys and values") {
    RunConfig cfg = parse_config({"validate"});
    const auto records = run_command(cfg);
    REQUIRE(records.size() == 4);

    std::ostringstream csv_os, json_os;
    write_csv(csv_os, records);
    write_json(json_os, records);

    // parse the CSV back
    std::istringstream csv_in(csv_os.str());
    std::string line;
    REQUIRE(std::getline(csv_in, line));
    std::vector<std::string> headers;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ','))
            headers.push_back(cell);
    }

    const auto parsed = nlohmann::json::parse(json_os.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == records.size());

    for (const auto& obj : parsed) {
        REQUIRE(std::getline(csv_in, line));
        std::istringstream rs(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(rs, cell, ',')) {
            REQUIRE(col < headers.size());
            const auto& jval = obj.at(headers[col]);
            if (jval.is_number_float())
                CHECK(std::stod(cell) == jval.get<double>()); // %.17g round-trips
            else if (jval.is_number_integer())
                CHECK(std::stoll(cell) == jval.get<long long>());
            else
                CHECK(cell == jval.get<std::string>());
            ++col;
        }
        CHECK(col == headers.size());
        CHECK(obj.size() == headers.size());
    }
}

TEST_CASE("identical config and seed produce byte-identical files") {
    TempDir tmp;
    for (const char* format : {"csv", "json"}) {
        std::vector<std::string> runs;
        for (int i = 0; i < 2; ++i) {
            const fs::path out = tmp.path / ("run" + std::to_string(i) + "." + format);
            RunConfig cfg = parse_config({"noise-sweep", "--target-n", "4", "--trials",
                                          "200", "--seed", "11", "--decay", "--format",
                                          format, "-o", out.string()});
            emit_records(cfg, run_command(cfg), std::cout);
            runs.push_back(slurp(out));
        }
        CHECK(runs[0] == runs[1]);
        CHECK(!runs[0].empty());
    }
}

TEST_CASE("spawned binary honors exit codes and env config") {
#ifdef WEXPAND_CLI_PATH
    TempDir tmp;
    const std::string cli = WEXPAND_CLI_PATH;
    const fs::path out = tmp.path / "feas.json";
    CHECK(std::system((cli + " feasibility -o " + out.string()).c_str()) == 0);
    CHECK(slurp(out).find("t_pass_s") != std::string::npos);

    const int bad = std::system((cli + " expand --target-n 0 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(bad) == 2);

    // default config path via environment variable
    const fs::path cfg_file = tmp.path / "env.cfg";
    {
        std::ofstream f(cfg_file);
        f << "target-n = 8\n";
    }
    const fs::path out2 = tmp.path / "env.json";
    const std::string cmd = "WEXPAND_CONFIG=" + cfg_file.string() + " " + cli +
                            " schedule -o " + out2.string();
    CHECK(std::system(cmd.c_str()) == 0);
    const auto parsed = nlohmann::json::parse(slurp(out2));
    CHECK(parsed.at(0).at("target_n") == 8);
#endif
}
