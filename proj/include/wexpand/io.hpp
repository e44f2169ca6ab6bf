// io.hpp
// Command-line front end, configuration parsing, and machine-readable
// result emission (CSV / JSON).

#pragma once

#include "wexpand/pair_interaction.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wexpand {

// Environment variable overriding the default config-file path.
inline constexpr const char* kConfigEnvVar = "WEXPAND_CONFIG";

struct RunConfig {
    std::string command;
    std::int64_t target_n = 4;
    double g_hz = 24000.0;      // paper default; converted to rad/s via 2*pi
    double delta_over_g = 10.0;
    double t_r_s = 0.03;
    double theta_sigma = 0.0;
    bool decay = false;
    std::int64_t trials = 10000;
    std::int64_t seed = 1;
    std::int64_t n_max = 5;
    std::int64_t reduce_from = 0; // 0: smallest power of two >= reduce_to
    std::int64_t reduce_to = 3;
    std::string output_path;      // empty: stdout
    std::string output_format = "json";

    // The single unit-conversion point: g_hz (ordinary frequency, Hz) to
    // angular rad/s, delta = delta_over_g * g, theta fixed at pi/4.
    InteractionParams params() const;
};

using RecordValue = std::variant<std::int64_t, double, std::string>;
using Record = std::vector<std::pair<std::string, RecordValue>>;

// Flags override config-file values override defaults; unknown keys are
// rejected. Throws CLI::ParseError (handled by run_cli) on bad input.
RunConfig parse_config(const std::vector<std::string>& args);

// Executes the configured command. All records of one run share a fixed
// key order, starting with the config echo.
std::vector<Record> run_command(const RunConfig& cfg);

// 17-significant-digit float formatting used by both emitters.
std::string format_float(double v);

void write_csv(std::ostream& os, const std::vector<Record>& records);
void write_json(std::ostream& os, const std::vector<Record>& records);

// Writes to cfg.output_path (or stdout when empty) in cfg.output_format.
void emit_records(const RunConfig& cfg, const std::vector<Record>& records,
                  std::ostream& fallback);

// Full CLI entry point. Exit codes: 0 ok, 2 config error, 3 numerical guard.
int run_cli(int argc, const char* const* argv);

} // namespace wexpand
