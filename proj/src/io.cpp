#include "wexpand/io.hpp"

#include "wexpand/noise.hpp"
#include "wexpand/protocol.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

namespace wexpand {

namespace {

const std::vector<std::string> kCommands = {
    "epr", "expand", "simulate", "validate", "schedule",
    "feasibility", "noise-sweep", "reduce"};

void build_app(CLI::App& app, RunConfig& cfg) {
    app.description("W-state expansion protocol simulator");
    app.add_option("command", cfg.command, "One of: epr, expand, simulate, validate, "
                                           "schedule, feasibility, noise-sweep, reduce")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("--target-n", cfg.target_n, "Target atom count");
    app.add_option("--g-hz", cfg.g_hz, "Atom-cavity coupling g as ordinary frequency, Hz");
    app.add_option("--delta-over-g", cfg.delta_over_g, "Detuning ratio delta/g");
    app.add_option("--t-r", cfg.t_r_s, "Radiative lifetime T_r, s");
    app.add_option("--theta-sigma", cfg.theta_sigma, "Per-pass pulse-angle jitter, rad");
    app.add_flag("--decay", cfg.decay, "Enable radiative decay in noisy runs");
    app.add_option("--trials", cfg.trials, "Monte-Carlo trial count");
    app.add_option("--seed", cfg.seed, "Base RNG seed");
    app.add_option("--n-max", cfg.n_max, "Photon-ladder truncation");
    app.add_option("--from", cfg.reduce_from,
                   "Source size for reduce (default: next power of two above --to)");
    app.add_option("--to", cfg.reduce_to, "Target size for reduce");
    app.add_option("--output,-o", cfg.output_path, "Output file (default: stdout)");
    app.add_option("--format", cfg.output_format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.set_config("--config", "", "Flat key = value config file")
        ->envname(kConfigEnvVar);
    app.allow_config_extras(CLI::config_extras_mode::error);
}

void validate_numeric(const RunConfig& cfg) {
    if (!(cfg.g_hz > 0.0))
        throw std::invalid_argument("g_hz must be positive");
    if (!(cfg.delta_over_g > 0.0))
        throw std::invalid_argument("delta_over_g must be positive");
    if (!(cfg.t_r_s > 0.0))
        throw std::invalid_argument("t_r_s must be positive");
    if (cfg.theta_sigma < 0.0)
        throw std::invalid_argument("theta_sigma must be >= 0");
    if (cfg.trials < 1)
        throw std::invalid_argument("trials must be >= 1");
    if (cfg.seed < 0)
        throw std::invalid_argument("seed must be >= 0");
    if (cfg.n_max < 1)
        throw std::invalid_argument("n_max must be >= 1");
    const bool needs_target = cfg.command == "expand" || cfg.command == "simulate" ||
                              cfg.command == "schedule" || cfg.command == "feasibility" ||
                              cfg.command == "noise-sweep";
    if (needs_target && cfg.target_n < 2)
        throw std::invalid_argument("target_n must be >= 2");
    if (cfg.command == "reduce") {
        if (cfg.reduce_to < 1)
            throw std::invalid_argument("to must be >= 1");
        if (cfg.reduce_from < 0)
            throw std::invalid_argument("from must be >= 0");
    }
}

Record base_echo(const RunConfig& cfg) {
    Record r;
    r.emplace_back("command", cfg.command);
    r.emplace_back("seed", cfg.seed);
    r.emplace_back("target_n", cfg.target_n);
    r.emplace_back("g_hz", cfg.g_hz);
    r.emplace_back("delta_over_g", cfg.delta_over_g);
    r.emplace_back("t_r_s", cfg.t_r_s);
    r.emplace_back("theta_sigma", cfg.theta_sigma);
    r.emplace_back("decay", static_cast<std::int64_t>(cfg.decay ? 1 : 0));
    r.emplace_back("trials", cfg.trials);
    r.emplace_back("n_max", cfg.n_max);
    return r;
}

void append_amplitudes(Record& rec, const SingleExcitationState& s) {
    const SingleExcitationState fixed = fix_global_phase(s);
    for (std::size_t k = 0; k < fixed.size(); ++k) {
        rec.emplace_back("amp" + std::to_string(k) + "_re", fixed[k].real());
        rec.emplace_back("amp" + std::to_string(k) + "_im", fixed[k].imag());
    }
}

std::vector<Record> cmd_epr(const RunConfig& cfg) {
    const Schedule s = build_schedule(2, cfg.params());
    const ProtocolResult res = run_ideal(s);
    Record rec = base_echo(cfg);
    rec.emplace_back("n_atoms", static_cast<std::int64_t>(res.state.size()));
    rec.emplace_back("rounds", static_cast<std::int64_t>(res.rounds_executed));
    rec.emplace_back("total_time_s", res.total_time);
    rec.emplace_back("w_class_fidelity", w_class_fidelity(res.state));
    rec.emplace_back("norm", res.state.norm());
    append_amplitudes(rec, res.state);
    return {rec};
}

std::vector<Record> cmd_expand(const RunConfig& cfg) {
    const Schedule s = build_schedule(static_cast<std::size_t>(cfg.target_n), cfg.params());
    ProtocolResult res = [&] {
        if (s.reduction_count == 0)
            return run_ideal(s);
        Rng rng(static_cast<std::uint64_t>(cfg.seed));
        return run_ideal(s, rng, static_cast<std::uint64_t>(cfg.seed));
    }();
    Record rec = base_echo(cfg);
    rec.emplace_back("n_atoms", static_cast<std::int64_t>(res.state.size()));
    rec.emplace_back("rounds", static_cast<std::int64_t>(res.rounds_executed));
    rec.emplace_back("total_time_s", res.total_time);
    rec.emplace_back("succeeded", static_cast<std::int64_t>(res.succeeded ? 1 : 0));
    rec.emplace_back("w_class_fidelity",
                     res.succeeded ? w_class_fidelity(res.state) : 0.0);
    rec.emplace_back("norm", res.state.norm());
    if (res.state.size() <= 64) {
        append_amplitudes(rec, res.state);
    } else {
        double lo = 1.0, hi = 0.0;
        for (const Complex& c : res.state.amps()) {
            lo = std::min(lo, std::abs(c));
            hi = std::max(hi, std::abs(c));
        }
        rec.emplace_back("min_magnitude", lo);
        rec.emplace_back("max_magnitude", hi);
    }
    return {rec};
}

std::vector<Record> cmd_simulate(const RunConfig& cfg) {
    const Schedule s = build_schedule(static_cast<std::size_t>(cfg.target_n), cfg.params());
    NoiseConfig noise{cfg.theta_sigma, cfg.t_r_s, cfg.decay,
                      static_cast<std::uint64_t>(cfg.seed)};
    const FidelityEstimate est =
        estimate_fidelity(s, noise, static_cast<std::size_t>(cfg.trials));
    Record rec = base_echo(cfg);
    rec.emplace_back("mean_fidelity", est.mean);
    rec.emplace_back("stderr", est.stderr_);
    return {rec};
}

std::vector<Record> cmd_validate(const RunConfig& cfg) {
    std::vector<Record> out;
    const double g = 2.0 * std::numbers::pi * cfg.g_hz;
    for (double ratio : {10.0, 20.0, 50.0, 100.0}) {
        const InteractionParams p =
            InteractionParams::from_g_delta_theta(g, ratio * g, kQuarterTurn);
        const ApproximationReport rep =
            compare_effective_exact(p, ExactModelConfig{static_cast<std::size_t>(cfg.n_max)});
        Record rec = base_echo(cfg);
        rec.emplace_back("ratio", rep.ratio);
        rec.emplace_back("infidelity", rep.infidelity);
        rec.emplace_back("photon_leakage", rep.photon_leakage);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<Record> cmd_schedule(const RunConfig& cfg) {
    const Schedule s = build_schedule(static_cast<std::size_t>(cfg.target_n), cfg.params());
    std::size_t passes = 0;
    for (const RoundPlan& r : s.rounds)
        passes += r.pairs.size();
    Record rec = base_echo(cfg);
    rec.emplace_back("rounds", static_cast<std::int64_t>(s.rounds_count));
    rec.emplace_back("passes_total", static_cast<std::int64_t>(passes));
    rec.emplace_back("theta_per_pass", s.theta_per_pass);
    rec.emplace_back("t_pass_s", s.pass_duration);
    rec.emplace_back("total_time_s", s.rounds_count * s.pass_duration);
    rec.emplace_back("reduction_count", static_cast<std::int64_t>(s.reduction_count));
    return {rec};
}

std::vector<Record> cmd_feasibility(const RunConfig& cfg) {
    const FeasibilityReport rep = feasibility(
        cfg.params(), static_cast<std::size_t>(cfg.target_n), cfg.t_r_s);
    Record rec = base_echo(cfg);
    rec.emplace_back("t_pass_s", rep.t_pass);
    rec.emplace_back("t_process_s", rep.t_process);
    rec.emplace_back("total_time_s", rep.total_time);
    rec.emplace_back("decay_probability_per_atom", rep.decay_probability_per_atom);
    rec.emplace_back("max_rounds", static_cast<std::int64_t>(rep.max_rounds));
    rec.emplace_back("max_size", rep.max_size);
    rec.emplace_back("max_rounds_process", static_cast<std::int64_t>(rep.max_rounds_process));
    rec.emplace_back("max_size_process", rep.max_size_process);
    return {rec};
}

std::vector<Record> cmd_noise_sweep(const RunConfig& cfg) {
    const Schedule s = build_schedule(static_cast<std::size_t>(cfg.target_n), cfg.params());
    std::vector<Record> out;
    for (int decay = 0; decay <= 1; ++decay) {
        for (double sigma : {0.0, 0.01, 0.02, 0.05, 0.1}) {
            NoiseConfig noise{sigma, cfg.t_r_s, decay == 1,
                              static_cast<std::uint64_t>(cfg.seed)};
            const FidelityEstimate est =
                estimate_fidelity(s, noise, static_cast<std::size_t>(cfg.trials));
            Record rec = base_echo(cfg);
            rec.emplace_back("sweep_theta_sigma", sigma);
            rec.emplace_back("sweep_decay", static_cast<std::int64_t>(decay));
            rec.emplace_back("mean_fidelity", est.mean);
            rec.emplace_back("stderr", est.stderr_);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<Record> cmd_reduce(const RunConfig& cfg) {
    const std::size_t to = static_cast<std::size_t>(cfg.reduce_to);
    std::size_t from = static_cast<std::size_t>(cfg.reduce_from);
    if (from == 0) {
        from = 1;
        while (from < to)
            from *= 2;
    }
    if (to > from)
        throw std::invalid_argument("to must not exceed from");

    // power-of-two sources come from the actual cascade, others from the
    // canonical W (same magnitudes, so identical reduction statistics)
    const SingleExcitationState source = [&] {
        if (from >= 2 && (from & (from - 1)) == 0)
            return run_ideal(build_schedule(from, cfg.params())).state;
        return canonical_w(from);
    }();

    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    std::size_t successes = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        Rng rng(derive_seed(static_cast<std::uint64_t>(cfg.seed), i));
        if (reduce_to_size(source, to, rng).succeeded)
            ++successes;
    }
    const double freq = static_cast<double>(successes) / static_cast<double>(trials);
    Record rec = base_echo(cfg);
    rec.emplace_back("from", static_cast<std::int64_t>(from));
    rec.emplace_back("to", static_cast<std::int64_t>(to));
    rec.emplace_back("successes", static_cast<std::int64_t>(successes));
    rec.emplace_back("success_frequency", freq);
    rec.emplace_back("expected_probability",
                     static_cast<double>(to) / static_cast<double>(from));
    rec.emplace_back("frequency_stderr",
                     std::sqrt(freq * (1.0 - freq) / static_cast<double>(trials)));
    return {rec};
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string value_to_string(const RecordValue& v) {
    if (std::holds_alternative<std::int64_t>(v))
        return std::to_string(std::get<std::int64_t>(v));
    if (std::holds_alternative<double>(v))
        return format_float(std::get<double>(v));
    return csv_escape(std::get<std::string>(v));
}

} // namespace

InteractionParams RunConfig::params() const {
    const double g = 2.0 * std::numbers::pi * g_hz;
    return InteractionParams::from_g_delta_theta(g, delta_over_g * g, kQuarterTurn);
}

RunConfig parse_config(const std::vector<std::string>& args) {
    RunConfig cfg;
    CLI::App app{"wexpand"};
    build_app(app, cfg);
    std::vector<const char*> argv;
    argv.push_back("wexpand");
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
    return cfg;
}

std::vector<Record> run_command(const RunConfig& cfg) {
    validate_numeric(cfg);
    if (cfg.command == "epr")
        return cmd_epr(cfg);
    if (cfg.command == "expand")
        return cmd_expand(cfg);
    if (cfg.command == "simulate")
        return cmd_simulate(cfg);
    if (cfg.command == "validate")
        return cmd_validate(cfg);
    if (cfg.command == "schedule")
        return cmd_schedule(cfg);
    if (cfg.command == "feasibility")
        return cmd_feasibility(cfg);
    if (cfg.command == "noise-sweep")
        return cmd_noise_sweep(cfg);
    if (cfg.command == "reduce")
        return cmd_reduce(cfg);
    throw std::invalid_argument("unknown command: " + cfg.command);
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const std::vector<Record>& records) {
    if (records.empty())
        return;
    for (const Record& rec : records)
        if (rec.size() != records.front().size())
            throw std::logic_error("write_csv: records with differing key sets");
    for (std::size_t i = 0; i < records.front().size(); ++i)
        os << (i ? "," : "") << csv_escape(records.front()[i].first);
    os << "\n";
    for (const Record& rec : records) {
        for (std::size_t i = 0; i < rec.size(); ++i) {
            if (rec[i].first != records.front()[i].first)
                throw std::logic_error("write_csv: key order mismatch");
            os << (i ? "," : "") << value_to_string(rec[i].second);
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const std::vector<Record>& records) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Record& rec : records) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [key, value] : rec) {
            if (std::holds_alternative<std::int64_t>(value))
                obj[key] = std::get<std::int64_t>(value);
            else if (std::holds_alternative<double>(value))
                obj[key] = std::get<double>(value);
            else
                obj[key] = std::get<std::string>(value);
        }
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << "\n";
}

void emit_records(const RunConfig& cfg, const std::vector<Record>& records,
                  std::ostream& fallback) {
    std::ofstream file;
    std::ostream* os = &fallback;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path, std::ios::binary);
        if (!file)
            throw std::invalid_argument("cannot open output file: " + cfg.output_path);
        os = &file;
    }
    if (cfg.output_format == "csv")
        write_csv(*os, records);
    else
        write_json(*os, records);
}

int run_cli(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"wexpand"};
    build_app(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        emit_records(cfg, run_command(cfg), std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalGuardError& e) {
        std::cerr << "numerical guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace wexpand
