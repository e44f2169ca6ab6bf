// noise.hpp
// Monte-Carlo noise trajectories (pulse-angle jitter, radiative decay) and
// the hardware feasibility calculator.

#pragma once

#include "wexpand/protocol.hpp"

#include <cstdint>

namespace wexpand {

struct NoiseConfig {
    double theta_sigma = 0.0;  // std. dev. of per-pass Gaussian jitter, rad
    double t_radiative = 0.03; // atomic radiative lifetime T_r, s
    bool decay_enabled = false;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrajectoryOutcome {
    SingleExcitationState state; // all-ground placeholder when decayed
    bool decayed = false;
    double fidelity_sample = 0.0; // w_class_fidelity of final state, 0 if decayed
};

struct FidelityEstimate {
    double mean;
    double stderr_;
    std::size_t trials;
};

// Hardware budget. The paper's timing argument admits two accountings: the
// exact per-pass duration pi*delta/(4 g^2) and the coarser per-process
// order figure pi*delta/g^2; the report carries both.
struct FeasibilityReport {
    double t_pass;           // (pi/4)/lambda, s
    double t_process;        // pi*delta/g^2 = 4 * t_pass, s
    double total_time;       // ceil(log2 target_n) * t_pass, s
    double decay_probability_per_atom; // 1 - exp(-total_time / T_r)
    unsigned max_rounds;          // per-pass accounting
    double max_size;              // 2^max_rounds (double; can exceed 2^63)
    unsigned max_rounds_process;  // per-process accounting
    double max_size_process;
    InteractionParams params_echo;
};

// Deterministic per-trial sub-seed derivation (splitmix64 over base ^ index),
// so trajectory results are independent of execution order.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// One noisy trajectory: every pass draws theta ~ Normal(theta_per_pass,
// theta_sigma^2); after each round every atom may lose its excited component
// with p = 1 - exp(-pass_duration / T_r) (Born-weighted jump), which
// collapses the register to all-ground and marks the trajectory decayed.
// With all noise off this is bitwise identical to run_ideal.
TrajectoryOutcome sample_noisy_run(const Schedule& schedule, const NoiseConfig& noise,
                                   std::uint64_t seed);

// Sample mean and standard error of fidelity_sample over seeded trials.
FidelityEstimate estimate_fidelity(const Schedule& schedule, const NoiseConfig& noise,
                                   std::size_t trials);

// Pure timing arithmetic; budget scales T_r (default: the whole lifetime).
FeasibilityReport feasibility(const InteractionParams& params, std::size_t target_n,
                              double t_radiative, double budget = 1.0);

} // namespace wexpand
