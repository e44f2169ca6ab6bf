// protocol.hpp
// Full generation plan: EPR creation, doubling rounds, and measurement-based
// reduction to non-power-of-two sizes.

#pragma once

#include "wexpand/pair_interaction.hpp"
#include "wexpand/subspace.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace wexpand {

using Rng = std::mt19937_64;

// Binary-tree plan of cavity passes realizing W_{2^K}, plus the number of
// trailing measurements needed to reach a non-power-of-two target.
struct Schedule {
    std::size_t target_n;
    unsigned rounds_count;        // K = ceil(log2(smallest power of two >= target_n))
    std::vector<RoundPlan> rounds; // round r holds 2^r pairs; round 0 is the EPR pass
    double theta_per_pass;
    double pass_duration;         // s
    std::size_t reduction_count;  // 2^K - target_n
};

struct MeasurementRecord {
    std::size_t measured_atom;
    bool excited;
    double probability_of_outcome;
};

struct ProtocolResult {
    SingleExcitationState state;
    double total_time = 0.0;
    unsigned rounds_executed = 0;
    std::vector<MeasurementRecord> reduction_outcomes;
    bool succeeded = false;
    std::optional<std::uint64_t> seed; // set when randomness was consumed
};

// K = ceil(log2 target_n) doubling rounds at theta = pi/4; requires
// params.theta == pi/4.
Schedule build_schedule(std::size_t target_n, const InteractionParams& params);

// Executes the cascade from W_1. Deterministic for power-of-two targets.
// Schedules with reduction_count > 0 need the rng overload.
ProtocolResult run_ideal(const Schedule& schedule);
ProtocolResult run_ideal(const Schedule& schedule, Rng& rng, std::uint64_t seed);

// Measures the highest-index atom repeatedly until target_n atoms remain.
// Any excited outcome aborts with succeeded = false. For an ideal W_m input
// the overall success probability is target_n / m.
ProtocolResult reduce_to_size(SingleExcitationState state, std::size_t target_n,
                              Rng& rng);

} // namespace wexpand
