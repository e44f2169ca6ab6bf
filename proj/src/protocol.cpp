#include "wexpand/protocol.hpp"

#include <cmath>

namespace wexpand {

namespace {

unsigned rounds_for(std::size_t target_n) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < target_n)
        ++k;
    return k;
}

SingleExcitationState run_cascade(const Schedule& schedule) {
    SingleExcitationState state = canonical_w(1);
    for (const RoundPlan& round : schedule.rounds) {
        state.extend_with_ground(state.size());
        apply_round_inplace(state, round);
    }
    state.check_normalized();
    return state;
}

} // namespace

Schedule build_schedule(std::size_t target_n, const InteractionParams& params) {
    if (target_n < 2)
        throw std::invalid_argument("build_schedule: target_n must be >= 2");
    params.validate();
    if (std::abs(params.theta - kQuarterTurn) > kAlgebraTol)
        throw std::invalid_argument("build_schedule: params.theta must be pi/4");

    Schedule s;
    s.target_n = target_n;
    s.rounds_count = rounds_for(target_n);
    s.theta_per_pass = params.theta;
    s.pass_duration = params.t;
    s.reduction_count = (std::size_t{1} << s.rounds_count) - target_n;
    for (unsigned r = 0; r < s.rounds_count; ++r)
        s.rounds.push_back(doubling_round(std::size_t{1} << r, s.theta_per_pass));
    return s;
}

ProtocolResult run_ideal(const Schedule& schedule) {
    if (schedule.reduction_count > 0)
        throw std::invalid_argument(
            "run_ideal: non-power-of-two target needs a randomness source");
    ProtocolResult res{run_cascade(schedule)};
    res.rounds_executed = schedule.rounds_count;
    res.total_time = schedule.rounds_count * schedule.pass_duration;
    res.succeeded = true;
    return res;
}

ProtocolResult run_ideal(const Schedule& schedule, Rng& rng, std::uint64_t seed) {
    ProtocolResult res = reduce_to_size(run_cascade(schedule), schedule.target_n, rng);
    res.rounds_executed = schedule.rounds_count;
    res.total_time = schedule.rounds_count * schedule.pass_duration;
    res.seed = seed;
    return res;
}

ProtocolResult reduce_to_size(SingleExcitationState state, std::size_t target_n,
                              Rng& rng) {
    if (target_n < 1 || target_n > state.size())
        throw std::invalid_argument("reduce_to_size: invalid target size");

    ProtocolResult res{std::move(state)};
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    while (res.state.size() > target_n) {
        const std::size_t atom = res.state.size() - 1;
        const double p_excited = std::norm(res.state[atom]);
        const bool excited = uniform(rng) < p_excited;
        res.reduction_outcomes.push_back(
            MeasurementRecord{atom, excited, excited ? p_excited : 1.0 - p_excited});
        if (excited) {
            // excitation measured out; remaining atoms are all ground
            res.succeeded = false;
            return res;
        }
        res.state.at(atom) = Complex{0.0, 0.0};
        res.state.normalize();
        res.state.drop_last_atom();
    }
    res.succeeded = true;
    return res;
}

} // namespace wexpand
