#include "wexpand/noise.hpp"

#include <cmath>

namespace wexpand {

namespace {

unsigned rounds_for(std::size_t target_n) {
    unsigned k = 0;
    while ((std::size_t{1} << k) < target_n)
        ++k;
    return k;
}

} // namespace

void NoiseConfig::validate() const {
    if (theta_sigma < 0.0 || !std::isfinite(theta_sigma))
        throw std::invalid_argument("NoiseConfig: theta_sigma must be >= 0");
    if (!(t_radiative > 0.0) || !std::isfinite(t_radiative))
        throw std::invalid_argument("NoiseConfig: T_r must be positive");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

TrajectoryOutcome sample_noisy_run(const Schedule& schedule, const NoiseConfig& noise,
                                   std::uint64_t seed) {
    noise.validate();
    Rng rng(seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double p_decay =
        noise.decay_enabled ? 1.0 - std::exp(-schedule.pass_duration / noise.t_radiative)
                            : 0.0;

    SingleExcitationState state = canonical_w(1);
    for (const RoundPlan& round : schedule.rounds) {
        state.extend_with_ground(state.size());
        for (const PairRotation& pair : round.pairs) {
            PairRotation noisy = pair;
            if (noise.theta_sigma > 0.0)
                noisy.theta += noise.theta_sigma * jitter(rng);
            apply_pair_inplace(state, noisy);
        }
        if (noise.decay_enabled) {
            for (std::size_t k = 0; k < state.size(); ++k) {
                const double p_jump = p_decay * std::norm(state[k]);
                if (uniform(rng) < p_jump) {
                    // excitation lost to the environment; register is all-ground
                    SingleExcitationState dead(
                        std::vector<Complex>(state.size(), Complex{0.0, 0.0}));
                    return TrajectoryOutcome{std::move(dead), true, 0.0};
                }
                state.at(k) *= std::sqrt(1.0 - p_decay);
                state.normalize();
            }
        }
    }

    if (schedule.reduction_count > 0) {
        ProtocolResult reduced = reduce_to_size(std::move(state), schedule.target_n, rng);
        const double fid = reduced.succeeded ? w_class_fidelity(reduced.state) : 0.0;
        return TrajectoryOutcome{std::move(reduced.state), false, fid};
    }
    const double fid = w_class_fidelity(state);
    return TrajectoryOutcome{std::move(state), false, fid};
}

FidelityEstimate estimate_fidelity(const Schedule& schedule, const NoiseConfig& noise,
                                   std::size_t trials) {
    if (trials < 1)
        throw std::invalid_argument("estimate_fidelity: trials must be >= 1");
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
        const TrajectoryOutcome out =
            sample_noisy_run(schedule, noise, derive_seed(noise.seed, i));
        const double x = out.fidelity_sample;
        const double d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (x - mean);
    }
    const double stderr_ =
        trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1) /
                               static_cast<double>(trials))
                   : 0.0;
    return FidelityEstimate{mean, stderr_, trials};
}

FeasibilityReport feasibility(const InteractionParams& params, std::size_t target_n,
                              double t_radiative, double budget) {
    params.validate();
    if (target_n < 2)
        throw std::invalid_argument("feasibility: target_n must be >= 2");
    if (!(t_radiative > 0.0) || !(budget > 0.0))
        throw std::invalid_argument("feasibility: T_r and budget must be positive");

    FeasibilityReport r;
    r.t_pass = kQuarterTurn / params.lambda;
    r.t_process = 4.0 * r.t_pass; // pi*delta/g^2
    r.total_time = static_cast<double>(rounds_for(target_n)) * r.t_pass;
    r.decay_probability_per_atom = 1.0 - std::exp(-r.total_time / t_radiative);
    // relative epsilon keeps exact-ratio budgets from flooring one short
    const auto whole = [](double x) {
        return static_cast<unsigned>(std::floor(x * (1.0 + 1e-12)));
    };
    r.max_rounds = whole(budget * t_radiative / r.t_pass);
    r.max_size = std::pow(2.0, static_cast<double>(r.max_rounds));
    r.max_rounds_process = whole(budget * t_radiative / r.t_process);
    r.max_size_process = std::pow(2.0, static_cast<double>(r.max_rounds_process));
    r.params_echo = params;
    return r;
}

} // namespace wexpand
