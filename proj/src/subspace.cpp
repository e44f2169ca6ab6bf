#include "wexpand/subspace.hpp"

#include <bit>
#include <cmath>
#include <unordered_set>

namespace wexpand {

void apply_pair_inplace(SingleExcitationState& state, const PairRotation& rot) {
    const std::size_t n = state.size();
    if (rot.i >= n || rot.j >= n)
        throw std::out_of_range("apply_pair: atom index out of range");
    if (rot.i == rot.j)
        throw std::invalid_argument("apply_pair: pair indices must differ");
    if (!std::isfinite(rot.theta))
        throw std::invalid_argument("apply_pair: non-finite pulse angle");

    const Complex phase = std::exp(Complex{0.0, -rot.theta});
    const double c = std::cos(rot.theta);
    const double s = std::sin(rot.theta);
    const Complex ci = state[rot.i];
    const Complex cj = state[rot.j];
    state.at(rot.i) = phase * (c * ci - Complex{0.0, 1.0} * s * cj);
    state.at(rot.j) = phase * (c * cj - Complex{0.0, 1.0} * s * ci);
}

SingleExcitationState apply_pair(SingleExcitationState state, const PairRotation& rot) {
    apply_pair_inplace(state, rot);
    return state;
}

void apply_round_inplace(SingleExcitationState& state, const RoundPlan& plan) {
    std::unordered_set<std::size_t> seen;
    for (const PairRotation& rot : plan.pairs) {
        if (!seen.insert(rot.i).second || !seen.insert(rot.j).second)
            throw std::invalid_argument("apply_round: atom index repeated within a round");
    }
    for (const PairRotation& rot : plan.pairs)
        apply_pair_inplace(state, rot);
}

RoundPlan doubling_round(std::size_t n, double theta) {
    RoundPlan plan;
    plan.pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        plan.pairs.push_back(PairRotation{k, n + k, theta});
    return plan;
}

SingleExcitationState expand_double(const SingleExcitationState& state,
                                    double theta, std::size_t size_cap) {
    const std::size_t n = state.size();
    if (2 * n > size_cap)
        throw std::invalid_argument("expand_double: size cap exceeded");
    SingleExcitationState out = state;
    out.extend_with_ground(n);
    apply_round_inplace(out, doubling_round(n, theta));
    return out;
}

Complex analytic_amplitude(std::size_t k, unsigned rounds) {
    if (rounds >= 64 || k >= (std::size_t{1} << rounds))
        throw std::out_of_range("analytic_amplitude: atom index out of range");
    const double mag = std::pow(2.0, -0.5 * static_cast<double>(rounds));
    const Complex round_phase =
        std::exp(Complex{0.0, -kQuarterTurn * static_cast<double>(rounds)});
    // (-i)^b cycles with period 4
    static const Complex minus_i_pow[4] = {
        {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
    const unsigned b = static_cast<unsigned>(std::popcount(k));
    return mag * round_phase * minus_i_pow[b % 4];
}

SingleExcitationState interleaved_order(const SingleExcitationState& s) {
    const std::size_t n = s.size();
    if (n % 2 != 0)
        throw std::invalid_argument("interleaved_order: even atom count required");
    const std::size_t half = n / 2;
    std::vector<Complex> amps(n);
    for (std::size_t k = 0; k < half; ++k) {
        amps[2 * k] = s[half + k]; // ancilla of pair k
        amps[2 * k + 1] = s[k];    // original atom k
    }
    return SingleExcitationState(std::move(amps));
}

} // namespace wexpand
