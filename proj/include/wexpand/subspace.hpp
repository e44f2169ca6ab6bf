// subspace.hpp
// O(n)-memory simulation of the expansion cascade on the single-excitation
// manifold, plus the closed-form amplitude oracle for the ideal cascade.

#pragma once

#include "wexpand/state.hpp"

#include <cstddef>
#include <vector>

namespace wexpand {

inline constexpr double kQuarterTurn = 0.7853981633974483096; // pi/4

// One cavity pass acting on atoms i and j with pulse angle theta.
struct PairRotation {
    std::size_t i;
    std::size_t j;
    double theta;
};

// A parallel set of cavity passes; no atom index may appear twice.
struct RoundPlan {
    std::vector<PairRotation> pairs;
};

// Default cap on the amplitude count of the iterative engine (2^24).
inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 24;

// c_i <- e^{-i theta}(cos theta * c_i - i sin theta * c_j)
// c_j <- e^{-i theta}(cos theta * c_j - i sin theta * c_i)
// All other amplitudes untouched; norm preserved.
void apply_pair_inplace(SingleExcitationState& state, const PairRotation& rot);
SingleExcitationState apply_pair(SingleExcitationState state, const PairRotation& rot);

// Applies every pair of the round; validates disjointness of the index sets.
void apply_round_inplace(SingleExcitationState& state, const RoundPlan& plan);

// Builds the doubling round for an n-atom register: ancillas occupy indices
// n..2n-1, pair (k, n+k), all passes at the same angle.
RoundPlan doubling_round(std::size_t n, double theta = kQuarterTurn);

// W_n -> W_2n: appends n ground ancillas and applies doubling_round(n).
SingleExcitationState expand_double(const SingleExcitationState& state,
                                    double theta = kQuarterTurn,
                                    std::size_t size_cap = kDefaultSizeCap);

// Amplitude of atom k in the ideal cascade output W_{2^K} started from W_1.
// Each of the K pairings contributes e^{-i pi/4}/sqrt(2), with an extra -i
// whenever atom k sits on the ancilla branch of that round, i.e. when the
// corresponding bit of k is set:
//   amp(k, K) = 2^{-K/2} e^{-i K pi/4} (-i)^{popcount(k)}
Complex analytic_amplitude(std::size_t k, unsigned rounds);

// Reorders a cascade output from storage order (originals first, ancillas
// appended) into the interleaved order in which ancilla k precedes original
// atom k. For W_4 this is the (a1', a2', b1', b2') labeling.
SingleExcitationState interleaved_order(const SingleExcitationState& s);

} // namespace wexpand
