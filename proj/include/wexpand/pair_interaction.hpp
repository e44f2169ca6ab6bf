// pair_interaction.hpp
// Physics core for one detuned cavity pass: the analytic effective
// propagator on two atoms, the photon-resolved effective operator, and the
// exact detuned atom-cavity model used to quantify the dispersive
// approximation.
//
// Two-atom basis order is |gg>, |ge>, |eg>, |ee>. The combined space is
// atom (x) atom (x) photon ladder, photon last, row-major.

#pragma once

#include "wexpand/state.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace wexpand {

using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

// Physical knobs of one cavity pass. theta and t are linked by
// theta = lambda * t with lambda = g^2 / delta.
struct InteractionParams {
    double g;      // atom-cavity coupling, rad/s
    double delta;  // detuning omega_0 - omega, rad/s
    double lambda; // g^2 / delta, rad/s
    double theta;  // pulse angle lambda * t, rad
    double t;      // pass duration, s

    static InteractionParams from_g_delta_theta(double g, double delta, double theta);
    static InteractionParams from_g_delta_time(double g, double delta, double t);

    void validate() const;
};

struct ExactModelConfig {
    std::size_t n_max = 5; // photon-ladder truncation
};

// Worst case over the four atomic basis inputs at vacuum.
struct ApproximationReport {
    double infidelity;     // 1 - fidelity of the vacuum-projected atomic state
    double photon_leakage; // population outside the zero-photon sector
    double ratio;          // delta / g
};

// Vacuum effective propagator:
//   |gg> -> |gg>
//   |ge> -> e^{-i theta}(cos theta |ge> - i sin theta |eg>)
//   |eg> -> e^{-i theta}(cos theta |eg> - i sin theta |ge>)
//   |ee> -> e^{-2 i theta}|ee>
Matrix4c effective_propagator(double theta);

// The 4x4 vacuum effective Hamiltonian, in units of lambda:
// diag(0, 1, 1, 2) plus excitation hopping between |ge> and |eg>.
Matrix4c vacuum_effective_hamiltonian();

// Photon-resolved effective Hamiltonian on atom (x) atom (x) ladder, in
// units of lambda: sum_j(|e_j><e_j| a a^dag - |g_j><g_j| a^dag a) plus the
// atom-atom exchange term.
MatrixXc build_eq2_operator(std::size_t n_max);

// Exact interaction-picture propagator of the detuned model. The
// time-dependent Hamiltonian equals e^{iAt} H_c e^{-iAt} with
// A = delta * (excited-atom count) and H_c the resonant coupling, so
// U_I(t) = e^{iAt} exp(-i (A + H_c) t), evaluated by eigendecomposition.
MatrixXc exact_propagator(const InteractionParams& params, std::size_t n_max);

// Runs the exact and effective propagators on each atomic basis state at
// vacuum and reports worst-case infidelity and photon leakage. Throws
// NumericalGuardError when population reaches the top ladder rung
// (truncation too small).
ApproximationReport compare_effective_exact(const InteractionParams& params,
                                            const ExactModelConfig& config = {});

} // namespace wexpand
