// state.hpp
// Complex-amplitude state representations and metrics shared by all modules.
//
// Basis conventions (used bit-exactly everywhere):
//   * per atom, |g> comes before |e>;
//   * atoms left-to-right in declared order, photon ladder (when present) last;
//   * dense vectors are row-major over the subsystem list.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wexpand {

using Complex = std::complex<double>;

constexpr double kAlgebraTol = 1e-12; // algebraic identities
constexpr double kNormTol = 1e-9;     // normalization after long pipelines

// Violation of a numerical invariant (normalization drift, photon-ladder
// truncation headroom). The CLI maps this to exit code 3.
struct NumericalGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State of n atoms restricted to the one-excitation manifold:
// amps[k] is the coefficient of the basis state with atom k excited,
// all others ground. The all-ground amplitude is identically zero for
// every state reachable by the protocol.
class SingleExcitationState {
public:
    explicit SingleExcitationState(std::vector<Complex> amps);

    std::size_t size() const { return amps_.size(); }
    const std::vector<Complex>& amps() const { return amps_; }

    Complex operator[](std::size_t k) const { return amps_.at(k); }
    Complex& at(std::size_t k) { return amps_.at(k); }

    double norm() const;
    void normalize();
    void check_normalized(double tol = kNormTol) const;

    // Appends `count` ground ancilla atoms (zero amplitudes) at the end.
    void extend_with_ground(std::size_t count);

    // Removes the last atom; its amplitude must be (numerically) zero,
    // i.e. the atom has been measured in |g>.
    void drop_last_atom();

private:
    std::vector<Complex> amps_;
};

// Dense state vector over an explicit subsystem list. Atom subsystems have
// dimension 2, a photon ladder has dimension n_max+1.
class PureStateDense {
public:
    PureStateDense(std::vector<std::size_t> dims, std::vector<Complex> amps);

    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<Complex>& amps() const { return amps_; }
    std::vector<Complex>& amps() { return amps_; }
    std::size_t dim() const { return amps_.size(); }

    double norm() const;
    void normalize();

private:
    std::vector<std::size_t> dims_;
    std::vector<Complex> amps_;
};

Complex inner_product(const PureStateDense& a, const PureStateDense& b);

double fidelity(const PureStateDense& a, const PureStateDense& b);
double fidelity(const SingleExcitationState& a, const SingleExcitationState& b);

// Fidelity to the canonical W_n maximized over per-atom phase corrections:
// (sum_k |amps[k]| / sqrt(n))^2. Equals 1 iff all magnitudes are 1/sqrt(n).
double w_class_fidelity(const SingleExcitationState& s);

// |W_n> with all amplitudes 1/sqrt(n), real.
SingleExcitationState canonical_w(std::size_t n);

// Dense 2^n vector with amps[k] at the index of the basis state with atom k
// excited (bit n-1-k set, |g>=0 / |e>=1, atom 0 most significant).
PureStateDense to_dense(const SingleExcitationState& s, std::size_t max_atoms = 20);

// Inverse of to_dense on the single-excitation sector; amplitudes outside
// the sector are discarded. All dims must be 2.
SingleExcitationState project_single_excitation(const PureStateDense& d);

// Multiplies by a unit scalar so the first nonzero amplitude is real and
// positive. Golden comparisons and CLI emission use this phase convention.
SingleExcitationState fix_global_phase(const SingleExcitationState& s);

} // namespace wexpand
