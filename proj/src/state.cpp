#include "wexpand/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wexpand {

namespace {

bool all_finite(const std::vector<Complex>& v) {
    return std::all_of(v.begin(), v.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

double norm_of(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& c : v)
        s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

SingleExcitationState::SingleExcitationState(std::vector<Complex> amps)
    : amps_(std::move(amps)) {
    if (amps_.empty())
        throw std::invalid_argument("SingleExcitationState: need at least one atom");
    if (!all_finite(amps_))
        throw std::invalid_argument("SingleExcitationState: non-finite amplitude");
}

double SingleExcitationState::norm() const { return norm_of(amps_); }

void SingleExcitationState::normalize() {
    const double n = norm();
    if (n <= 0.0)
        throw NumericalGuardError("SingleExcitationState: cannot normalize zero state");
    for (Complex& c : amps_)
        c /= n;
}

void SingleExcitationState::check_normalized(double tol) const {
    if (std::abs(norm() - 1.0) > tol)
        throw NumericalGuardError("SingleExcitationState: norm drifted beyond tolerance");
}

void SingleExcitationState::extend_with_ground(std::size_t count) {
    amps_.resize(amps_.size() + count, Complex{0.0, 0.0});
}

void SingleExcitationState::drop_last_atom() {
    if (amps_.size() < 2)
        throw std::invalid_argument("drop_last_atom: state has a single atom");
    if (std::abs(amps_.back()) > kNormTol)
        throw std::invalid_argument("drop_last_atom: last atom still carries amplitude");
    amps_.pop_back();
}

PureStateDense::PureStateDense(std::vector<std::size_t> dims, std::vector<Complex> amps)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
    if (dims_.empty())
        throw std::invalid_argument("PureStateDense: empty subsystem list");
    std::size_t total = 1;
    for (std::size_t d : dims_) {
        if (d < 1)
            throw std::invalid_argument("PureStateDense: subsystem dimension < 1");
        total *= d;
    }
    if (amps_.size() != total)
        throw std::invalid_argument("PureStateDense: amplitude count does not match dims");
    if (!all_finite(amps_))
        throw std::invalid_argument("PureStateDense: non-finite amplitude");
}

double PureStateDense::norm() const { return norm_of(amps_); }

void PureStateDense::normalize() {
    const double n = norm();
    if (n <= 0.0)
        throw NumericalGuardError("PureStateDense: cannot normalize zero state");
    for (Complex& c : amps_)
        c /= n;
}

Complex inner_product(const PureStateDense& a, const PureStateDense& b) {
    if (a.dims() != b.dims())
        throw std::invalid_argument("inner_product: dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amps()[i]) * b.amps()[i];
    return acc;
}

double fidelity(const PureStateDense& a, const PureStateDense& b) {
    return std::norm(inner_product(a, b));
}

double fidelity(const SingleExcitationState& a, const SingleExcitationState& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("fidelity: atom count mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k)
        acc += std::conj(a[k]) * b[k];
    return std::norm(acc);
}

double w_class_fidelity(const SingleExcitationState& s) {
    double mag_sum = 0.0;
    for (const Complex& c : s.amps())
        mag_sum += std::abs(c);
    const double amp = mag_sum / std::sqrt(static_cast<double>(s.size()));
    return amp * amp;
}

SingleExcitationState canonical_w(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("canonical_w: n must be >= 1");
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    return SingleExcitationState(std::vector<Complex>(n, Complex{a, 0.0}));
}

PureStateDense to_dense(const SingleExcitationState& s, std::size_t max_atoms) {
    const std::size_t n = s.size();
    if (n > max_atoms)
        throw std::invalid_argument("to_dense: atom count exceeds dense-size cap");
    std::vector<Complex> amps(std::size_t{1} << n, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k)
        amps[std::size_t{1} << (n - 1 - k)] = s[k];
    return PureStateDense(std::vector<std::size_t>(n, 2), std::move(amps));
}

SingleExcitationState project_single_excitation(const PureStateDense& d) {
    const std::size_t n = d.dims().size();
    for (std::size_t dim : d.dims())
        if (dim != 2)
            throw std::invalid_argument("project_single_excitation: all subsystems must be qubits");
    std::vector<Complex> amps(n);
    for (std::size_t k = 0; k < n; ++k)
        amps[k] = d.amps()[std::size_t{1} << (n - 1 - k)];
    return SingleExcitationState(std::move(amps));
}

SingleExcitationState fix_global_phase(const SingleExcitationState& s) {
    Complex phase{1.0, 0.0};
    for (const Complex& c : s.amps()) {
        if (std::abs(c) > kAlgebraTol) {
            phase = c / std::abs(c);
            break;
        }
    }
    std::vector<Complex> amps(s.amps());
    for (Complex& c : amps)
        c /= phase;
    return SingleExcitationState(std::move(amps));
}

} // namespace wexpand
