#include "wexpand/pair_interaction.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace wexpand {

namespace {

constexpr Complex kI{0.0, 1.0};

// Index into atom (x) atom (x) ladder space; a1, a2 in {0=g, 1=e}.
std::size_t idx(std::size_t a1, std::size_t a2, std::size_t photon, std::size_t n_photon) {
    return (a1 * 2 + a2) * n_photon + photon;
}

} // namespace

InteractionParams InteractionParams::from_g_delta_theta(double g, double delta,
                                                        double theta) {
    InteractionParams p;
    p.g = g;
    p.delta = delta;
    p.lambda = g * g / delta;
    p.theta = theta;
    p.t = theta / p.lambda;
    p.validate();
    return p;
}

InteractionParams InteractionParams::from_g_delta_time(double g, double delta, double t) {
    InteractionParams p;
    p.g = g;
    p.delta = delta;
    p.lambda = g * g / delta;
    p.t = t;
    p.theta = p.lambda * t;
    p.validate();
    return p;
}

void InteractionParams::validate() const {
    if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument("InteractionParams: g must be positive");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw std::invalid_argument("InteractionParams: delta must be positive");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("InteractionParams: t must be non-negative");
    if (std::abs(lambda - g * g / delta) > 1e-12 * std::abs(lambda))
        throw std::invalid_argument("InteractionParams: lambda inconsistent with g^2/delta");
    if (!std::isfinite(theta))
        throw std::invalid_argument("InteractionParams: non-finite theta");
}

Matrix4c effective_propagator(double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("effective_propagator: non-finite theta");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex ph = std::exp(-kI * theta);
    Matrix4c u = Matrix4c::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = ph * c;
    u(2, 1) = ph * (-kI) * s;
    u(1, 2) = ph * (-kI) * s;
    u(2, 2) = ph * c;
    u(3, 3) = std::exp(-2.0 * kI * theta);
    return u;
}

Matrix4c vacuum_effective_hamiltonian() {
    Matrix4c h = Matrix4c::Zero();
    h(1, 1) = 1.0;
    h(2, 2) = 1.0;
    h(3, 3) = 2.0;
    h(1, 2) = 1.0;
    h(2, 1) = 1.0;
    return h;
}

MatrixXc build_eq2_operator(std::size_t n_max) {
    if (n_max < 1)
        throw std::invalid_argument("build_eq2_operator: n_max must be >= 1");
    const std::size_t np = n_max + 1;
    const std::size_t dim = 4 * np;
    MatrixXc h = MatrixXc::Zero(dim, dim);
    for (std::size_t a1 = 0; a1 < 2; ++a1) {
        for (std::size_t a2 = 0; a2 < 2; ++a2) {
            const double excited = static_cast<double>(a1 + a2);
            const double ground = 2.0 - excited;
            for (std::size_t n = 0; n < np; ++n) {
                const double nn = static_cast<double>(n);
                // |e><e| a a^dag contributes n+1, |g><g| a^dag a contributes -n
                h(idx(a1, a2, n, np), idx(a1, a2, n, np)) =
                    excited * (nn + 1.0) - ground * nn;
            }
        }
    }
    // S1+ S2- + S1- S2+
    for (std::size_t n = 0; n < np; ++n) {
        h(idx(1, 0, n, np), idx(0, 1, n, np)) = 1.0;
        h(idx(0, 1, n, np), idx(1, 0, n, np)) = 1.0;
    }
    return h;
}

MatrixXc exact_propagator(const InteractionParams& params, std::size_t n_max) {
    params.validate();
    if (n_max < 1)
        throw std::invalid_argument("exact_propagator: n_max must be >= 1");
    const std::size_t np = n_max + 1;
    const std::size_t dim = 4 * np;

    MatrixXc m = MatrixXc::Zero(dim, dim); // A + H_c
    Eigen::VectorXd a_diag(dim);
    for (std::size_t a1 = 0; a1 < 2; ++a1) {
        for (std::size_t a2 = 0; a2 < 2; ++a2) {
            const double excited = static_cast<double>(a1 + a2);
            for (std::size_t n = 0; n < np; ++n) {
                const std::size_t row = idx(a1, a2, n, np);
                a_diag(static_cast<Eigen::Index>(row)) = params.delta * excited;
                m(row, row) = params.delta * excited;
            }
        }
    }
    // H_c = g sum_j (a^dag S_j^- + a S_j^+); a^dag|n> = sqrt(n+1)|n+1>
    for (std::size_t n = 0; n + 1 < np; ++n) {
        const double amp = params.g * std::sqrt(static_cast<double>(n) + 1.0);
        for (std::size_t other = 0; other < 2; ++other) {
            // atom 1 decays: |e, x, n> -> |g, x, n+1>
            m(idx(0, other, n + 1, np), idx(1, other, n, np)) += amp;
            m(idx(1, other, n, np), idx(0, other, n + 1, np)) += amp;
            // atom 2 decays: |x, e, n> -> |x, g, n+1>
            m(idx(other, 0, n + 1, np), idx(other, 1, n, np)) += amp;
            m(idx(other, 1, n, np), idx(other, 0, n + 1, np)) += amp;
        }
    }

    Eigen::SelfAdjointEigenSolver<MatrixXc> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalGuardError("exact_propagator: eigendecomposition failed");
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();
    VectorXc phases(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(-kI * evals(i) * params.t);
    MatrixXc u = evecs * phases.asDiagonal() * evecs.adjoint();

    // frame factor e^{iAt}
    for (std::size_t row = 0; row < dim; ++row)
        u.row(static_cast<Eigen::Index>(row)) *=
            std::exp(kI * a_diag(static_cast<Eigen::Index>(row)) * params.t);
    return u;
}

ApproximationReport compare_effective_exact(const InteractionParams& params,
                                            const ExactModelConfig& config) {
    const std::size_t np = config.n_max + 1;
    const std::size_t dim = 4 * np;
    const MatrixXc u_exact = exact_propagator(params, config.n_max);
    const Matrix4c u_eff = effective_propagator(params.theta);

    double worst_infidelity = 0.0;
    double worst_leakage = 0.0;
    for (std::size_t b = 0; b < 4; ++b) {
        VectorXc in = VectorXc::Zero(static_cast<Eigen::Index>(dim));
        in(static_cast<Eigen::Index>(b * np)) = 1.0; // atomic basis b, vacuum
        const VectorXc out = u_exact * in;

        // truncation guard: population at the top ladder rung
        double top_rung = 0.0;
        for (std::size_t a = 0; a < 4; ++a)
            top_rung += std::norm(out(static_cast<Eigen::Index>(a * np + config.n_max)));
        if (top_rung > 1e-6)
            throw NumericalGuardError(
                "compare_effective_exact: photon-ladder truncation too small");

        Eigen::Vector4cd vac;
        for (std::size_t a = 0; a < 4; ++a)
            vac(static_cast<Eigen::Index>(a)) = out(static_cast<Eigen::Index>(a * np));
        const double vac_pop = vac.squaredNorm();
        const double leakage = 1.0 - vac_pop;
        if (vac_pop > 0.0)
            vac /= std::sqrt(vac_pop);

        const Eigen::Vector4cd pred = u_eff.col(static_cast<Eigen::Index>(b));
        const double fid = std::norm(Complex(pred.adjoint() * vac));
        worst_infidelity = std::max(worst_infidelity, 1.0 - fid);
        worst_leakage = std::max(worst_leakage, leakage);
    }
    return ApproximationReport{worst_infidelity, worst_leakage, params.delta / params.g};
}

} // namespace wexpand
