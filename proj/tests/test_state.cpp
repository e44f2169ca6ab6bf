#include "wexpand/state.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wexpand;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

SingleExcitationState random_state(std::mt19937_64& rng, std::size_t n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Complex> amps(n);
    for (auto& c : amps)
        c = Complex{gauss(rng), gauss(rng)};
    SingleExcitationState s(std::move(amps));
    s.normalize();
    return s;
}

// the protocol's four-atom output, hand-coded: magnitudes 1/2,
// phases {+1, -i, -i, -1}
SingleExcitationState four_atom_output() {
    return SingleExcitationState(
        {{0.5, 0.0}, {0.0, -0.5}, {0.0, -0.5}, {-0.5, 0.0}});
}

} // namespace

TEST_CASE("construction rejects bad amplitudes") {
    CHECK_THROWS_AS(SingleExcitationState({}), std::invalid_argument);
    CHECK_THROWS_AS(
        SingleExcitationState({Complex{std::nan(""), 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PureStateDense({2, 2}, {Complex{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(PureStateDense({}, {}), std::invalid_argument);
}

TEST_CASE("inner_product basics") {
    // |eg> and |ge> on two atoms
    PureStateDense eg({2, 2}, {{0, 0}, {0, 0}, {1, 0}, {0, 0}});
    PureStateDense ge({2, 2}, {{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(inner_product(eg, ge) == Complex{0.0, 0.0});
    CHECK(std::abs(inner_product(eg, eg) - Complex{1.0, 0.0}) < 1e-12);

    PureStateDense other({2, 2, 3}, std::vector<Complex>(12, Complex{0, 0}));
    CHECK_THROWS_AS(inner_product(eg, other), std::invalid_argument);
}

TEST_CASE("inner_product of |eg> with its quarter-pulse image is (0.5, -0.5)") {
    // image of |eg> under one theta=pi/4 pass, written out by hand
    const Complex ph = std::exp(Complex{0.0, -0.7853981633974483});
    PureStateDense eg({2, 2}, {{0, 0}, {0, 0}, {1, 0}, {0, 0}});
    PureStateDense evolved(
        {2, 2},
        {{0, 0}, ph * Complex{0.0, -kInvSqrt2}, ph * Complex{kInvSqrt2, 0.0}, {0, 0}});
    const Complex ip = inner_product(eg, evolved);
    CHECK(std::abs(ip - Complex{0.5, -0.5}) < 1e-12);
}

TEST_CASE("fidelity basics") {
    const auto w2 = canonical_w(2);
    CHECK(fidelity(w2, w2) == doctest::Approx(1.0).epsilon(1e-12));
    SingleExcitationState eg({{1, 0}, {0, 0}});
    SingleExcitationState ge({{0, 0}, {1, 0}});
    CHECK(fidelity(eg, ge) == 0.0);
    CHECK_THROWS_AS(fidelity(w2, canonical_w(3)), std::invalid_argument);
}

TEST_CASE("fidelity of canonical W4 against the protocol output is 1/4") {
    // <W4|psi> = (1/2)(1/2)(1 - i - i - 1) = -i/2, so |.|^2 = 0.25
    CHECK(fidelity(canonical_w(4), four_atom_output()) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("w_class_fidelity") {
    CHECK(w_class_fidelity(four_atom_output()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w_class_fidelity(canonical_w(7)) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<Complex> amps(5, Complex{0, 0});
    amps[0] = Complex{1, 0};
    CHECK(w_class_fidelity(SingleExcitationState(std::move(amps))) ==
          doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("canonical_w") {
    CHECK_THROWS_AS(canonical_w(0), std::invalid_argument);
    CHECK(canonical_w(1)[0] == Complex{1.0, 0.0});
    CHECK(canonical_w(2)[0].real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(canonical_w(4)[k] == Complex{0.5, 0.0});
}

TEST_CASE("to_dense placement") {
    const auto d1 = to_dense(canonical_w(1));
    CHECK(d1.amps()[0] == Complex{0.0, 0.0});
    CHECK(d1.amps()[1] == Complex{1.0, 0.0});

    // the EPR-pair state: atom0 carries 1/sqrt2, atom1 carries -i/sqrt2
    SingleExcitationState epr({{kInvSqrt2, 0.0}, {0.0, -kInvSqrt2}});
    const auto d2 = to_dense(epr);
    CHECK(d2.amps()[0] == Complex{0.0, 0.0});                // |gg>
    CHECK(std::abs(d2.amps()[1] - Complex{0.0, -kInvSqrt2}) < 1e-15); // |ge>
    CHECK(std::abs(d2.amps()[2] - Complex{kInvSqrt2, 0.0}) < 1e-15);  // |eg>
    CHECK(d2.amps()[3] == Complex{0.0, 0.0});                // |ee>

    CHECK_THROWS_AS(to_dense(canonical_w(21)), std::invalid_argument);
}

TEST_CASE("to_dense round trip is the identity") {
    std::mt19937_64 rng(11);
    for (std::size_t n : {1, 2, 3, 5, 8}) {
        const auto s = random_state(rng, n);
        const auto back = project_single_excitation(to_dense(s));
        for (std::size_t k = 0; k < n; ++k)
            CHECK(std::abs(back[k] - s[k]) < 1e-12);
    }
}

TEST_CASE("fix_global_phase makes the first nonzero amplitude real positive") {
    SingleExcitationState s({{0.0, 0.0}, {0.0, -0.5}, {0.5, 0.0}, {-0.5, 0.0}, {0.0, 0.5}});
    const auto f = fix_global_phase(s);
    CHECK(f[0] == Complex{0.0, 0.0});
    CHECK(f[1].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(f[1].imag()) < 1e-12);
    CHECK(fidelity(f, s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: fidelity symmetry and global-phase invariance") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + (rng() % 8);
        const auto a = random_state(rng, n);
        const auto b = random_state(rng, n);
        const double fab = fidelity(a, b);
        CHECK(fab >= 0.0);
        CHECK(fab <= 1.0 + 1e-12);
        CHECK(fab == doctest::Approx(fidelity(b, a)).epsilon(1e-12));

        const Complex phase = std::exp(Complex{0.0, angle(rng)});
        std::vector<Complex> rotated(a.amps());
        for (auto& c : rotated)
            c *= phase;
        CHECK(fidelity(SingleExcitationState(std::move(rotated)), b) ==
              doctest::Approx(fab).epsilon(1e-10));
    }
}

TEST_CASE("property: w_class_fidelity dominates fidelity to the canonical W") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + (rng() % 10);
        const auto s = random_state(rng, n);
        CHECK(w_class_fidelity(s) >= fidelity(s, canonical_w(n)) - 1e-12);
    }
}
