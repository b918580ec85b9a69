#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "telescore/channels.hpp"
#include "telescore/qmath.hpp"
#include "telescore/states.hpp"
#include "test_support.hpp"

using namespace telescore;

TEST_CASE("kron basics") {
    CHECK(max_abs_diff(kron(identity2(), identity2()), CMatrix::identity(4)) == 0.0);

    // (sigma_x (x) sigma_x) |00> = |11>
    const CMatrix xx = kron(pauli_x(), pauli_x());
    CHECK(xx(3, 0) == Complex(1.0, 0.0));
    CHECK(xx(0, 0) == Complex(0.0, 0.0));

    const CMatrix zi = kron(pauli_z(), identity2());
    CHECK(zi(0, 0) == Complex(1.0, 0.0));
    CHECK(zi(1, 1) == Complex(1.0, 0.0));
    CHECK(zi(2, 2) == Complex(-1.0, 0.0));
    CHECK(zi(3, 3) == Complex(-1.0, 0.0));
}

TEST_CASE("partial trace") {
    const std::vector<std::size_t> dims = {2, 2};

    SECTION("maximally entangled marginal is I/2") {
        const QState phi_plus = schmidt_state(SchmidtParam(0.5));
        const QState reduced = partial_trace(phi_plus, {0}, dims);
        CHECK(max_abs_diff(reduced.matrix(), 0.5 * CMatrix::identity(2)) < 1e-12);
    }

    SECTION("Schmidt marginal is diag(alpha, 1-alpha)") {
        const double alpha = 0.3;
        const QState rho = schmidt_state(SchmidtParam(alpha));
        const QState reduced = partial_trace(rho, {0}, dims);
        CHECK(std::abs(reduced.matrix()(0, 0) - Complex(alpha, 0.0)) < 1e-12);
        CHECK(std::abs(reduced.matrix()(1, 1) - Complex(1.0 - alpha, 0.0)) < 1e-12);
        CHECK(std::abs(reduced.matrix()(0, 1)) < 1e-12);
    }

    SECTION("product states factorize") {
        auto gen = test::rng(11);
        for (int i = 0; i < 20; ++i) {
            const QState a = test::random_state(gen, 2);
            const QState b = test::random_state(gen, 2);
            const QState joint = QState(kron(a.matrix(), b.matrix()));
            CHECK(max_abs_diff(partial_trace(joint, {0}, dims).matrix(), a.matrix()) < 1e-12);
            CHECK(max_abs_diff(partial_trace(joint, {1}, dims).matrix(), b.matrix()) < 1e-12);
        }
    }

    SECTION("rejects dimension mismatch and empty keep") {
        const QState rho = schmidt_state(SchmidtParam(0.5));
        CHECK_THROWS_AS(partial_trace(rho, {0}, {2, 3}), std::invalid_argument);
        CHECK_THROWS_AS(partial_trace(rho, {}, dims), std::invalid_argument);
        CHECK_THROWS_AS(partial_trace(rho, {2}, dims), std::invalid_argument);
    }
}

TEST_CASE("apply_kraus") {
    const QState rho = schmidt_state(SchmidtParam(0.25));

    SECTION("identity channel leaves the state unchanged") {
        const KrausChannel id(std::vector<CMatrix>{CMatrix::identity(4)});
        CHECK(max_abs_diff(apply_kraus(rho, id).matrix(), rho.matrix()) < 1e-14);
    }

    SECTION("bit-flip with p = q = 1 is the identity") {
        CHECK(max_abs_diff(apply_kraus(rho, bit_flip_pair(1.0, 1.0)).matrix(), rho.matrix()) <
              1e-14);
    }

    SECTION("bit-flip (p=0, q=1) conjugates qubit 1 by sigma_x") {
        const CMatrix x1 = kron(pauli_x(), identity2());
        const CMatrix expected = x1 * rho.matrix() * x1;
        CHECK(max_abs_diff(apply_kraus(rho, bit_flip_pair(0.0, 1.0)).matrix(), expected) < 1e-14);
    }

    SECTION("preserves trace and positivity on 1000 random states per channel") {
        auto gen = test::rng(22);
        const std::vector<KrausChannel> channels = {
            bit_flip_pair(0.3, 0.8), phase_flip_pair(0.6, 0.2), bitphase_flip_pair(0.45, 0.95),
            amplitude_damping_local(0.35, 0.6), phase_damping_local(0.15, 0.75)};
        for (const KrausChannel& ch : channels) {
            double worst_trace = 0.0, worst_eig = 0.0;
            for (int i = 0; i < 1000; ++i) {
                const QState s = test::random_state(gen, 4);
                const QState out = apply_kraus(s, ch);  // construction re-checks validity
                worst_trace =
                    std::max(worst_trace, std::abs(out.matrix().trace().real() - 1.0));
                worst_eig =
                    std::min(worst_eig, hermitian_eigenvalues(out.matrix()).front());
            }
            CHECK(worst_trace < 1e-9);
            CHECK(worst_eig > -1e-9);
        }
    }
}

TEST_CASE("pure_fidelity") {
    const CVector ket0 = {1.0, 0.0};
    const QState rho0(CMatrix{{1.0, 0.0}, {0.0, 0.0}});
    CHECK(pure_fidelity(ket0, rho0) == 1.0);

    CHECK(pure_fidelity(ket0, maximally_mixed(2)) == Catch::Approx(0.5).margin(1e-15));

    const double r = 1.0 / std::numbers::sqrt2;
    const CVector plus = {r, r};
    CHECK(pure_fidelity(plus, rho0) == Catch::Approx(0.5).margin(1e-15));

    SECTION("invariant under global phase of the ket") {
        auto gen = test::rng(33);
        for (int i = 0; i < 50; ++i) {
            const QState s = test::random_state(gen, 2);
            const BlochParam b = test::random_bloch(gen);
            CVector ket = bloch_ket(b);
            const double f = pure_fidelity(ket, s);
            const Complex phase = std::polar(1.0, test::uniform(gen, 0.0, 6.28));
            for (auto& z : ket) z *= phase;
            CHECK(std::abs(pure_fidelity(ket, s) - f) < 1e-12);
        }
    }

    SECTION("rejects unnormalized kets") {
        CHECK_THROWS_AS(pure_fidelity(CVector{1.0, 1.0}, rho0), std::invalid_argument);
    }
}

TEST_CASE("QState validation") {
    CMatrix not_hermitian{{1.0, Complex(0.0, 0.5)}, {Complex(0.0, 0.5), 0.0}};
    CHECK_THROWS_AS(QState(not_hermitian), std::invalid_argument);

    CMatrix bad_trace{{0.7, 0.0}, {0.0, 0.7}};
    CHECK_THROWS_AS(QState(bad_trace), std::invalid_argument);

    // Hermitian, unit trace, but indefinite.
    CMatrix indefinite{{1.5, 0.0}, {0.0, -0.5}};
    CHECK_THROWS_AS(QState(indefinite), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues") {
    SECTION("diagonal matrix") {
        CMatrix d{{3.0, 0.0}, {0.0, -1.0}};
        const auto eig = hermitian_eigenvalues(d);
        CHECK(eig[0] == Catch::Approx(-1.0).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(3.0).margin(1e-12));
    }

    SECTION("complex Hermitian 2x2 with known spectrum") {
        // [[1, i], [-i, 1]] has eigenvalues {0, 2}
        CMatrix m{{1.0, Complex(0.0, 1.0)}, {Complex(0.0, -1.0), 1.0}};
        const auto eig = hermitian_eigenvalues(m);
        CHECK(eig[0] == Catch::Approx(0.0).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(2.0).margin(1e-12));
    }

    SECTION("trace and norm agree with invariants on random states") {
        auto gen = test::rng(44);
        for (int i = 0; i < 30; ++i) {
            const QState s = test::random_state(gen, 4);
            const auto eig = hermitian_eigenvalues(s.matrix());
            double sum = 0.0;
            for (double e : eig) sum += e;
            CHECK(sum == Catch::Approx(1.0).margin(1e-10));
            CHECK(eig.front() > -1e-12);
        }
    }

    SECTION("Werner-state spectrum for the depolarized Bell pair") {
        const QState w = global_depolarizing(schmidt_state(SchmidtParam(0.5)), 0.7);
        const auto eig = hermitian_eigenvalues(w.matrix());
        CHECK(eig[0] == Catch::Approx(0.075).margin(1e-12));
        CHECK(eig[1] == Catch::Approx(0.075).margin(1e-12));
        CHECK(eig[2] == Catch::Approx(0.075).margin(1e-12));
        CHECK(eig[3] == Catch::Approx(0.775).margin(1e-12));
    }
}
