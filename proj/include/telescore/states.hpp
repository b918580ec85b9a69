#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "telescore/qmath.hpp"

namespace telescore {

/// Schmidt weight of the resource family sqrt(a)|00> + sqrt(1-a)|11>.
struct SchmidtParam {
    explicit SchmidtParam(double a) : alpha(a) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw std::invalid_argument("SchmidtParam: alpha must lie in [0, 1]");
        }
    }
    double alpha;
};

/// Bloch-sphere angles of a pure input qubit, theta in [0, pi], phi in [0, 2*pi).
struct BlochParam {
    BlochParam(double t, double p) : theta(t), phi(p) {
        if (!(t >= 0.0 && t <= std::numbers::pi)) {
            throw std::invalid_argument("BlochParam: theta must lie in [0, pi]");
        }
        if (!(p >= 0.0 && p < 2.0 * std::numbers::pi)) {
            throw std::invalid_argument("BlochParam: phi must lie in [0, 2*pi)");
        }
    }
    double theta;
    double phi;
};

/// sqrt(alpha*(1-alpha)): the |00><11| coherence of the Schmidt resource.
/// Nearly every closed form below is a function of this single combination.
inline double schmidt_coherence(SchmidtParam a) { return std::sqrt(a.alpha * (1.0 - a.alpha)); }

/// Density matrix of sqrt(a)|00> + sqrt(1-a)|11>.
inline QState schmidt_state(SchmidtParam a) {
    const double u = std::sqrt(a.alpha);
    const double v = std::sqrt(1.0 - a.alpha);
    CMatrix m(4, 4);
    m(0, 0) = u * u;
    m(0, 3) = u * v;
    m(3, 0) = u * v;
    m(3, 3) = v * v;
    return QState(std::move(m));
}

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
inline CVector bloch_ket(BlochParam b) {
    return {Complex(std::cos(b.theta / 2.0), 0.0),
            std::polar(std::sin(b.theta / 2.0), b.phi)};
}

/// Bell basis, indexed 0..3 as {Phi+, Psi+, Phi-, Psi-}.
inline CVector bell_state(int index) {
    const double r = 1.0 / std::numbers::sqrt2;
    switch (index) {
        case 0: return {r, 0.0, 0.0, r};
        case 1: return {0.0, r, r, 0.0};
        case 2: return {r, 0.0, 0.0, -r};
        case 3: return {0.0, r, -r, 0.0};
        default: throw std::invalid_argument("bell_state: index must be in 0..3");
    }
}

/// Receiver correction paired with each Bell outcome: {I, X, Z, ZX}. This is
/// the assignment that teleports perfectly through Phi+, and it is pinned by
/// the protocol tests against the noiseless fidelity formula.
inline const CMatrix& bell_correction(int index) {
    static const std::array<CMatrix, 4> corr = {identity2(), pauli_x(), pauli_z(),
                                                pauli_z() * pauli_x()};
    if (index < 0 || index > 3) throw std::invalid_argument("bell_correction: index must be in 0..3");
    return corr[static_cast<std::size_t>(index)];
}

/// Maximal singlet fraction of the Schmidt resource: 1/2 + sqrt(a(1-a)).
inline double singlet_fraction_schmidt(SchmidtParam a) { return 0.5 + schmidt_coherence(a); }

/// Concurrence 2*sqrt(a(1-a)); strictly increasing on [0, 1/2]. Used only for
/// entanglement-ordering statements.
inline double concurrence_schmidt(SchmidtParam a) { return 2.0 * schmidt_coherence(a); }

}  // namespace telescore
