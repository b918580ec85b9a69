#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "telescore/channels.hpp"
#include "telescore/qmath.hpp"
#include "telescore/states.hpp"

namespace telescore {

// Standard teleportation, simulated on density matrices. Qubit order in the
// three-qubit register is (input, resource-1, resource-2): the sender holds
// the input and resource qubit 1, the receiver holds resource qubit 2. The
// sender projects (input, 1) onto each Bell state, the receiver applies the
// paired correction from bell_correction(), and the four branches are mixed
// by their probabilities. No sampling anywhere: the protocol output is the
// deterministic outcome average.

namespace detail {

/// <B_m| (x) I_2 as a 2 x 8 matrix (rows indexed by the receiver qubit).
inline const std::array<CMatrix, 4>& bell_projector_rows() {
    static const std::array<CMatrix, 4> rows = [] {
        std::array<CMatrix, 4> out = {CMatrix(2, 8), CMatrix(2, 8), CMatrix(2, 8), CMatrix(2, 8)};
        for (int m = 0; m < 4; ++m) {
            const CVector bell = bell_state(m);
            CMatrix proj(2, 8);
            for (std::size_t ij = 0; ij < 4; ++ij) {
                const Complex amp = std::conj(bell[ij]);
                if (amp == Complex(0.0, 0.0)) continue;
                for (std::size_t k = 0; k < 2; ++k) proj(k, ij * 2 + k) = amp;
            }
            out[static_cast<std::size_t>(m)] = std::move(proj);
        }
        return out;
    }();
    return rows;
}

/// Outcome-averaged receiver state for an arbitrary (possibly non-Hermitian)
/// 2x2 input block; linearity in rho_in is what makes the channel cache and
/// the chain composition work.
inline CMatrix protocol_apply_raw(const CMatrix& rho_in, const CMatrix& resource,
                                  std::array<double, 4>* probabilities = nullptr) {
    const CMatrix big = kron(rho_in, resource);
    CMatrix out(2, 2);
    for (int m = 0; m < 4; ++m) {
        const CMatrix& proj = bell_projector_rows()[static_cast<std::size_t>(m)];
        const CMatrix cond = proj * big * proj.adjoint();
        if (probabilities) (*probabilities)[static_cast<std::size_t>(m)] = cond.trace().real();
        const CMatrix& u = bell_correction(m);
        out += u * cond * u.adjoint();
    }
    return out;
}

inline CMatrix ket_density(const CVector& ket) {
    CMatrix m(ket.size(), ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
    return m;
}

}  // namespace detail

/// One protocol run: the four Bell-outcome probabilities and the
/// outcome-averaged, corrected receiver state.
struct ProtocolOutcome {
    std::array<double, 4> probabilities;
    QState output;
};

inline ProtocolOutcome teleport_protocol(const QState& resource, BlochParam input) {
    if (resource.dim() != 4) {
        throw std::invalid_argument("teleport: resource must be a two-qubit state");
    }
    std::array<double, 4> probs{};
    CMatrix out = detail::protocol_apply_raw(detail::ket_density(bloch_ket(input)),
                                             resource.matrix(), &probs);
    return ProtocolOutcome{probs, QState(std::move(out))};
}

inline QState teleport_output(const QState& resource, BlochParam input) {
    return teleport_protocol(resource, input).output;
}

inline double teleport_fidelity(const QState& resource, BlochParam input) {
    return pure_fidelity(bloch_ket(input), teleport_output(resource, input));
}

/// The protocol with a fixed resource, cached as a linear map on 2x2 input
/// blocks (images of the four matrix units). Exactly equal to the direct
/// simulation, but cheap enough for quadrature grids and Monte-Carlo loops.
class ProtocolChannel {
public:
    explicit ProtocolChannel(const QState& resource) {
        if (resource.dim() != 4) {
            throw std::invalid_argument("ProtocolChannel: resource must be a two-qubit state");
        }
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                CMatrix unit(2, 2);
                unit(j, k) = 1.0;
                unit_images_[j * 2 + k] = detail::protocol_apply_raw(unit, resource.matrix());
            }
        }
    }

    CMatrix apply_raw(const CMatrix& rho_in) const {
        CMatrix out(2, 2);
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k) {
                const Complex w = rho_in(j, k);
                if (w == Complex(0.0, 0.0)) continue;
                const CMatrix& img = unit_images_[j * 2 + k];
                out(0, 0) += w * img(0, 0);
                out(0, 1) += w * img(0, 1);
                out(1, 0) += w * img(1, 0);
                out(1, 1) += w * img(1, 1);
            }
        return out;
    }

    QState apply(const QState& in) const { return QState(apply_raw(in.matrix())); }

    /// <eta| Lambda(|eta><eta|) |eta> without any allocation.
    double fidelity(double theta, double phi) const {
        const Complex c0(std::cos(theta / 2.0), 0.0);
        const Complex c1 = std::polar(std::sin(theta / 2.0), phi);
        const Complex ket[2] = {c0, c1};
        Complex f(0.0, 0.0);
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                const Complex w = ket[j] * std::conj(ket[k]);
                const CMatrix& img = unit_images_[j * 2 + k];
                Complex quad(0.0, 0.0);
                for (std::size_t a = 0; a < 2; ++a)
                    for (std::size_t b = 0; b < 2; ++b)
                        quad += std::conj(ket[a]) * img(a, b) * ket[b];
                f += w * quad;
            }
        }
        return f.real();
    }

private:
    std::array<CMatrix, 4> unit_images_;
};

// ---------------------------------------------------------------------------
// Closed-form per-input fidelities, one per model that admits them. All are
// simulation-validated in the test suite; every expression is affine in
// {sin^2(theta), cos(2*phi)*sin^2(theta)}.

namespace detail {

/// Fidelity through a correlated resource u|00> + v|11> with coherence s = u*v.
inline double correlated_input_fidelity(double s, double theta) {
    const double sin2 = std::sin(theta) * std::sin(theta);
    return 1.0 - 0.5 * (1.0 - 2.0 * s) * sin2;
}

/// Fidelity through an anticorrelated resource x|01> + y|10> whose coherence
/// Re(x*conj(y)) equals `signed_s`, with corrections still tuned for the
/// correlated family.
inline double anticorrelated_input_fidelity(double signed_s, double theta, double phi) {
    const double sin2 = std::sin(theta) * std::sin(theta);
    return 0.5 * (1.0 + 2.0 * std::cos(2.0 * phi) * signed_s) * sin2;
}

}  // namespace detail

/// Catalog of closed-form per-input fidelities. Supported kinds: noiseless,
/// the three flip pairs, and global depolarizing. Damping and the combined
/// mixture have no closed form here; use teleport_fidelity (the simulator).
///
/// The bitphase-flip entry is NOT the bit-flip expression verbatim: the two
/// single-sigma_y branches carry coherence -s where the sigma_x ones carry +s,
/// so the cos(2*phi) cross term flips sign. The two channels agree pointwise
/// only under phi -> phi + pi/2, and exactly in every Haar-averaged statistic.
inline double analytic_input_fidelity(const NoiseModel& model, SchmidtParam a, BlochParam input) {
    const double s = schmidt_coherence(a);
    const double theta = input.theta;
    const double phi = input.phi;
    switch (model.kind()) {
        case NoiseKind::noiseless:
            return detail::correlated_input_fidelity(s, theta);
        case NoiseKind::bit_flip:
        case NoiseKind::bitphase_flip: {
            const double p = model.p(), q = model.q();
            const double w1 = p * q + (1.0 - p) * (1.0 - q);
            const double w2 = p + q - 2.0 * p * q;
            const double sign = model.kind() == NoiseKind::bit_flip ? 1.0 : -1.0;
            return w1 * detail::correlated_input_fidelity(s, theta) +
                   w2 * detail::anticorrelated_input_fidelity(sign * s, theta, phi);
        }
        case NoiseKind::phase_flip: {
            // sigma_z branches flip the resource coherence sign; the doubly
            // flipped branch folds back into the clean one.
            const double p = model.p(), q = model.q();
            const double w1 = p * q + (1.0 - p) * (1.0 - q);
            const double w2 = p + q - 2.0 * p * q;
            return w1 * detail::correlated_input_fidelity(s, theta) +
                   w2 * detail::correlated_input_fidelity(-s, theta);
        }
        case NoiseKind::global_depolarizing: {
            const double p = model.p();
            return p * detail::correlated_input_fidelity(s, theta) + (1.0 - p) / 2.0;
        }
        default:
            throw std::domain_error(
                std::string("analytic_input_fidelity: no closed form for '") +
                to_string(model.kind()) + "'; use the protocol simulation (teleport_fidelity)");
    }
}

/// Maximal average fidelity from a singlet fraction f in [1/4, 1]: (2f+1)/3.
inline double horodecki_fidelity(double f) {
    if (!(f >= 0.25 && f <= 1.0)) {
        throw std::invalid_argument("horodecki_fidelity: singlet fraction must lie in [1/4, 1]");
    }
    return (2.0 * f + 1.0) / 3.0;
}

/// n identical Schmidt links teleported through in succession; the output of
/// link m is the input of link m+1.
struct ChainSpec {
    ChainSpec(int n_links, SchmidtParam a) : n(n_links), alpha(a) {
        if (n_links < 1) throw std::invalid_argument("ChainSpec: n must be >= 1");
    }
    int n;
    SchmidtParam alpha;
};

/// n-fold composition of the protocol channel applied to |eta><eta|. The
/// intermediate states are density matrices, so mixed intermediates compose
/// through the same path.
inline QState chain_output(ChainSpec spec, BlochParam input) {
    const CMatrix resource = schmidt_state(spec.alpha).matrix();
    CMatrix rho = detail::ket_density(bloch_ket(input));
    for (int link = 0; link < spec.n; ++link) {
        rho = detail::protocol_apply_raw(rho, resource);
    }
    return QState(std::move(rho));
}

inline double chain_fidelity(ChainSpec spec, BlochParam input) {
    return pure_fidelity(bloch_ket(input), chain_output(spec, input));
}

/// Closed form for the n-chain per-input fidelity:
///   (1 - sin^2(theta)/2) + 2^(n-1) * (a(1-a))^(n/2) * sin^2(theta).
inline double chain_input_fidelity(ChainSpec spec, BlochParam input) {
    const double sin2 = std::sin(input.theta) * std::sin(input.theta);
    const double x = std::pow(spec.alpha.alpha * (1.0 - spec.alpha.alpha), spec.n / 2.0);
    return (1.0 - 0.5 * sin2) + std::ldexp(1.0, spec.n - 1) * x * sin2;
}

}  // namespace telescore
