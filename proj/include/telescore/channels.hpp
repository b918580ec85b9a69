#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "telescore/qmath.hpp"
#include "telescore/states.hpp"

namespace telescore {

/// ||Sum_i K_i^dag K_i - I||_max for a raw operator list.
inline double completeness_deviation(const std::vector<CMatrix>& ops) {
    if (ops.empty()) throw std::invalid_argument("completeness_deviation: empty operator list");
    const std::size_t d = ops.front().rows();
    CMatrix acc(d, d);
    for (const CMatrix& k : ops) {
        if (k.rows() != d || k.cols() != d) {
            throw std::invalid_argument("completeness_deviation: mixed operator dimensions");
        }
        acc += k.adjoint() * k;
    }
    return max_abs_diff(acc, CMatrix::identity(d));
}

/// A completeness-checked Kraus operator list. Construction rejects any list
/// violating Sum K^dag K = I beyond kValidityTol.
class KrausChannel {
public:
    explicit KrausChannel(std::vector<CMatrix> ops) : ops_(std::move(ops)) {
        if (ops_.empty()) throw std::invalid_argument("KrausChannel: empty operator list");
        if (!ops_.front().is_square()) {
            throw std::invalid_argument("KrausChannel: operators must be square");
        }
        dim_ = ops_.front().rows();
        const double dev = completeness_deviation(ops_);
        if (dev > kValidityTol) {
            throw std::invalid_argument("KrausChannel: completeness violated by " +
                                        std::to_string(dev));
        }
    }

    std::size_t dim() const { return dim_; }
    const std::vector<CMatrix>& operators() const { return ops_; }

private:
    std::size_t dim_ = 0;
    std::vector<CMatrix> ops_;
};

inline double check_completeness(const KrausChannel& ch) {
    return completeness_deviation(ch.operators());
}

/// Sum_i K_i rho K_i^dagger; the output satisfies the QState invariants.
inline QState apply_kraus(const QState& s, const KrausChannel& ch) {
    if (ch.dim() != s.dim()) throw std::invalid_argument("apply_kraus: dimension mismatch");
    return QState(apply_kraus_raw(s.matrix(), ch.operators()));
}

namespace detail {

inline void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

/// Two-sided single-Pauli channel: the first qubit is left alone with
/// probability p, the second with probability q.
inline KrausChannel pauli_flip_pair(const CMatrix& sigma, double p, double q) {
    check_unit_interval(p, "p");
    check_unit_interval(q, "q");
    std::vector<CMatrix> ops;
    ops.push_back(std::sqrt(p * q) * kron(identity2(), identity2()));
    ops.push_back(std::sqrt(p * (1.0 - q)) * kron(identity2(), sigma));
    ops.push_back(std::sqrt((1.0 - p) * q) * kron(sigma, identity2()));
    ops.push_back(std::sqrt((1.0 - p) * (1.0 - q)) * kron(sigma, sigma));
    return KrausChannel(std::move(ops));
}

}  // namespace detail

inline KrausChannel bit_flip_pair(double p, double q) {
    return detail::pauli_flip_pair(pauli_x(), p, q);
}
inline KrausChannel phase_flip_pair(double p, double q) {
    return detail::pauli_flip_pair(pauli_z(), p, q);
}
inline KrausChannel bitphase_flip_pair(double p, double q) {
    return detail::pauli_flip_pair(pauli_y(), p, q);
}

/// Two-sided amplitude damping with per-qubit decay rates g1, g2.
inline KrausChannel amplitude_damping_local(double g1, double g2) {
    detail::check_unit_interval(g1, "g1");
    detail::check_unit_interval(g2, "g2");
    auto single = [](double g) {
        std::array<CMatrix, 2> k = {CMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - g)}},
                                    CMatrix{{0.0, std::sqrt(g)}, {0.0, 0.0}}};
        return k;
    };
    const auto a = single(g1);
    const auto b = single(g2);
    std::vector<CMatrix> ops;
    for (const CMatrix& ka : a)
        for (const CMatrix& kb : b) ops.push_back(kron(ka, kb));
    return KrausChannel(std::move(ops));
}

/// Two-sided phase damping with per-qubit rates l1, l2. Diagonals are preserved.
inline KrausChannel phase_damping_local(double l1, double l2) {
    detail::check_unit_interval(l1, "l1");
    detail::check_unit_interval(l2, "l2");
    auto single = [](double l) {
        std::array<CMatrix, 2> k = {CMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - l)}},
                                    CMatrix{{0.0, 0.0}, {0.0, std::sqrt(l)}}};
        return k;
    };
    const auto a = single(l1);
    const auto b = single(l2);
    std::vector<CMatrix> ops;
    for (const CMatrix& ka : a)
        for (const CMatrix& kb : b) ops.push_back(kron(ka, kb));
    return KrausChannel(std::move(ops));
}

/// p*rho + (1-p)*I/4. Implemented as a direct affine mixture, not a Kraus list.
inline QState global_depolarizing(const QState& s, double p) {
    detail::check_unit_interval(p, "p");
    if (s.dim() != 4) throw std::invalid_argument("global_depolarizing: expects a two-qubit state");
    const CMatrix mixed = 0.25 * CMatrix::identity(4);
    return QState(p * s.matrix() + (1.0 - p) * mixed);
}

/// Four-term mixture of white noise, the two one-sided marginal products, and
/// the clean Schmidt resource:
///   p*I/4 + (p1/2) I (x) Tr_1(rho) + (p2/2) Tr_2(rho) (x) I + (1-p-p1-p2) rho.
inline QState combined_depolarizing(SchmidtParam a, double p, double p1, double p2) {
    if (p < 0.0 || p1 < 0.0 || p2 < 0.0 || p + p1 + p2 > 1.0 + 1e-15) {
        throw std::invalid_argument(
            "combined_depolarizing: needs p, p1, p2 >= 0 and p + p1 + p2 <= 1");
    }
    const QState rho = schmidt_state(a);
    const std::vector<std::size_t> dims = {2, 2};
    const CMatrix marg2 = partial_trace(rho, {1}, dims).matrix();  // Tr_1
    const CMatrix marg1 = partial_trace(rho, {0}, dims).matrix();  // Tr_2
    CMatrix m = (0.25 * p) * CMatrix::identity(4);
    m += (0.5 * p1) * kron(identity2(), marg2);
    m += (0.5 * p2) * kron(marg1, identity2());
    m += (1.0 - p - p1 - p2) * rho.matrix();
    return QState(std::move(m));
}

enum class NoiseKind {
    noiseless,
    bit_flip,
    phase_flip,
    bitphase_flip,
    amplitude_damping,
    phase_damping,
    global_depolarizing,
    combined_depolarizing,
};

inline const char* to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::noiseless: return "noiseless";
        case NoiseKind::bit_flip: return "bit_flip";
        case NoiseKind::phase_flip: return "phase_flip";
        case NoiseKind::bitphase_flip: return "bitphase_flip";
        case NoiseKind::amplitude_damping: return "amp_damp";
        case NoiseKind::phase_damping: return "phase_damp";
        case NoiseKind::global_depolarizing: return "global_dep";
        case NoiseKind::combined_depolarizing: return "combined_dep";
    }
    return "?";
}

/// Tagged noise description: a kind plus its parameters, validated on
/// construction. Selects both the channel construction and the closed forms.
class NoiseModel {
public:
    static NoiseModel noiseless() { return NoiseModel(NoiseKind::noiseless, 0, 0, 0); }
    static NoiseModel bit_flip(double p, double q = 1.0) {
        detail::check_unit_interval(p, "p");
        detail::check_unit_interval(q, "q");
        return NoiseModel(NoiseKind::bit_flip, p, q, 0);
    }
    static NoiseModel phase_flip(double p, double q = 1.0) {
        detail::check_unit_interval(p, "p");
        detail::check_unit_interval(q, "q");
        return NoiseModel(NoiseKind::phase_flip, p, q, 0);
    }
    static NoiseModel bitphase_flip(double p, double q = 1.0) {
        detail::check_unit_interval(p, "p");
        detail::check_unit_interval(q, "q");
        return NoiseModel(NoiseKind::bitphase_flip, p, q, 0);
    }
    static NoiseModel amplitude_damping(double g1, double g2) {
        detail::check_unit_interval(g1, "g1");
        detail::check_unit_interval(g2, "g2");
        return NoiseModel(NoiseKind::amplitude_damping, g1, g2, 0);
    }
    static NoiseModel phase_damping(double l1, double l2) {
        detail::check_unit_interval(l1, "l1");
        detail::check_unit_interval(l2, "l2");
        return NoiseModel(NoiseKind::phase_damping, l1, l2, 0);
    }
    static NoiseModel global_depolarizing(double p) {
        detail::check_unit_interval(p, "p");
        return NoiseModel(NoiseKind::global_depolarizing, p, 0, 0);
    }
    static NoiseModel combined_depolarizing(double p, double p1, double p2) {
        if (p < 0.0 || p1 < 0.0 || p2 < 0.0 || p + p1 + p2 > 1.0 + 1e-15) {
            throw std::invalid_argument(
                "combined_dep: needs p, p1, p2 >= 0 and p + p1 + p2 <= 1");
        }
        return NoiseModel(NoiseKind::combined_depolarizing, p, p1, p2);
    }

    NoiseKind kind() const { return kind_; }

    bool is_flip() const {
        return kind_ == NoiseKind::bit_flip || kind_ == NoiseKind::phase_flip ||
               kind_ == NoiseKind::bitphase_flip;
    }

    double p() const {
        assert(is_flip() || kind_ == NoiseKind::global_depolarizing ||
               kind_ == NoiseKind::combined_depolarizing);
        return a_;
    }
    double q() const {
        assert(is_flip());
        return b_;
    }
    double g1() const {
        assert(kind_ == NoiseKind::amplitude_damping);
        return a_;
    }
    double g2() const {
        assert(kind_ == NoiseKind::amplitude_damping);
        return b_;
    }
    double l1() const {
        assert(kind_ == NoiseKind::phase_damping);
        return a_;
    }
    double l2() const {
        assert(kind_ == NoiseKind::phase_damping);
        return b_;
    }
    double p1() const {
        assert(kind_ == NoiseKind::combined_depolarizing);
        return b_;
    }
    double p2() const {
        assert(kind_ == NoiseKind::combined_depolarizing);
        return c_;
    }

    double param(int i) const { return i == 0 ? a_ : (i == 1 ? b_ : c_); }

private:
    NoiseModel(NoiseKind k, double a, double b, double c) : kind_(k), a_(a), b_(b), c_(c) {}

    NoiseKind kind_;
    double a_, b_, c_;
};

/// The Schmidt resource after the model's noise has acted on it.
inline QState noisy_resource(const NoiseModel& model, SchmidtParam a) {
    switch (model.kind()) {
        case NoiseKind::noiseless:
            return schmidt_state(a);
        case NoiseKind::bit_flip:
            return apply_kraus(schmidt_state(a), bit_flip_pair(model.p(), model.q()));
        case NoiseKind::phase_flip:
            return apply_kraus(schmidt_state(a), phase_flip_pair(model.p(), model.q()));
        case NoiseKind::bitphase_flip:
            return apply_kraus(schmidt_state(a), bitphase_flip_pair(model.p(), model.q()));
        case NoiseKind::amplitude_damping:
            return apply_kraus(schmidt_state(a), amplitude_damping_local(model.g1(), model.g2()));
        case NoiseKind::phase_damping:
            return apply_kraus(schmidt_state(a), phase_damping_local(model.l1(), model.l2()));
        case NoiseKind::global_depolarizing:
            return global_depolarizing(schmidt_state(a), model.p());
        case NoiseKind::combined_depolarizing:
            return combined_depolarizing(a, model.p(), model.p1(), model.p2());
    }
    throw std::logic_error("noisy_resource: unhandled kind");
}

}  // namespace telescore
