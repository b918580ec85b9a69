#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "telescore/channels.hpp"
#include "telescore/states.hpp"
#include "telescore/teleport.hpp"

namespace telescore {

// Averages over pure input states are always taken in the uniform
// (Haar-induced) Bloch measure: cos(theta) uniform on [-1, 1], phi uniform on
// [0, 2*pi). Its moments pin everything used below:
//   E[sin^2 t] = 2/3,  E[sin^4 t] = 8/15,  E[cos 2p] = 0,  E[cos^2 2p] = 1/2.

inline constexpr double kClassicalFidelity = 2.0 / 3.0;
inline const double kClassicalDeviation = 1.0 / (3.0 * std::sqrt(5.0));

struct ClosedForm {};

struct Quadrature {
    Quadrature() = default;
    Quadrature(int nt, int np) : n_theta(nt), n_phi(np) {
        if (nt < 8 || np < 8) throw std::invalid_argument("Quadrature: node counts must be >= 8");
    }
    int n_theta = 64;
    int n_phi = 64;
};

struct MonteCarlo {
    MonteCarlo(std::uint64_t n, std::uint64_t s) : samples(n), seed(s) {
        if (n < 1) throw std::invalid_argument("MonteCarlo: samples must be >= 1");
    }
    std::uint64_t samples;
    std::uint64_t seed;  // always explicit; there is no ambient randomness
};

using AverageMethod = std::variant<ClosedForm, Quadrature, MonteCarlo>;

namespace detail {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;  // summing to 2
};

/// Gauss-Legendre nodes/weights by Newton iteration on the Legendre recurrence.
inline GaussLegendreRule make_gauss_legendre(int n) {
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

inline const GaussLegendreRule& gauss_legendre(int n) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
    return it->second;
}

/// Counter-based uniform draw: sample i of stream `seed` depends only on
/// (seed, i), so any partition of the index space reproduces the same sums.
inline std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t z = mix64(seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

/// f = constant + sin2 * sin^2(theta) + cos2_sin2 * cos(2 phi) sin^2(theta).
/// Every cataloged per-input fidelity lives in this family.
struct BlochAffine {
    double constant;
    double sin2;
    double cos2_sin2;
};

template <class Fn>
std::optional<BlochAffine> bloch_affine_decompose(Fn&& f, double tol = 1e-10) {
    const double pi = std::numbers::pi;
    BlochAffine d{};
    d.constant = f(0.0, 1.0);
    const double f_plus = f(pi / 2.0, 0.0);       // constant + sin2 + cos2_sin2
    const double f_minus = f(pi / 2.0, pi / 2.0); // constant + sin2 - cos2_sin2
    d.sin2 = 0.5 * (f_plus + f_minus) - d.constant;
    d.cos2_sin2 = 0.5 * (f_plus - f_minus);

    const double scale =
        std::max(1.0, std::abs(d.constant) + std::abs(d.sin2) + std::abs(d.cos2_sin2));
    const std::array<double, 9> thetas = {0.0, 0.35, 0.8, 1.25, pi / 2.0, 1.9, 2.35, 2.8, pi};
    const std::array<double, 9> phis = {0.0,      pi / 8.0, pi / 4.0, 3.0 * pi / 8.0, pi / 2.0,
                                        2.0,      pi,       4.0,      5.5};
    for (double t : thetas) {
        const double s2 = std::sin(t) * std::sin(t);
        for (double p : phis) {
            const double model = d.constant + d.sin2 * s2 + d.cos2_sin2 * std::cos(2.0 * p) * s2;
            if (std::abs(f(t, p) - model) > tol * scale) return std::nullopt;
        }
    }
    return d;
}

template <class Fn>
double quadrature_mean(Fn&& f, const Quadrature& q) {
    const GaussLegendreRule& rule = gauss_legendre(q.n_theta);
    const double dphi = 2.0 * std::numbers::pi / q.n_phi;
    KahanSum total;
    for (int i = 0; i < q.n_theta; ++i) {
        const double theta = std::acos(rule.nodes[static_cast<std::size_t>(i)]);
        KahanSum row;
        for (int j = 0; j < q.n_phi; ++j) row.add(f(theta, j * dphi));
        total.add(rule.weights[static_cast<std::size_t>(i)] * row.sum / q.n_phi);
    }
    return 0.5 * total.sum;
}

template <class Fn>
double monte_carlo_mean(Fn&& f, const MonteCarlo& mc) {
    KahanSum acc;
    for (std::uint64_t i = 0; i < mc.samples; ++i) {
        const double x = 2.0 * uniform01(mc.seed, 2 * i) - 1.0;
        const double phi = 2.0 * std::numbers::pi * uniform01(mc.seed, 2 * i + 1);
        acc.add(f(std::acos(x), phi));
    }
    return acc.sum / static_cast<double>(mc.samples);
}

}  // namespace detail

/// Mean of f(theta, phi) in the uniform Bloch measure. The closed_form route
/// is only defined for integrands affine in {sin^2 t, cos(2p) sin^2 t}; it
/// probes and verifies that structure and rejects anything else.
template <class Fn>
double haar_mean(Fn&& f, const AverageMethod& method) {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ClosedForm>) {
                const auto d = detail::bloch_affine_decompose(f);
                if (!d) {
                    throw std::invalid_argument(
                        "haar_mean: integrand is not affine in {sin^2, cos2phi*sin^2}; "
                        "use quadrature or monte_carlo");
                }
                return d->constant + (2.0 / 3.0) * d->sin2;
            } else if constexpr (std::is_same_v<M, Quadrature>) {
                return detail::quadrature_mean(f, m);
            } else {
                return detail::monte_carlo_mean(f, m);
            }
        },
        method);
}

/// Mean of f^2 under the same measure and method rules.
template <class Fn>
double haar_second_moment(Fn&& f, const AverageMethod& method) {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ClosedForm>) {
                const auto d = detail::bloch_affine_decompose(f);
                if (!d) {
                    throw std::invalid_argument(
                        "haar_second_moment: integrand is not affine in "
                        "{sin^2, cos2phi*sin^2}; use quadrature or monte_carlo");
                }
                // E[(a + b u + c v u)^2] with u = sin^2 t, v = cos 2p, u and v
                // independent: E[u]=2/3, E[u^2]=8/15, E[v]=0, E[v^2]=1/2.
                const double a = d->constant, b = d->sin2, c = d->cos2_sin2;
                return a * a + (8.0 / 15.0) * b * b + (4.0 / 15.0) * c * c + (4.0 / 3.0) * a * b;
            } else {
                auto f2 = [&](double t, double p) {
                    const double v = f(t, p);
                    return v * v;
                };
                if constexpr (std::is_same_v<M, Quadrature>) {
                    return detail::quadrature_mean(f2, m);
                } else {
                    return detail::monte_carlo_mean(f2, m);
                }
            }
        },
        method);
}

/// Standard deviation of f under the same measure. Quadrature integrates
/// (f - mean)^2 in a second pass rather than forming E[f^2] - E[f]^2, which
/// loses everything to cancellation when the deviation is tiny.
template <class Fn>
double haar_deviation(Fn&& f, const AverageMethod& method) {
    return std::visit(
        [&](const auto& m) -> double {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, ClosedForm>) {
                const auto d = detail::bloch_affine_decompose(f);
                if (!d) {
                    throw std::invalid_argument(
                        "haar_deviation: integrand is not affine in {sin^2, cos2phi*sin^2}; "
                        "use quadrature or monte_carlo");
                }
                const double b = d->sin2, c = d->cos2_sin2;
                return std::sqrt((4.0 / 45.0) * b * b + (4.0 / 15.0) * c * c);
            } else if constexpr (std::is_same_v<M, Quadrature>) {
                const double mean = detail::quadrature_mean(f, m);
                auto centered = [&](double t, double p) {
                    const double r = f(t, p) - mean;
                    return r * r;
                };
                return std::sqrt(std::max(0.0, detail::quadrature_mean(centered, m)));
            } else {
                const double m1 = detail::monte_carlo_mean(f, m);
                auto f2 = [&](double t, double p) {
                    const double v = f(t, p);
                    return v * v;
                };
                return std::sqrt(std::max(0.0, detail::monte_carlo_mean(f2, m) - m1 * m1));
            }
        },
        method);
}

/// Mean, deviation and their batch-mean standard errors from one seeded
/// Monte-Carlo stream (batches are contiguous index blocks, so the estimate
/// is reproducible from (seed, samples) alone).
struct HaarStats {
    double mean;
    double deviation;
    double se_mean;
    double se_deviation;
    std::uint64_t samples;
    std::uint64_t seed;
};

template <class Fn>
HaarStats haar_mc_stats(Fn&& f, const MonteCarlo& mc) {
    const std::uint64_t batches = mc.samples >= 10000 ? 100 : std::min<std::uint64_t>(mc.samples, 10);
    const std::uint64_t per_batch = mc.samples / batches;
    detail::KahanSum m1, m2;
    std::vector<double> batch_f, batch_d;
    batch_f.reserve(batches);
    batch_d.reserve(batches);
    detail::KahanSum b1, b2;
    std::uint64_t in_batch = 0;
    for (std::uint64_t i = 0; i < mc.samples; ++i) {
        const double x = 2.0 * detail::uniform01(mc.seed, 2 * i) - 1.0;
        const double phi = 2.0 * std::numbers::pi * detail::uniform01(mc.seed, 2 * i + 1);
        const double v = f(std::acos(x), phi);
        m1.add(v);
        m2.add(v * v);
        if (batch_f.size() < batches) {
            b1.add(v);
            b2.add(v * v);
            if (++in_batch == per_batch) {
                const double bf = b1.sum / per_batch;
                const double bd = std::sqrt(std::max(0.0, b2.sum / per_batch - bf * bf));
                batch_f.push_back(bf);
                batch_d.push_back(bd);
                b1 = {};
                b2 = {};
                in_batch = 0;
            }
        }
    }
    const double mean = m1.sum / static_cast<double>(mc.samples);
    const double dev = std::sqrt(std::max(0.0, m2.sum / static_cast<double>(mc.samples) - mean * mean));
    auto se_of = [&](const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;
        double mu = 0.0;
        for (double v : xs) mu += v;
        mu /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double v : xs) var += (v - mu) * (v - mu);
        var /= static_cast<double>(xs.size() - 1);
        return std::sqrt(var / static_cast<double>(xs.size()));
    };
    return HaarStats{mean, dev, se_of(batch_f), se_of(batch_d), mc.samples, mc.seed};
}

// ---------------------------------------------------------------------------
// Average fidelity F and fidelity deviation D per model.

/// True when avg_fidelity/fidelity_deviation resolve to a closed form rather
/// than quadrature (flip closed forms exist only at q = 1; the combined model
/// has a closed F but its canonical D is the quadrature value).
inline bool has_closed_average(const NoiseModel& model) {
    switch (model.kind()) {
        case NoiseKind::noiseless:
        case NoiseKind::global_depolarizing:
        case NoiseKind::combined_depolarizing:
            return true;
        case NoiseKind::bit_flip:
        case NoiseKind::phase_flip:
        case NoiseKind::bitphase_flip:
            return model.q() == 1.0;
        default:
            return false;
    }
}

/// Per-input fidelity of the simulated protocol through the model's noisy
/// resource, as a cheap callable for quadrature and Monte-Carlo loops.
inline auto simulated_fidelity_fn(const NoiseModel& model, SchmidtParam a) {
    return [ch = ProtocolChannel(noisy_resource(model, a))](double theta, double phi) {
        return ch.fidelity(theta, phi);
    };
}

namespace detail {

inline auto analytic_fidelity_fn(const NoiseModel& model, SchmidtParam a) {
    return [model, a](double theta, double phi) {
        // Angles feeding the closed forms are periodic; fold phi so grid
        // endpoints stay inside BlochParam's domain.
        const double two_pi = 2.0 * std::numbers::pi;
        double p = std::fmod(phi, two_pi);
        if (p < 0.0) p += two_pi;
        return analytic_input_fidelity(model, a, BlochParam(theta, p));
    };
}

}  // namespace detail

/// Average teleportation fidelity. Closed forms where they exist; flip models
/// with q != 1 integrate the per-input catalog entry; damping models have no
/// closed form anywhere and integrate the simulated protocol.
inline double avg_fidelity(const NoiseModel& model, SchmidtParam a,
                           const Quadrature& fallback = Quadrature{}) {
    const double s = schmidt_coherence(a);
    switch (model.kind()) {
        case NoiseKind::noiseless:
            return 2.0 / 3.0 + (2.0 / 3.0) * s;
        case NoiseKind::bit_flip:
        case NoiseKind::bitphase_flip: {
            const double p = model.p();
            if (model.q() == 1.0) return (1.0 + p + 2.0 * p * s) / 3.0;
            return haar_mean(detail::analytic_fidelity_fn(model, a), fallback);
        }
        case NoiseKind::phase_flip: {
            const double p = model.p();
            if (model.q() == 1.0) return (2.0 / 3.0) * (1.0 + (2.0 * p - 1.0) * s);
            return haar_mean(detail::analytic_fidelity_fn(model, a), fallback);
        }
        case NoiseKind::global_depolarizing: {
            const double p = model.p();
            return p * (2.0 / 3.0 + (2.0 / 3.0) * s) + (1.0 - p) / 2.0;
        }
        case NoiseKind::combined_depolarizing: {
            // (1-w)*F_noiseless + w/2: the white-noise and one-sided marginal
            // components each teleport every input to I/2.
            const double w = model.p() + model.p1() + model.p2();
            return (1.0 - w) * (2.0 / 3.0 + (2.0 / 3.0) * s) + 0.5 * w;
        }
        case NoiseKind::amplitude_damping:
        case NoiseKind::phase_damping:
            return haar_mean(simulated_fidelity_fn(model, a), fallback);
    }
    throw std::logic_error("avg_fidelity: unhandled kind");
}

/// Standard deviation of the per-input fidelity under the Haar measure.
inline double fidelity_deviation(const NoiseModel& model, SchmidtParam a,
                                 const Quadrature& fallback = Quadrature{}) {
    const double s = schmidt_coherence(a);
    const double root5 = std::sqrt(5.0);
    auto quadrature_deviation = [&](auto&& fn) { return haar_deviation(fn, fallback); };
    switch (model.kind()) {
        case NoiseKind::noiseless:
            return (1.0 - 2.0 * s) / (3.0 * root5);
        case NoiseKind::bit_flip:
        case NoiseKind::bitphase_flip: {
            const double p = model.p();
            if (model.q() == 1.0) {
                const double lin = 1.0 - 2.0 * p + 2.0 * p * s;
                const double rad = lin * lin + 12.0 * (1.0 - p) * (1.0 - p) * s * s;
                return std::sqrt(rad) / (3.0 * root5);
            }
            return quadrature_deviation(detail::analytic_fidelity_fn(model, a));
        }
        case NoiseKind::phase_flip: {
            const double p = model.p();
            if (model.q() == 1.0) return (1.0 - 2.0 * (2.0 * p - 1.0) * s) / (3.0 * root5);
            return quadrature_deviation(detail::analytic_fidelity_fn(model, a));
        }
        case NoiseKind::global_depolarizing:
            return model.p() * (1.0 - 2.0 * s) / (3.0 * root5);
        case NoiseKind::combined_depolarizing:
            // Canonical D for this model is the quadrature value over the
            // simulated protocol (see combined_deviation_reference for the
            // retained alternative expression).
            return quadrature_deviation(simulated_fidelity_fn(model, a));
        case NoiseKind::amplitude_damping:
        case NoiseKind::phase_damping:
            return quadrature_deviation(simulated_fidelity_fn(model, a));
    }
    throw std::logic_error("fidelity_deviation: unhandled kind");
}

/// Noiseless n-chain averages: F_n = 2/3 + 2^n x / 3 and D_n = (1 - F_n)/sqrt5
/// with x = (a(1-a))^(n/2).
inline double avg_fidelity(ChainSpec spec) {
    const double x = std::pow(spec.alpha.alpha * (1.0 - spec.alpha.alpha), spec.n / 2.0);
    return 2.0 / 3.0 + std::ldexp(1.0, spec.n) * x / 3.0;
}

inline double fidelity_deviation(ChainSpec spec) {
    const double x = std::pow(spec.alpha.alpha * (1.0 - spec.alpha.alpha), spec.n / 2.0);
    return (1.0 - std::ldexp(1.0, spec.n) * x) / (3.0 * std::sqrt(5.0));
}

// ---------------------------------------------------------------------------
// Teleportability score.

/// tau_k = F - k * D.
inline double tele_score(double F, double D, double k) {
    if (k < 0.0) throw std::invalid_argument("tele_score: k must be non-negative");
    return F - k * D;
}

/// Entanglement-free baseline score (1/3)(2 - k/sqrt5), from F_cl = 2/3 and
/// D_cl = 1/(3*sqrt5).
inline double classical_score(double k) {
    if (k < 0.0) throw std::invalid_argument("classical_score: k must be non-negative");
    return (2.0 - k / std::sqrt(5.0)) / 3.0;
}

/// A state is useful iff it beats the baseline on both counts (strictly).
inline bool is_quantum_useful(double F, double D, double k) {
    return F > kClassicalFidelity && tele_score(F, D, k) > classical_score(k);
}

struct ScoreRecord {
    double F;
    double D;
    double k;
    double tau;
    double tau_classical;
    bool quantum_useful;
};

inline ScoreRecord make_score(double F, double D, double k) {
    return ScoreRecord{F, D, k, tele_score(F, D, k), classical_score(k),
                       is_quantum_useful(F, D, k)};
}

inline ScoreRecord make_score(const NoiseModel& model, SchmidtParam a, double k) {
    return make_score(avg_fidelity(model, a), fidelity_deviation(model, a), k);
}

// ---------------------------------------------------------------------------
// Sensitivity cutoff k*.

struct KStarResult {
    double value;  // min over alpha of F/D
    double alpha;  // minimizing alpha
};

/// min over [lo, hi] of F(alpha)/D(alpha): a dense grid scan followed by
/// golden-section refinement around the best grid point. Grid points with
/// D < 1e-12 are skipped; if every point is skipped the cutoff is unbounded.
inline KStarResult k_star(const NoiseModel& model, double lo = 0.0, double hi = 0.5,
                          std::size_t grid_points = 1201) {
    if (!(lo >= 0.0 && lo < hi && hi <= 0.5)) {
        throw std::invalid_argument("k_star: range must satisfy 0 <= lo < hi <= 1/2");
    }
    if (grid_points < 1000) grid_points = 1000;
    auto ratio = [&](double alpha) {
        const SchmidtParam a(alpha);
        const double d = fidelity_deviation(model, a);
        if (d < 1e-12) return std::numeric_limits<double>::infinity();
        return avg_fidelity(model, a) / d;
    };

    double best = std::numeric_limits<double>::infinity();
    double best_alpha = lo;
    const double h = (hi - lo) / static_cast<double>(grid_points - 1);
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double alpha = (i + 1 == grid_points) ? hi : lo + h * static_cast<double>(i);
        const double r = ratio(alpha);
        if (r < best) {
            best = r;
            best_alpha = alpha;
        }
    }
    if (!std::isfinite(best)) {
        throw std::domain_error(
            "k_star: unbounded sensitivity (fidelity deviation vanishes on the range)");
    }

    double a = std::max(lo, best_alpha - h);
    double b = std::min(hi, best_alpha + h);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = ratio(x1);
    double f2 = ratio(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = ratio(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = ratio(x2);
        }
    }
    const double mid = 0.5 * (a + b);
    const double fm = ratio(mid);
    KStarResult result{fm, mid};
    // Endpoints of the refinement bracket can beat the interior when the true
    // minimum sits on the range boundary.
    for (double cand : {best_alpha, a, b}) {
        const double fc = ratio(cand);
        if (fc < result.value) result = KStarResult{fc, cand};
    }
    return result;
}

// ---------------------------------------------------------------------------
// Retained alternative closed forms for the combined depolarizing model.
// They disagree with the protocol simulation once p1 or p2 is nonzero; the
// verify command reports their residuals against the quadrature values.

inline double combined_fidelity_reference(SchmidtParam a, double p, double p1, double p2) {
    const double s = schmidt_coherence(a);
    return (2.0 / 3.0) * (1.0 + (1.0 - p) * s) - (p1 + p2) * (1.0 + 4.0 * s) / 8.0 - p / 6.0;
}

inline double combined_deviation_reference(SchmidtParam a, double p, double p1, double p2) {
    const double al = a.alpha;
    const double aa = al * (1.0 - al);
    const double s = std::sqrt(aa);
    const double cross = std::sqrt(al) * (-7.0 * std::sqrt(al) + 7.0 * al +
                                          12.0 * std::sqrt(1.0 - al));
    double r = (64.0 - 96.0 * p2 + 51.0 * p2 * p2);
    r += 4.0 * (64.0 + 3.0 * p2 * (7.0 * p2 - 32.0)) * aa;
    r -= (256.0 - 384.0 * p2 + 144.0 * p2 * p2) * s;
    r += (64.0 * p * p + 32.0 * p * (3.0 * p1 + 3.0 * p2 - 4.0) - 96.0 * p1) *
         (1.0 - 4.0 * s + 4.0 * aa);
    r += p1 * p1 * (51.0 - 12.0 * cross);
    r += p2 * (-17.0 + 4.0 * cross);
    return std::sqrt(r) / (24.0 * std::sqrt(5.0));  // NaN when the radicand turns negative
}

}  // namespace telescore
