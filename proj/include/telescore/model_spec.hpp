#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <utility>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "telescore/channels.hpp"

namespace telescore {

/// Shortest decimal string that round-trips the double exactly.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// Text form of a noise model: `kind[:key=value[,key=value...]]`, e.g.
/// `bit_flip:p=0.7,q=1` or `combined_dep:p=0.1,p1=0.05,p2=0.05`.
inline std::string format_model(const NoiseModel& m) {
    const std::string kind = to_string(m.kind());
    switch (m.kind()) {
        case NoiseKind::noiseless:
            return kind;
        case NoiseKind::bit_flip:
        case NoiseKind::phase_flip:
        case NoiseKind::bitphase_flip:
            return kind + ":p=" + format_double(m.p()) + ",q=" + format_double(m.q());
        case NoiseKind::amplitude_damping:
            return kind + ":g1=" + format_double(m.g1()) + ",g2=" + format_double(m.g2());
        case NoiseKind::phase_damping:
            return kind + ":l1=" + format_double(m.l1()) + ",l2=" + format_double(m.l2());
        case NoiseKind::global_depolarizing:
            return kind + ":p=" + format_double(m.p());
        case NoiseKind::combined_depolarizing:
            return kind + ":p=" + format_double(m.p()) + ",p1=" + format_double(m.p1()) +
                   ",p2=" + format_double(m.p2());
    }
    throw std::logic_error("format_model: unhandled kind");
}

/// The `key=value,...` portion of the text form ("" for noiseless).
inline std::string model_params_text(const NoiseModel& m) {
    const std::string full = format_model(m);
    const auto colon = full.find(':');
    return colon == std::string::npos ? std::string{} : full.substr(colon + 1);
}

namespace detail {

inline double parse_param_value(std::string_view key, std::string_view text) {
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("model spec: value for key '" + std::string(key) +
                                    "' is not a number: '" + std::string(text) + "'");
    }
    return v;
}

inline std::map<std::string, double, std::less<>> parse_param_list(std::string_view params) {
    std::map<std::string, double, std::less<>> out;
    std::size_t pos = 0;
    while (pos <= params.size()) {
        const std::size_t comma = std::min(params.find(',', pos), params.size());
        const std::string_view item = params.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (item.empty() || eq == std::string_view::npos || eq == 0) {
            throw std::invalid_argument("model spec: expected key=value, got '" +
                                        std::string(item) + "'");
        }
        const std::string key(item.substr(0, eq));
        if (out.count(key)) {
            throw std::invalid_argument("model spec: duplicate key '" + key + "'");
        }
        out.emplace(key, parse_param_value(key, item.substr(eq + 1)));
        if (comma == params.size()) break;
        pos = comma + 1;
    }
    return out;
}

struct KindGrammar {
    NoiseKind kind;
    std::vector<std::string> required;
    std::vector<std::string> optional;
};

inline const std::vector<std::pair<std::string, KindGrammar>>& kind_grammars() {
    static const std::vector<std::pair<std::string, KindGrammar>> table = {
        {"noiseless", {NoiseKind::noiseless, {}, {}}},
        {"bit_flip", {NoiseKind::bit_flip, {"p"}, {"q"}}},
        {"phase_flip", {NoiseKind::phase_flip, {"p"}, {"q"}}},
        {"bitphase_flip", {NoiseKind::bitphase_flip, {"p"}, {"q"}}},
        {"amp_damp", {NoiseKind::amplitude_damping, {"g1", "g2"}, {}}},
        {"phase_damp", {NoiseKind::phase_damping, {"l1", "l2"}, {}}},
        {"global_dep", {NoiseKind::global_depolarizing, {"p"}, {}}},
        {"combined_dep", {NoiseKind::combined_depolarizing, {"p", "p1", "p2"}, {}}},
    };
    return table;
}

}  // namespace detail

/// Parse the `kind[:key=value,...]` grammar. Errors name the offending kind
/// or key. For flip kinds q defaults to 1; everything else is explicit.
inline NoiseModel parse_model(std::string_view text) {
    const std::size_t colon = text.find(':');
    const std::string kind(text.substr(0, colon));

    const detail::KindGrammar* grammar = nullptr;
    for (const auto& [name, g] : detail::kind_grammars()) {
        if (name == kind) grammar = &g;
    }
    if (!grammar) {
        throw std::invalid_argument(
            "model spec: unknown kind '" + kind +
            "' (expected noiseless, bit_flip, phase_flip, bitphase_flip, amp_damp, "
            "phase_damp, global_dep, combined_dep)");
    }

    auto params = colon == std::string_view::npos
                      ? std::map<std::string, double, std::less<>>{}
                      : detail::parse_param_list(text.substr(colon + 1));
    for (const auto& [key, value] : params) {
        const bool known =
            std::find(grammar->required.begin(), grammar->required.end(), key) !=
                grammar->required.end() ||
            std::find(grammar->optional.begin(), grammar->optional.end(), key) !=
                grammar->optional.end();
        if (!known) {
            throw std::invalid_argument("model spec: unknown key '" + key + "' for kind '" +
                                        kind + "'");
        }
    }
    for (const std::string& key : grammar->required) {
        if (!params.count(key)) {
            throw std::invalid_argument("model spec: missing required key '" + key +
                                        "' for kind '" + kind + "'");
        }
    }

    auto get = [&](const char* key, double fallback = 0.0) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    switch (grammar->kind) {
        case NoiseKind::noiseless: return NoiseModel::noiseless();
        case NoiseKind::bit_flip: return NoiseModel::bit_flip(get("p"), get("q", 1.0));
        case NoiseKind::phase_flip: return NoiseModel::phase_flip(get("p"), get("q", 1.0));
        case NoiseKind::bitphase_flip:
            return NoiseModel::bitphase_flip(get("p"), get("q", 1.0));
        case NoiseKind::amplitude_damping:
            return NoiseModel::amplitude_damping(get("g1"), get("g2"));
        case NoiseKind::phase_damping: return NoiseModel::phase_damping(get("l1"), get("l2"));
        case NoiseKind::global_depolarizing: return NoiseModel::global_depolarizing(get("p"));
        case NoiseKind::combined_depolarizing:
            return NoiseModel::combined_depolarizing(get("p"), get("p1"), get("p2"));
    }
    throw std::logic_error("parse_model: unhandled kind");
}

}  // namespace telescore
