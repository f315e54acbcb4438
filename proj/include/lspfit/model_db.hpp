// SPDX-License-Identifier: Apache-2.0
//
// Encoded large-scale-parameter model tables: the legacy TR 38.901 entries
// and the Rel-19 study's adopted fits (Rel-19-only 6-24 GHz and combined
// 0.5-100 GHz families), plus the plywood penetration-loss line.

#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "lspfit/core.hpp"

namespace lspfit {

/// Evaluate a model at f. Extrapolation outside the fit range is permitted
/// and flagged.
inline EvalResult evaluate(const ParamModel& model, FreqGHz f) {
    EvalResult r;
    r.lg.value = model.form.eval(f.value());
    r.lg.unit = unit_for(model.key.parameter, model.key.statistic);
    r.extrapolated = !model.fit_range_ghz.contains(f.value());
    return r;
}

/// Plywood penetration loss in dB, valid for 0 < f <= 100 GHz. The line is
/// fitted on 0.5-30 GHz data; beyond 30 GHz the result is an extrapolation
/// and flagged as such.
inline EvalResult plywood_loss(FreqGHz f) {
    if (f.value() > 100.0)
        throw OutOfDomainError("plywood penetration loss: f must be <= 100 GHz");
    EvalResult r;
    r.lg.value = 1.03 + 0.17 * f.value();
    r.lg.unit = LgUnit::DB;
    r.extrapolated = f.value() < 0.5 || f.value() > 30.0;
    return r;
}

struct CompareRow {
    double f_ghz;
    double y_a;
    double y_b;
    double delta;  // y_a - y_b
};

/// Immutable model database. Thread-safe for concurrent reads after
/// construction.
class ModelDb {
public:
    ModelDb() = default;

    explicit ModelDb(std::vector<ParamModel> models) : models_(std::move(models)) {
        std::sort(models_.begin(), models_.end(),
                  [](const ParamModel& a, const ParamModel& b) { return a.key < b.key; });
        for (std::size_t i = 1; i < models_.size(); ++i) {
            if (models_[i].key == models_[i - 1].key)
                throw DomainError("model database: duplicate key " + models_[i].key.str());
        }
    }

    /// The built-in inventory (113 entries). Constructed once, never mutated.
    static const ModelDb& builtin() {
        static const ModelDb db(builtin_models());
        return db;
    }

    std::span<const ParamModel> models() const noexcept { return models_; }
    std::size_t size() const noexcept { return models_.size(); }

    const ParamModel* try_lookup(const ModelKey& key) const noexcept {
        const ModelKey canon = canonical_key(key);
        auto it = std::lower_bound(models_.begin(), models_.end(), canon,
                                   [](const ParamModel& m, const ModelKey& k) { return m.key < k; });
        if (it != models_.end() && it->key == canon) return &*it;
        return nullptr;
    }

    const ParamModel& lookup(const ModelKey& key) const {
        if (const ParamModel* m = try_lookup(key)) return *m;
        throw NotFoundError("no encoded model for " + key.str());
    }

    /// Per-frequency evaluation of two models of the same quantity that
    /// differ only in set, with signed difference a - b.
    std::vector<CompareRow> compare(const ModelKey& key_a, const ModelKey& key_b,
                                    const std::vector<FreqGHz>& grid) const {
        if (!key_a.same_quantity(key_b))
            throw DomainError("compare: keys must differ only in set");
        if (key_a.set == key_b.set)
            throw DomainError("compare: sets must differ");
        if (grid.empty()) throw DomainError("compare: grid must be non-empty");
        const ParamModel& a = lookup(key_a);
        const ParamModel& b = lookup(key_b);
        std::vector<CompareRow> rows;
        rows.reserve(grid.size());
        for (FreqGHz f : grid) {
            const double ya = evaluate(a, f).lg.value;
            const double yb = evaluate(b, f).lg.value;
            rows.push_back(CompareRow{f.value(), ya, yb, ya - yb});
        }
        return rows;
    }

    /// Canonical address of the plywood penetration-loss model. The material
    /// model is scenario-free in substance; it is filed under InH/LOS/Mean by
    /// convention so that every entry fits the uniform key schema.
    static ModelKey plywood_key() {
        return ModelKey{Scenario::InH, Condition::LOS, ParameterKind::pen_loss("plywood"),
                        StatisticKind::Mean, ModelSet::CombinedWLS};
    }

    /// SMa has a single adopted fit family (0.5-24 GHz); lookups under either
    /// non-legacy set resolve to it. All other keys map to themselves.
    static ModelKey canonical_key(ModelKey key) {
        if (key.scenario == Scenario::SMa && key.set == ModelSet::Rel19Only)
            key.set = ModelSet::CombinedWLS;
        return key;
    }

    static std::vector<ParamModel> builtin_models();

private:
    std::vector<ParamModel> models_;  // sorted by key
};

namespace detail {

// One (condition, statistic) line of an urban-scenario table: the Rel-19-only
// fit, the combined 0.5-100 GHz fit, and the legacy TR 38.901 entry. A slope
// of exactly 0 encodes a constant (every AM/WM fit and the constant legacy
// entries).
struct UrbanRow {
    Condition cond;
    StatisticKind stat;
    double r19_slope, r19_intercept;
    FitMethod r19_method;
    double comb_slope, comb_intercept;
    FitMethod comb_method;
    double leg_slope, leg_intercept;
};

inline void add_urban(std::vector<ParamModel>& out, Scenario sc, Basis basis,
                      ParameterKind::Code param, std::initializer_list<UrbanRow> rows) {
    auto form = [&](double slope, double intercept) {
        return ModelForm::checked(slope == 0.0 ? Basis::Const : basis, slope, intercept);
    };
    for (const UrbanRow& r : rows) {
        const ParameterKind p(param);
        out.push_back(ParamModel{
            ModelKey{sc, r.cond, p, r.stat, ModelSet::Rel19Only},
            form(r.r19_slope, r.r19_intercept), FreqRange{6.0, 24.0}, r.r19_method});
        out.push_back(ParamModel{
            ModelKey{sc, r.cond, p, r.stat, ModelSet::CombinedWLS},
            form(r.comb_slope, r.comb_intercept), FreqRange{0.5, 100.0}, r.comb_method});
        out.push_back(ParamModel{
            ModelKey{sc, r.cond, p, r.stat, ModelSet::Legacy38901},
            form(r.leg_slope, r.leg_intercept), FreqRange{0.5, 100.0}, FitMethod::Encoded});
    }
}

inline void add_sma(std::vector<ParamModel>& out, ParameterKind::Code param,
                    double los_mean, double los_std, double nlos_mean, double nlos_std) {
    auto add = [&](Condition c, StatisticKind s, double v) {
        out.push_back(ParamModel{
            ModelKey{Scenario::SMa, c, ParameterKind(param), s, ModelSet::CombinedWLS},
            ModelForm::checked(Basis::Const, 0.0, v), FreqRange{0.5, 24.0}, FitMethod::AM});
    };
    add(Condition::LOS, StatisticKind::Mean, los_mean);
    add(Condition::LOS, StatisticKind::Std, los_std);
    add(Condition::NLOS, StatisticKind::Mean, nlos_mean);
    add(Condition::NLOS, StatisticKind::Std, nlos_std);
}

}  // namespace detail

inline std::vector<ParamModel> ModelDb::builtin_models() {
    using detail::add_sma;
    using detail::add_urban;
    using enum Condition;
    using enum StatisticKind;
    constexpr FitMethod AM = FitMethod::AM;
    constexpr FitMethod WM = FitMethod::WM;
    constexpr FitMethod OLS = FitMethod::OLS;
    constexpr FitMethod WLS = FitMethod::WLS;

    std::vector<ParamModel> m;
    m.reserve(113);

    // UMi street canyon, basis log10(1+f).
    add_urban(m, Scenario::UMi, Basis::Log10OnePlusF, ParameterKind::Code::DS, {
        {LOS,  Mean, -0.15, -7.50, OLS,  -0.18, -7.28, WLS,  -0.24, -7.14},
        {LOS,  Std,   0.00,  0.46, AM,    0.00,  0.39, WM,    0.00,  0.38},
        {NLOS, Mean, -0.84, -6.22, OLS,  -0.22, -6.87, WLS,  -0.24, -6.83},
        {NLOS, Std,  -0.52,  0.90, OLS,   0.19,  0.22, WLS,   0.16,  0.28},
    });
    add_urban(m, Scenario::UMi, Basis::Log10OnePlusF, ParameterKind::Code::ASD, {
        {LOS,  Mean, -0.17,  1.32, OLS,  -0.05,  1.21, WLS,  -0.05,  1.21},
        {LOS,  Std,  -0.17,  0.40, OLS,   0.08,  0.29, WLS,   0.00,  0.41},
        {NLOS, Mean,  0.46,  0.77, OLS,  -0.24,  1.54, WLS,  -0.23,  1.53},
        {NLOS, Std,  -1.08,  1.48, OLS,   0.10,  0.33, WLS,   0.11,  0.33},
    });
    add_urban(m, Scenario::UMi, Basis::Log10OnePlusF, ParameterKind::Code::ASA, {
        {LOS,  Mean, -0.09,  1.44, OLS,  -0.07,  1.66, WLS,  -0.08,  1.73},
        {LOS,  Std,   0.345, -0.15, OLS,  0.021, 0.26, WLS,   0.014, 0.28},
        {NLOS, Mean, -0.27,  1.80, OLS,  -0.07,  1.76, WLS,  -0.08,  1.81},
        {NLOS, Std,  -0.32,  0.55, OLS,   0.05,  0.27, WLS,   0.05,  0.30},
    });
    add_urban(m, Scenario::UMi, Basis::Log10OnePlusF, ParameterKind::Code::ZSA, {
        {LOS,  Mean, -0.88,  1.99, OLS,  -0.11,  0.81, WLS,  -0.10,  0.73},
        {LOS,  Std,   0.15, -0.07, OLS,  -0.03,  0.29, WLS,  -0.04,  0.34},
        {NLOS, Mean,  0.14,  0.86, OLS,  -0.03,  0.92, WLS,  -0.04,  0.92},
        {NLOS, Std,   0.07,  0.05, OLS,  -0.05,  0.35, WLS,  -0.07,  0.41},
    });

    // UMa, basis log10(f).
    add_urban(m, Scenario::UMa, Basis::Log10F, ParameterKind::Code::DS, {
        {LOS,  Mean, -0.8790, -6.569, OLS, -0.0794, -7.067, WLS, -0.0963, -6.955},
        {LOS,  Std,   0.024,   0.33,  OLS,  0.026,   0.57,  WLS,  0.00,    0.66},
        {NLOS, Mean, -0.215,  -6.69,  OLS, -0.134,  -6.47,  WLS, -0.204,  -6.28},
        {NLOS, Std,   0.136,   0.27,  OLS,  0.00,    0.39,  WM,   0.00,    0.39},
    });
    add_urban(m, Scenario::UMa, Basis::Log10F, ParameterKind::Code::ASD, {
        {LOS,  Mean,  0.6495,  0.26,  OLS,  0.00,    0.92,  WM,   0.1114,  1.06},
        {LOS,  Std,  -0.13,    0.38,  OLS,  0.00,    0.31,  WM,   0.00,    0.28},
        {NLOS, Mean,  0.5313,  0.50,  OLS,  0.00,    1.09,  WM,  -0.1144,  1.50},
        {NLOS, Std,  -0.45,    0.86,  OLS,  0.00,    0.44,  WM,   0.00,    0.28},
    });
    add_urban(m, Scenario::UMa, Basis::Log10F, ParameterKind::Code::ASA, {
        {LOS,  Mean, -0.429,   2.02,  OLS,  0.00,    1.76,  WM,   0.00,    1.81},
        {LOS,  Std,  -0.03,    0.19,  OLS,  0.00,    0.19,  WM,   0.00,    0.20},
        {NLOS, Mean, -0.13,    1.84,  OLS, -0.25,    2.04,  WLS, -0.27,    2.08},
        {NLOS, Std,  -0.25,    0.49,  OLS, -0.03,    0.17,  WLS,  0.00,    0.11},
    });
    add_urban(m, Scenario::UMa, Basis::Log10F, ParameterKind::Code::ZSA, {
        {LOS,  Mean, -0.27,    1.30,  OLS,  0.00,    0.96,  WM,   0.00,    0.95},
        {LOS,  Std,  -0.4319,  0.521, OLS,  0.00,    0.15,  WM,   0.00,    0.16},
        {NLOS, Mean,  0.2839,  0.79,  OLS, -0.2856,  1.445, WLS, -0.3236,  1.512},
        {NLOS, Std,  -0.2665,  0.468, OLS,  0.00,    0.17,  WM,   0.00,    0.16},
    });

    // SMa: one adopted AM family over 0.5-24 GHz, no legacy counterpart.
    add_sma(m, ParameterKind::Code::DS, -7.42, 0.60, -7.20, 0.58);
    add_sma(m, ParameterKind::Code::ASD, 0.48, 0.27, 0.51, 0.33);
    add_sma(m, ParameterKind::Code::ASA, 1.43, 0.12, 1.63, 0.26);
    add_sma(m, ParameterKind::Code::ZSA, 1.18, 0.05, 1.16, 0.14);

    // Plywood penetration loss, OLS on 0.5-30 GHz data.
    m.push_back(ParamModel{ModelDb::plywood_key(),
                           ModelForm::checked(Basis::LinearF, 0.17, 1.03),
                           FreqRange{0.5, 30.0}, FitMethod::OLS});

    return m;
}

}  // namespace lspfit
