// SPDX-License-Identifier: Apache-2.0
//
// lspfit -- large-scale-parameter model database and curve-fitting toolkit
// for stochastic channel models in the 0.5-100 GHz range.
//
// Core domain vocabulary: scenarios, link conditions, channel parameters,
// frequency-parameterized model forms and the keys that address them.

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lspfit {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition violation; the message names the offending field.
struct DomainError : Error {
    using Error::Error;
};

/// Database lookup miss; the message carries the formatted key.
struct NotFoundError : Error {
    using Error::Error;
};

/// Paired models disagree on scenario/condition/parameter/set.
struct KeyMismatchError : Error {
    using Error::Error;
};

/// Frequency beyond the model's supported domain.
struct OutOfDomainError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// File-level schema violation (bad header, missing/extra columns).
struct SchemaError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

enum class Scenario : std::uint8_t { UMi, UMa, SMa, RMa, InH, InF };

constexpr std::string_view to_string(Scenario s) noexcept {
    switch (s) {
        case Scenario::UMi: return "UMi";
        case Scenario::UMa: return "UMa";
        case Scenario::SMa: return "SMa";
        case Scenario::RMa: return "RMa";
        case Scenario::InH: return "InH";
        case Scenario::InF: return "InF";
    }
    return "?";
}

inline std::optional<Scenario> try_parse_scenario(std::string_view t) noexcept {
    if (t == "UMi") return Scenario::UMi;
    if (t == "UMa") return Scenario::UMa;
    if (t == "SMa") return Scenario::SMa;
    if (t == "RMa") return Scenario::RMa;
    if (t == "InH") return Scenario::InH;
    if (t == "InF") return Scenario::InF;
    return std::nullopt;
}

inline Scenario parse_scenario(std::string_view t) {
    if (auto s = try_parse_scenario(t)) return *s;
    throw DomainError("scenario: unknown token '" + std::string(t) + "'");
}

// ---------------------------------------------------------------------------
// Condition
// ---------------------------------------------------------------------------

enum class Condition : std::uint8_t { LOS, NLOS };

constexpr std::string_view to_string(Condition c) noexcept {
    return c == Condition::LOS ? "LOS" : "NLOS";
}

inline std::optional<Condition> try_parse_condition(std::string_view t) noexcept {
    if (t == "LOS") return Condition::LOS;
    if (t == "NLOS") return Condition::NLOS;
    return std::nullopt;
}

inline Condition parse_condition(std::string_view t) {
    if (auto c = try_parse_condition(t)) return *c;
    throw DomainError("condition: unknown token '" + std::string(t) + "'");
}

// ---------------------------------------------------------------------------
// StatisticKind
// ---------------------------------------------------------------------------

enum class StatisticKind : std::uint8_t { Mean, Std };

constexpr std::string_view to_string(StatisticKind k) noexcept {
    return k == StatisticKind::Mean ? "Mean" : "Std";
}

inline std::optional<StatisticKind> try_parse_statistic(std::string_view t) noexcept {
    if (t == "Mean") return StatisticKind::Mean;
    if (t == "Std") return StatisticKind::Std;
    return std::nullopt;
}

inline StatisticKind parse_statistic(std::string_view t) {
    if (auto k = try_parse_statistic(t)) return *k;
    throw DomainError("statistic: unknown token '" + std::string(t) + "'");
}

// ---------------------------------------------------------------------------
// ParameterKind
// ---------------------------------------------------------------------------

/// Channel parameter identity. Most kinds are plain enumerators; penetration
/// loss additionally carries the material it was measured through, e.g.
/// PenLoss(plywood). Only {DS, ASD, ASA, ZSA} x {UMi, UMa, SMa} and
/// PenLoss(plywood) have encoded fitted models; every other kind exists for
/// the campaign registry and dataset ingestion.
class ParameterKind {
public:
    enum class Code : std::uint8_t {
        DS,
        ASD,
        ASA,
        ZSA,
        ZSD,
        KFactor,
        SF,
        PathLoss,
        ExcessPathLoss,
        AbsToA,
        NumClusters,
        ClusterASD,
        PenLoss,
    };

    ParameterKind() = default;  // DS; overwritten wherever it matters
    ParameterKind(Code code) : code_(code) {}  // NOLINT: implicit by design

    static ParameterKind pen_loss(std::string_view material) {
        if (material.empty()) throw DomainError("parameter: PenLoss requires a material");
        ParameterKind p(Code::PenLoss);
        p.material_ = std::string(material);
        return p;
    }

    Code code() const noexcept { return code_; }
    const std::string& material() const noexcept { return material_; }
    bool is_pen_loss() const noexcept { return code_ == Code::PenLoss; }

    /// True for quantities modeled as log10 of a physical value (lgDS, lgASA, ...).
    bool is_lg_quantity() const noexcept {
        switch (code_) {
            case Code::DS:
            case Code::ASD:
            case Code::ASA:
            case Code::ZSA:
            case Code::ZSD:
            case Code::ClusterASD: return true;
            default: return false;
        }
    }

    bool is_angular() const noexcept {
        switch (code_) {
            case Code::ASD:
            case Code::ASA:
            case Code::ZSA:
            case Code::ZSD:
            case Code::ClusterASD: return true;
            default: return false;
        }
    }

    std::string str() const {
        if (code_ == Code::PenLoss) return "PenLoss(" + material_ + ")";
        return std::string(code_name(code_));
    }

    friend bool operator==(const ParameterKind&, const ParameterKind&) = default;
    friend auto operator<=>(const ParameterKind& a, const ParameterKind& b) {
        if (auto c = a.code_ <=> b.code_; c != 0) return c;
        return a.material_ <=> b.material_;
    }

    static constexpr std::string_view code_name(Code c) noexcept {
        switch (c) {
            case Code::DS: return "DS";
            case Code::ASD: return "ASD";
            case Code::ASA: return "ASA";
            case Code::ZSA: return "ZSA";
            case Code::ZSD: return "ZSD";
            case Code::KFactor: return "KFactor";
            case Code::SF: return "SF";
            case Code::PathLoss: return "PathLoss";
            case Code::ExcessPathLoss: return "ExcessPathLoss";
            case Code::AbsToA: return "AbsToA";
            case Code::NumClusters: return "NumClusters";
            case Code::ClusterASD: return "ClusterASD";
            case Code::PenLoss: return "PenLoss";
        }
        return "?";
    }

private:
    Code code_ = Code::DS;
    std::string material_;  // non-empty iff code_ == PenLoss
};

inline std::optional<ParameterKind> try_parse_parameter(std::string_view t) noexcept {
    using Code = ParameterKind::Code;
    for (Code c : {Code::DS, Code::ASD, Code::ASA, Code::ZSA, Code::ZSD, Code::KFactor,
                   Code::SF, Code::PathLoss, Code::ExcessPathLoss, Code::AbsToA,
                   Code::NumClusters, Code::ClusterASD}) {
        if (t == ParameterKind::code_name(c)) return ParameterKind(c);
    }
    if (t.starts_with("PenLoss(") && t.ends_with(")") && t.size() > 9) {
        return ParameterKind::pen_loss(t.substr(8, t.size() - 9));
    }
    return std::nullopt;
}

inline ParameterKind parse_parameter(std::string_view t) {
    if (auto p = try_parse_parameter(t)) return *p;
    throw DomainError("parameter: unknown token '" + std::string(t) + "'");
}

// ---------------------------------------------------------------------------
// Frequency
// ---------------------------------------------------------------------------

/// Carrier frequency in GHz. Finite and strictly positive by construction.
class FreqGHz {
public:
    explicit FreqGHz(double ghz) : v_(ghz) {
        if (!std::isfinite(ghz) || ghz <= 0.0)
            throw DomainError("freq_ghz must be > 0 and finite");
    }

    double value() const noexcept { return v_; }

    friend auto operator<=>(const FreqGHz&, const FreqGHz&) = default;

private:
    double v_;
};

/// Inclusive frequency interval in GHz, lo < hi.
struct FreqRange {
    double lo_ghz = 0.0;
    double hi_ghz = 0.0;

    static FreqRange checked(double lo, double hi) {
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw DomainError("fit_range_ghz: requires finite lo < hi");
        return FreqRange{lo, hi};
    }

    bool contains(double f) const noexcept { return f >= lo_ghz && f <= hi_ghz; }

    friend bool operator==(const FreqRange&, const FreqRange&) = default;
};

// ---------------------------------------------------------------------------
// Model form
// ---------------------------------------------------------------------------

/// Frequency basis of a fitted line y = slope * basis(f) + intercept.
enum class Basis : std::uint8_t { Log10F, Log10OnePlusF, LinearF, Const };

/// JSON/CLI tokens for Basis (wire format, do not change).
constexpr std::string_view to_string(Basis b) noexcept {
    switch (b) {
        case Basis::Log10F: return "log10_f";
        case Basis::Log10OnePlusF: return "log10_1plus_f";
        case Basis::LinearF: return "linear_f";
        case Basis::Const: return "const";
    }
    return "?";
}

inline std::optional<Basis> try_parse_basis(std::string_view t) noexcept {
    if (t == "log10_f") return Basis::Log10F;
    if (t == "log10_1plus_f") return Basis::Log10OnePlusF;
    if (t == "linear_f") return Basis::LinearF;
    if (t == "const") return Basis::Const;
    return std::nullopt;
}

inline Basis parse_basis(std::string_view t) {
    if (auto b = try_parse_basis(t)) return *b;
    throw DomainError("basis: unknown token '" + std::string(t) + "'");
}

/// basis(f); defined for every f > 0 under all bases.
inline double basis_value(Basis b, double f_ghz) noexcept {
    switch (b) {
        case Basis::Log10F: return std::log10(f_ghz);
        case Basis::Log10OnePlusF: return std::log10(1.0 + f_ghz);
        case Basis::LinearF: return f_ghz;
        case Basis::Const: return 0.0;
    }
    return 0.0;
}

struct ModelForm {
    Basis basis = Basis::Const;
    double slope = 0.0;
    double intercept = 0.0;

    static ModelForm checked(Basis basis, double slope, double intercept) {
        if (basis == Basis::Const && slope != 0.0)
            throw DomainError("model form: slope must be 0 for const basis");
        if (!std::isfinite(slope) || !std::isfinite(intercept))
            throw DomainError("model form: coefficients must be finite");
        return ModelForm{basis, slope, intercept};
    }

    double eval(double f_ghz) const noexcept {
        return slope * basis_value(basis, f_ghz) + intercept;
    }

    friend bool operator==(const ModelForm&, const ModelForm&) = default;
};

// ---------------------------------------------------------------------------
// Model sets, methods, keys
// ---------------------------------------------------------------------------

/// Which fit family a model belongs to. Legacy38901 is the prior-release
/// model table; Rel19Only fits use 6-24 GHz data; CombinedWLS fits use the
/// full 0.5-100 GHz data pool. SMa entries are a single adopted family over
/// 0.5-24 GHz, surfaced under both non-legacy sets.
enum class ModelSet : std::uint8_t { Legacy38901, Rel19Only, CombinedWLS };

/// CLI/JSON tokens for ModelSet (wire format, do not change).
constexpr std::string_view to_string(ModelSet s) noexcept {
    switch (s) {
        case ModelSet::Legacy38901: return "legacy";
        case ModelSet::Rel19Only: return "rel19";
        case ModelSet::CombinedWLS: return "combined";
    }
    return "?";
}

inline std::optional<ModelSet> try_parse_model_set(std::string_view t) noexcept {
    if (t == "legacy") return ModelSet::Legacy38901;
    if (t == "rel19") return ModelSet::Rel19Only;
    if (t == "combined") return ModelSet::CombinedWLS;
    return std::nullopt;
}

inline ModelSet parse_model_set(std::string_view t) {
    if (auto s = try_parse_model_set(t)) return *s;
    throw DomainError("set: unknown token '" + std::string(t) + "' (expected legacy|rel19|combined)");
}

enum class FitMethod : std::uint8_t { AM, WM, OLS, WLS, Encoded };

constexpr std::string_view to_string(FitMethod m) noexcept {
    switch (m) {
        case FitMethod::AM: return "AM";
        case FitMethod::WM: return "WM";
        case FitMethod::OLS: return "OLS";
        case FitMethod::WLS: return "WLS";
        case FitMethod::Encoded: return "Encoded";
    }
    return "?";
}

inline std::optional<FitMethod> try_parse_method(std::string_view t) noexcept {
    if (t == "AM") return FitMethod::AM;
    if (t == "WM") return FitMethod::WM;
    if (t == "OLS") return FitMethod::OLS;
    if (t == "WLS") return FitMethod::WLS;
    if (t == "Encoded") return FitMethod::Encoded;
    return std::nullopt;
}

inline FitMethod parse_method(std::string_view t) {
    if (auto m = try_parse_method(t)) return *m;
    throw DomainError("method: unknown token '" + std::string(t) + "'");
}

/// Address of one model in the database.
struct ModelKey {
    Scenario scenario = Scenario::UMi;
    Condition condition = Condition::LOS;
    ParameterKind parameter;
    StatisticKind statistic = StatisticKind::Mean;
    ModelSet set = ModelSet::Legacy38901;

    std::string str() const {
        std::string out;
        out += to_string(scenario);
        out += '/';
        out += to_string(condition);
        out += '/';
        out += parameter.str();
        out += '/';
        out += to_string(statistic);
        out += '/';
        out += to_string(set);
        return out;
    }

    /// True when the keys agree on everything except `set`.
    bool same_quantity(const ModelKey& o) const {
        return scenario == o.scenario && condition == o.condition &&
               parameter == o.parameter && statistic == o.statistic;
    }

    friend bool operator==(const ModelKey&, const ModelKey&) = default;
    friend auto operator<=>(const ModelKey&, const ModelKey&) = default;
};

/// One addressable model: a fitted (or encoded) line plus its validity range.
struct ParamModel {
    ModelKey key;
    ModelForm form;
    FreqRange fit_range_ghz;
    FitMethod method = FitMethod::Encoded;
};

// ---------------------------------------------------------------------------
// Values
// ---------------------------------------------------------------------------

/// Unit carried by an evaluated statistic.
enum class LgUnit : std::uint8_t {
    Log10Seconds,   // mean of lgDS
    Log10Degrees,   // mean of lg of an angular spread
    DB,             // penetration loss
    Dimensionless,  // std of any lg-quantity
};

constexpr std::string_view to_string(LgUnit u) noexcept {
    switch (u) {
        case LgUnit::Log10Seconds: return "log10_seconds";
        case LgUnit::Log10Degrees: return "log10_degrees";
        case LgUnit::DB: return "dB";
        case LgUnit::Dimensionless: return "dimensionless";
    }
    return "?";
}

/// Unit of a (parameter, statistic) pair. Std of a lg-quantity is
/// dimensionless; penetration loss is always dB. Registry-only kinds are
/// mapped for completeness.
inline LgUnit unit_for(const ParameterKind& p, StatisticKind stat) noexcept {
    using Code = ParameterKind::Code;
    if (p.code() == Code::PenLoss) return LgUnit::DB;
    if (stat == StatisticKind::Std) return LgUnit::Dimensionless;
    switch (p.code()) {
        case Code::DS:
        case Code::AbsToA: return LgUnit::Log10Seconds;
        case Code::ASD:
        case Code::ASA:
        case Code::ZSA:
        case Code::ZSD:
        case Code::ClusterASD: return LgUnit::Log10Degrees;
        case Code::KFactor:
        case Code::SF:
        case Code::PathLoss:
        case Code::ExcessPathLoss: return LgUnit::DB;
        default: return LgUnit::Dimensionless;
    }
}

struct LgValue {
    double value = 0.0;
    LgUnit unit = LgUnit::Dimensionless;

    friend bool operator==(const LgValue&, const LgValue&) = default;
};

/// Evaluation result; extrapolated is set when f lies outside the model's
/// fit range (the value is still returned).
struct EvalResult {
    LgValue lg;
    bool extrapolated = false;
};

}  // namespace lspfit
