// SPDX-License-Identifier: Apache-2.0
//
// The four estimators used to derive the frequency-dependent parameter
// models: arithmetic mean (AM), weighted mean (WM), ordinary least squares
// (OLS) and weighted least squares (WLS), over a chosen frequency basis.
// Plus the refit pipeline that regenerates model entries from statistic
// points.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lspfit/core.hpp"
#include "lspfit/model_db.hpp"

namespace lspfit {

enum class SourceType : std::uint8_t { Meas, RT };

constexpr std::string_view to_string(SourceType t) noexcept {
    return t == SourceType::Meas ? "Meas" : "RT";
}

inline std::optional<SourceType> try_parse_source_type(std::string_view t) noexcept {
    if (t == "Meas") return SourceType::Meas;
    if (t == "RT") return SourceType::RT;
    return std::nullopt;
}

enum class Release : std::uint8_t { Rel14, Rel19 };

constexpr std::string_view to_string(Release r) noexcept {
    return r == Release::Rel14 ? "Rel14" : "Rel19";
}

inline std::optional<Release> try_parse_release(std::string_view t) noexcept {
    if (t == "Rel14") return Release::Rel14;
    if (t == "Rel19") return Release::Rel19;
    return std::nullopt;
}

/// One reported statistic from one contributing source: e.g. "mean lgDS in
/// UMi LOS at 10.1 GHz was -7.6, per Keysight measurements, Rel-19".
struct StatPoint {
    Scenario scenario = Scenario::UMi;
    Condition condition = Condition::LOS;
    ParameterKind parameter = ParameterKind::Code::DS;
    StatisticKind statistic = StatisticKind::Mean;
    double freq_ghz = 1.0;
    double value = 0.0;
    double weight = 1.0;
    std::string source;
    SourceType source_type = SourceType::Meas;
    Release release = Release::Rel19;
    std::size_t source_line = 0;  // CSV line the point came from; 0 if synthetic
};

struct ReleaseFilter {
    bool rel14 = true;
    bool rel19 = true;

    static ReleaseFilter only(Release r) {
        return r == Release::Rel14 ? ReleaseFilter{true, false} : ReleaseFilter{false, true};
    }
    bool accepts(Release r) const noexcept {
        return r == Release::Rel14 ? rel14 : rel19;
    }
};

struct FitSpec {
    FitMethod method = FitMethod::OLS;  // AM, WM, OLS or WLS
    Basis basis = Basis::Const;
    FreqRange range_ghz{0.5, 100.0};
    ReleaseFilter releases;

    static FitSpec checked(FitMethod method, Basis basis, FreqRange range, ReleaseFilter rel) {
        if (method == FitMethod::Encoded)
            throw DomainError("fit spec: method must be AM, WM, OLS or WLS");
        if ((method == FitMethod::AM || method == FitMethod::WM) && basis != Basis::Const)
            throw DomainError("fit spec: AM/WM imply const basis");
        if (!(range.lo_ghz < range.hi_ghz))
            throw DomainError("fit spec: range requires lo < hi");
        return FitSpec{method, basis, range, rel};
    }
};

struct FitResult {
    ModelForm form;
    std::size_t n_points = 0;
    std::size_t n_distinct_x = 0;
    double rmse = 0.0;
    // Observed frequency span of the points that entered the fit (lo == hi
    // for a single frequency); the filter interval lives in the FitSpec.
    double range_used_lo_ghz = 0.0;
    double range_used_hi_ghz = 0.0;
};

struct FitError : Error {
    enum class Kind { EmptyAfterFilter, DegenerateFit, ZeroTotalWeight };
    Kind kind;
    FitError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

constexpr std::string_view to_string(FitError::Kind k) noexcept {
    switch (k) {
        case FitError::Kind::EmptyAfterFilter: return "EmptyAfterFilter";
        case FitError::Kind::DegenerateFit: return "DegenerateFit";
        case FitError::Kind::ZeroTotalWeight: return "ZeroTotalWeight";
    }
    return "?";
}

namespace detail {

struct XyPoint {
    double x;
    double y;
    double w;
};

// Shared accumulation core. Points are sorted before summation so that the
// result is exactly permutation-invariant.
inline FitResult fit_xy(std::vector<XyPoint> pts, FitMethod method, Basis basis) {
    if (pts.empty())
        throw FitError(FitError::Kind::EmptyAfterFilter, "fit: no points after filtering");
    for (const XyPoint& p : pts) {
        if (!(p.w >= 0.0) || !std::isfinite(p.w))
            throw DomainError("fit: weights must be >= 0 and finite");
    }
    std::sort(pts.begin(), pts.end(), [](const XyPoint& a, const XyPoint& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.w < b.w;
    });

    const bool weighted = method == FitMethod::WM || method == FitMethod::WLS;
    const bool linear = method == FitMethod::OLS || method == FitMethod::WLS;

    FitResult res;
    res.n_points = pts.size();

    if (weighted) {
        // Normalize by the largest weight. Equal weights become exactly 1, so
        // WM/WLS then reproduce AM/OLS bit-for-bit.
        double w_max = 0.0;
        for (const XyPoint& p : pts) w_max = std::max(w_max, p.w);
        if (w_max <= 0.0)
            throw FitError(FitError::Kind::ZeroTotalWeight, "fit: total weight must be > 0");
        for (XyPoint& p : pts) p.w /= w_max;
    }

    double w_total = 0.0;
    for (const XyPoint& p : pts) w_total += weighted ? p.w : 1.0;

    std::size_t distinct = 0;
    double prev_x = 0.0;
    bool first = true;
    for (const XyPoint& p : pts) {
        if (weighted && p.w == 0.0) continue;  // zero-weight points carry no information
        if (first || p.x != prev_x) ++distinct;
        prev_x = p.x;
        first = false;
    }
    res.n_distinct_x = distinct;

    if (!linear) {
        double acc = 0.0;
        for (const XyPoint& p : pts) acc += (weighted ? p.w : 1.0) * p.y;
        res.form = ModelForm{Basis::Const, 0.0, acc / w_total};
    } else {
        if (distinct < 2)
            throw FitError(FitError::Kind::DegenerateFit,
                           "fit: linear method needs >= 2 points with distinct basis(f)");
        // Mean-shifted normal equations; raw sums of x near 2 against y near
        // -7.5 would cancel badly.
        double mx = 0.0;
        double my = 0.0;
        for (const XyPoint& p : pts) {
            const double w = weighted ? p.w : 1.0;
            mx += w * p.x;
            my += w * p.y;
        }
        mx /= w_total;
        my /= w_total;
        double sxx = 0.0;
        double sxy = 0.0;
        for (const XyPoint& p : pts) {
            const double w = weighted ? p.w : 1.0;
            sxx += w * (p.x - mx) * (p.x - mx);
            sxy += w * (p.x - mx) * (p.y - my);
        }
        if (sxx <= 0.0)
            throw FitError(FitError::Kind::DegenerateFit,
                           "fit: zero spread in basis(f) among weighted points");
        const double slope = sxy / sxx;
        res.form = ModelForm{basis, slope, my - slope * mx};
    }

    double sq = 0.0;
    for (const XyPoint& p : pts) {
        const double w = weighted ? p.w : 1.0;
        const double r = p.y - (res.form.slope * p.x + res.form.intercept);
        sq += w * r * r;
    }
    res.rmse = std::sqrt(sq / w_total);
    return res;
}

}  // namespace detail

/// Fit the points that survive the spec's frequency-range (inclusive) and
/// release filters. AM/WM produce constants; OLS/WLS produce lines in
/// x = basis(f). OLS and AM ignore the weight column.
inline FitResult fit(std::span<const StatPoint> points, const FitSpec& spec) {
    std::vector<detail::XyPoint> xy;
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (const StatPoint& p : points) {
        if (!spec.range_ghz.contains(p.freq_ghz)) continue;
        if (!spec.releases.accepts(p.release)) continue;
        xy.push_back(detail::XyPoint{basis_value(spec.basis, p.freq_ghz), p.value, p.weight});
        lo = first ? p.freq_ghz : std::min(lo, p.freq_ghz);
        hi = first ? p.freq_ghz : std::max(hi, p.freq_ghz);
        first = false;
    }
    FitResult res = detail::fit_xy(std::move(xy), spec.method, spec.basis);
    res.range_used_lo_ghz = lo;
    res.range_used_hi_ghz = hi;
    return res;
}

// ---------------------------------------------------------------------------
// Refit pipeline
// ---------------------------------------------------------------------------

struct PlanEntry {
    ModelKey key;
    FitSpec spec;
};

/// FitSpec that regenerates a stored model: same method, basis and range;
/// Rel-19-only entries see Rel-19 data, everything else sees both releases.
inline FitSpec refit_spec_for(const ParamModel& m) {
    if (m.method == FitMethod::Encoded)
        throw DomainError("refit: legacy entries are encoded, not refittable");
    ReleaseFilter rel;
    if (m.key.set == ModelSet::Rel19Only) rel = ReleaseFilter::only(Release::Rel19);
    return FitSpec::checked(m.method, m.form.basis, m.fit_range_ghz, rel);
}

/// One plan entry per stored non-legacy model.
inline std::vector<PlanEntry> default_refit_plan(const ModelDb& db) {
    std::vector<PlanEntry> plan;
    for (const ParamModel& m : db.models()) {
        if (m.method == FitMethod::Encoded) continue;
        plan.push_back(PlanEntry{m.key, refit_spec_for(m)});
    }
    return plan;
}

struct RefitOutcome {
    ModelKey key;
    std::optional<FitResult> result;              // set on success
    std::optional<FitError::Kind> error;          // set on failure
    std::string error_message;
};

/// Run every plan entry over the points that match its key's scenario,
/// condition, parameter and statistic. Degenerate entries are reported as
/// errors alongside the successes, never dropped.
inline std::vector<RefitOutcome> refit_catalog(std::span<const StatPoint> points,
                                               std::span<const PlanEntry> plan) {
    for (std::size_t i = 0; i < plan.size(); ++i)
        for (std::size_t j = i + 1; j < plan.size(); ++j)
            if (plan[i].key == plan[j].key)
                throw DomainError("refit plan: duplicate key " + plan[i].key.str());

    std::vector<RefitOutcome> out;
    out.reserve(plan.size());
    for (const PlanEntry& entry : plan) {
        std::vector<StatPoint> selected;
        for (const StatPoint& p : points) {
            if (p.scenario == entry.key.scenario && p.condition == entry.key.condition &&
                p.parameter == entry.key.parameter && p.statistic == entry.key.statistic)
                selected.push_back(p);
        }
        RefitOutcome o;
        o.key = entry.key;
        try {
            o.result = fit(selected, entry.spec);
        } catch (const FitError& e) {
            o.error = e.kind;
            o.error_message = e.what();
        }
        out.push_back(std::move(o));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Residuals
// ---------------------------------------------------------------------------

struct ResidualRow {
    std::string source;
    double freq_ghz;
    double y;
    double y_hat;
    double residual;  // y - y_hat
};

/// Per-point residuals against a fit, largest |residual| first. The basis
/// must be the one the fit was produced with (Const results come from AM/WM
/// specs, whose basis is Const by construction).
inline std::vector<ResidualRow> residual_report(std::span<const StatPoint> points,
                                                const FitResult& result, Basis basis) {
    if (result.form.basis != basis)
        throw DomainError("residual_report: basis does not match the fit result");
    std::vector<ResidualRow> rows;
    rows.reserve(points.size());
    for (const StatPoint& p : points) {
        const double y_hat = result.form.eval(p.freq_ghz);
        rows.push_back(ResidualRow{p.source, p.freq_ghz, p.value, y_hat, p.value - y_hat});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const ResidualRow& a, const ResidualRow& b) {
        return std::abs(a.residual) > std::abs(b.residual);
    });
    return rows;
}

}  // namespace lspfit
