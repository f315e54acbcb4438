// SPDX-License-Identifier: Apache-2.0
//
// Seeded lognormal sampling of large-scale parameters. The lg-domain
// statistic pair (mean, std) defines lg ~ Normal(mu(f), sigma(f)); samples
// are returned in linear units (seconds for DS, degrees for angular spreads).

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "lspfit/model_db.hpp"

namespace lspfit {

enum class LinearUnit : std::uint8_t { Seconds, Degrees };

constexpr std::string_view to_string(LinearUnit u) noexcept {
    return u == LinearUnit::Seconds ? "seconds" : "degrees";
}

struct SampleResult {
    std::vector<double> values;
    double mu = 0.0;
    double sigma = 0.0;          // after clamping
    bool sigma_clamped = false;  // sigma(f) < 0 was clamped to 0
    LinearUnit unit = LinearUnit::Seconds;
};

namespace detail {

// Deterministic standard-normal stream: Box-Muller over mt19937_64 uniforms.
// Not std::normal_distribution, whose output is implementation-defined; this
// keeps sample vectors bit-identical across standard libraries.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_pos();
        const double u2 = uniform_pos();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    // Uniform on (0, 1]; never 0, so log(u1) is finite.
    double uniform_pos() {
        const std::uint64_t bits = rng_() >> 11;  // 53 random bits
        return static_cast<double>(bits + 1) * 0x1p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace detail

/// Draw n independent linear-domain samples of the quantity described by a
/// (mean, std) model pair at frequency f. Deterministic in `seed`.
inline SampleResult sample_lsp(const ParamModel& model_mean, const ParamModel& model_std,
                               FreqGHz f, std::size_t n, std::uint64_t seed) {
    if (model_mean.key.statistic != StatisticKind::Mean)
        throw DomainError("sample_lsp: model_mean must have statistic Mean");
    if (model_std.key.statistic != StatisticKind::Std)
        throw DomainError("sample_lsp: model_std must have statistic Std");
    const ModelKey& a = model_mean.key;
    const ModelKey& b = model_std.key;
    if (a.scenario != b.scenario || a.condition != b.condition ||
        a.parameter != b.parameter || a.set != b.set)
        throw KeyMismatchError("sample_lsp: mean/std models disagree on scenario/condition/parameter/set");
    if (n < 1) throw DomainError("sample_lsp: n must be >= 1");

    const ParameterKind& p = model_mean.key.parameter;
    SampleResult out;
    if (p.code() == ParameterKind::Code::DS) {
        out.unit = LinearUnit::Seconds;
    } else if (p.is_angular()) {
        out.unit = LinearUnit::Degrees;
    } else {
        throw DomainError("sample_lsp: parameter '" + p.str() + "' is not a lognormal lg-quantity");
    }

    out.mu = evaluate(model_mean, f).lg.value;
    double sigma = evaluate(model_std, f).lg.value;
    if (sigma < 0.0) {
        sigma = 0.0;
        out.sigma_clamped = true;
    }
    out.sigma = sigma;

    detail::NormalStream normals(seed);
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lg = out.mu + sigma * normals.next();
        out.values.push_back(std::pow(10.0, lg));
    }
    return out;
}

}  // namespace lspfit
