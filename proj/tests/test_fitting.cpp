// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lspfit/fitting.hpp"
#include "lspfit/synthetic.hpp"
#include "support/reference_coefficients.hpp"

using namespace lspfit;

namespace {

// Independent closed-form oracle: textbook normal equations on raw sums,
// accumulated in long double. Deliberately a different algebraic route from
// the library's mean-shifted implementation.
struct OracleLine {
    double slope;
    double intercept;
};

OracleLine oracle_wls(const std::vector<double>& x, const std::vector<double>& y,
                      const std::vector<double>& w) {
    long double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
        sxx += w[i] * x[i] * x[i];
        sxy += w[i] * x[i] * y[i];
    }
    const long double den = sw * sxx - sx * sx;
    const long double slope = (sw * sxy - sx * sy) / den;
    const long double intercept = (sy - slope * sx) / sw;
    return {static_cast<double>(slope), static_cast<double>(intercept)};
}

OracleLine oracle_ols(const std::vector<double>& x, const std::vector<double>& y) {
    return oracle_wls(x, y, std::vector<double>(x.size(), 1.0));
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

StatPoint pt(double f, double value, double weight = 1.0, Release rel = Release::Rel19) {
    StatPoint p;
    p.freq_ghz = f;
    p.value = value;
    p.weight = weight;
    p.release = rel;
    p.source = "test";
    return p;
}

FitSpec spec_of(FitMethod m, Basis b, double lo = 0.1, double hi = 200.0,
                ReleaseFilter rel = {}) {
    return FitSpec::checked(m, b, FreqRange{lo, hi}, rel);
}

}  // namespace

TEST_CASE("two points define the OLS line exactly") {
    // basis pre-applied: x = 0 and 1
    auto r = detail::fit_xy({{0, 1, 1}, {1, 3, 1}}, FitMethod::OLS, Basis::LinearF);
    CHECK(r.form.slope == 2.0);
    CHECK(r.form.intercept == 1.0);
    CHECK(r.n_points == 2);
    CHECK(r.n_distinct_x == 2);
    CHECK(r.rmse == 0.0);
}

TEST_CASE("three-point OLS matches the closed-form oracle") {
    auto r = detail::fit_xy({{0, 0, 1}, {1, 1, 1}, {2, 3, 1}}, FitMethod::OLS, Basis::LinearF);
    CHECK(rel_close(r.form.slope, 1.5, 1e-15));
    CHECK(rel_close(r.form.intercept, -1.0 / 6.0, 1e-15));
    CHECK(rel_close(r.rmse, std::sqrt(1.0 / 18.0), 1e-13));

    const auto o = oracle_ols({0, 1, 2}, {0, 1, 3});
    CHECK(rel_close(r.form.slope, o.slope, 1e-12));
    CHECK(rel_close(r.form.intercept, o.intercept, 1e-12));
}

TEST_CASE("weighted fit follows the weighted normal equations") {
    auto r = detail::fit_xy({{0, 0, 1}, {1, 1, 1}, {2, 3, 2}}, FitMethod::WLS, Basis::LinearF);
    CHECK(rel_close(r.form.slope, 17.0 / 11.0, 1e-14));
    CHECK(rel_close(r.form.intercept, -2.0 / 11.0, 1e-14));

    const auto o = oracle_wls({0, 1, 2}, {0, 1, 3}, {1, 1, 2});
    CHECK(rel_close(r.form.slope, o.slope, 1e-12));
    CHECK(rel_close(r.form.intercept, o.intercept, 1e-12));
}

TEST_CASE("AM and WM constants") {
    auto am = detail::fit_xy({{0, 1, 5}, {1, 2, 5}, {2, 6, 5}}, FitMethod::AM, Basis::Const);
    CHECK(am.form.basis == Basis::Const);
    CHECK(am.form.slope == 0.0);
    CHECK(am.form.intercept == 3.0);  // unweighted mean, weights ignored

    auto wm = detail::fit_xy({{0, 1, 1}, {1, 2, 1}, {2, 6, 2}}, FitMethod::WM, Basis::Const);
    CHECK(wm.form.intercept == (1.0 + 2.0 + 12.0) / 4.0);
}

TEST_CASE("oracle equivalence on randomized small datasets") {
    std::mt19937 rng(20250809);
    std::uniform_int_distribution<int> n_dist(2, 12);
    std::uniform_real_distribution<double> x_dist(std::log10(1.5), 2.0);
    std::uniform_real_distribution<double> y_dist(-8.0, 2.0);
    std::uniform_real_distribution<double> w_dist(1e-3, 5.0);

    int linear_cases = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = n_dist(rng);
        std::vector<double> x(n), y(n), w(n);
        std::vector<detail::XyPoint> pts(n);
        for (int i = 0; i < n; ++i) {
            x[i] = x_dist(rng);
            y[i] = y_dist(rng);
            w[i] = w_dist(rng);
            pts[i] = {x[i], y[i], w[i]};
        }
        const bool distinct = std::abs(*std::max_element(x.begin(), x.end()) -
                                       *std::min_element(x.begin(), x.end())) > 1e-9;
        if (!distinct) continue;
        ++linear_cases;

        const auto ols = detail::fit_xy(pts, FitMethod::OLS, Basis::Log10F);
        const auto o1 = oracle_ols(x, y);
        CHECK(rel_close(ols.form.slope, o1.slope, 1e-9));
        CHECK(rel_close(ols.form.intercept, o1.intercept, 1e-9));

        const auto wls = detail::fit_xy(pts, FitMethod::WLS, Basis::Log10F);
        const auto o2 = oracle_wls(x, y, w);
        CHECK(rel_close(wls.form.slope, o2.slope, 1e-9));
        CHECK(rel_close(wls.form.intercept, o2.intercept, 1e-9));
    }
    CHECK(linear_cases == 100);  // the x range makes coincident draws implausible
}

TEST_CASE("equal weights collapse WLS to OLS and WM to AM") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> x_dist(0.2, 2.0);
    std::uniform_real_distribution<double> y_dist(-8.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<detail::XyPoint> pts;
        for (int i = 0; i < 8; ++i) pts.push_back({x_dist(rng), y_dist(rng), 2.5});
        const auto wls = detail::fit_xy(pts, FitMethod::WLS, Basis::Log10F);
        const auto ols = detail::fit_xy(pts, FitMethod::OLS, Basis::Log10F);
        CHECK(rel_close(wls.form.slope, ols.form.slope, 1e-12));
        CHECK(rel_close(wls.form.intercept, ols.form.intercept, 1e-12));

        const auto wm = detail::fit_xy(pts, FitMethod::WM, Basis::Const);
        const auto am = detail::fit_xy(pts, FitMethod::AM, Basis::Const);
        CHECK(wm.form.intercept == am.form.intercept);
    }
}

TEST_CASE("scaling all weights leaves weighted fits unchanged") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 3.0);
    std::vector<detail::XyPoint> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({dist(rng), dist(rng) - 7.0, dist(rng)});
    const auto base = detail::fit_xy(pts, FitMethod::WLS, Basis::Log10F);
    for (double c : {1e-6, 0.5, 3.0, 1e6}) {
        auto scaled = pts;
        for (auto& p : scaled) p.w *= c;
        const auto r = detail::fit_xy(scaled, FitMethod::WLS, Basis::Log10F);
        CHECK(rel_close(r.form.slope, base.form.slope, 1e-12));
        CHECK(rel_close(r.form.intercept, base.form.intercept, 1e-12));
        const auto wm = detail::fit_xy(scaled, FitMethod::WM, Basis::Const);
        const auto wm0 = detail::fit_xy(pts, FitMethod::WM, Basis::Const);
        CHECK(rel_close(wm.form.intercept, wm0.form.intercept, 1e-12));
    }
}

TEST_CASE("residuals are orthogonal to the design") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> x_dist(0.2, 2.0);
    std::uniform_real_distribution<double> y_dist(-8.0, 2.0);
    std::uniform_real_distribution<double> w_dist(0.1, 4.0);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<detail::XyPoint> pts;
        double sum_abs_y = 0;
        for (int i = 0; i < 10; ++i) {
            pts.push_back({x_dist(rng), y_dist(rng), w_dist(rng)});
            sum_abs_y += std::abs(pts.back().y);
        }
        const double tol = 1e-9 * sum_abs_y;

        const auto ols = detail::fit_xy(pts, FitMethod::OLS, Basis::Log10F);
        double sr = 0, srx = 0;
        for (const auto& p : pts) {
            const double r = p.y - (ols.form.slope * p.x + ols.form.intercept);
            sr += r;
            srx += r * p.x;
        }
        CHECK(std::abs(sr) < tol);
        CHECK(std::abs(srx) < tol);

        const auto wls = detail::fit_xy(pts, FitMethod::WLS, Basis::Log10F);
        double wsr = 0, wsrx = 0;
        for (const auto& p : pts) {
            const double r = p.y - (wls.form.slope * p.x + wls.form.intercept);
            wsr += p.w * r;
            wsrx += p.w * r * p.x;
        }
        CHECK(std::abs(wsr) < tol);
        CHECK(std::abs(wsrx) < tol);
    }
}

TEST_CASE("points on an exact line are recovered for every basis") {
    for (Basis b : {Basis::Log10F, Basis::Log10OnePlusF, Basis::LinearF}) {
        const double slope = -0.22, intercept = -6.87;
        std::vector<StatPoint> points;
        for (double f : {0.5, 2.0, 6.75, 9.0, 13.0, 24.0, 60.0, 100.0})
            points.push_back(pt(f, slope * basis_value(b, f) + intercept));
        for (FitMethod m : {FitMethod::OLS, FitMethod::WLS}) {
            const auto r = fit(points, spec_of(m, b));
            INFO(to_string(b) << "/" << to_string(m));
            CHECK(rel_close(r.form.slope, slope, 1e-9));
            CHECK(rel_close(r.form.intercept, intercept, 1e-9));
            CHECK(r.rmse < 1e-12);
        }
    }
}

TEST_CASE("permutation of the input points never changes the coefficients") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(0.5, 30.0);
    std::vector<StatPoint> points;
    for (int i = 0; i < 12; ++i) points.push_back(pt(dist(rng), dist(rng) - 9.0, dist(rng)));

    for (FitMethod m : {FitMethod::OLS, FitMethod::WLS}) {
        const auto base = fit(points, spec_of(m, Basis::Log10OnePlusF));
        auto shuffled = points;
        for (int k = 0; k < 5; ++k) {
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            const auto r = fit(shuffled, spec_of(m, Basis::Log10OnePlusF));
            CHECK(r.form.slope == base.form.slope);  // bit-identical
            CHECK(r.form.intercept == base.form.intercept);
            CHECK(r.rmse == base.rmse);
        }
    }
}

TEST_CASE("range and release filters select the fitted subset") {
    std::vector<StatPoint> points;
    // Rel19 points on one line inside 6-24 ...
    for (double f : {6.75, 9.0, 13.0, 24.0})
        points.push_back(pt(f, -0.15 * basis_value(Basis::Log10OnePlusF, f) - 7.50, 1.0,
                            Release::Rel19));
    // ... and Rel14 decoys, one inside the band and several outside ...
    for (double f : {0.5, 10.0, 40.0})
        points.push_back(pt(f, 1.0, 1.0, Release::Rel14));
    // ... plus a Rel19 point past the range: only range filtering drops it.
    points.push_back(pt(40.0, 1.0, 1.0, Release::Rel19));

    const auto r = fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF, 6.0, 24.0,
                                       ReleaseFilter::only(Release::Rel19)));
    CHECK(r.n_points == 4);
    CHECK(rel_close(r.form.slope, -0.15, 1e-9));
    CHECK(rel_close(r.form.intercept, -7.50, 1e-9));
    CHECK(r.range_used_lo_ghz == 6.75);
    CHECK(r.range_used_hi_ghz == 24.0);

    SECTION("inclusive endpoints") {
        const auto r2 = fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF, 6.75, 24.0,
                                            ReleaseFilter::only(Release::Rel19)));
        CHECK(r2.n_points == 4);
    }
}

TEST_CASE("degenerate inputs raise typed fit errors") {
    SECTION("empty after filter") {
        std::vector<StatPoint> points = {pt(50.0, 1.0)};
        CHECK_THROWS_AS(fit(points, spec_of(FitMethod::AM, Basis::Const, 6.0, 24.0)), FitError);
        try {
            fit(points, spec_of(FitMethod::AM, Basis::Const, 6.0, 24.0));
        } catch (const FitError& e) {
            CHECK(e.kind == FitError::Kind::EmptyAfterFilter);
        }
    }
    SECTION("one point is fine for AM, degenerate for OLS") {
        std::vector<StatPoint> points = {pt(9.0, 0.46)};
        CHECK(fit(points, spec_of(FitMethod::AM, Basis::Const)).form.intercept == 0.46);
        try {
            fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF));
            FAIL("expected DegenerateFit");
        } catch (const FitError& e) {
            CHECK(e.kind == FitError::Kind::DegenerateFit);
        }
    }
    SECTION("identical basis values are degenerate for linear fits") {
        std::vector<StatPoint> points = {pt(9.0, 1.0), pt(9.0, 2.0), pt(9.0, 3.0)};
        CHECK_THROWS_AS(fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF)), FitError);
    }
    SECTION("zero total weight") {
        std::vector<StatPoint> points = {pt(7.0, 1.0, 0.0), pt(9.0, 2.0, 0.0)};
        try {
            fit(points, spec_of(FitMethod::WM, Basis::Const));
            FAIL("expected ZeroTotalWeight");
        } catch (const FitError& e) {
            CHECK(e.kind == FitError::Kind::ZeroTotalWeight);
        }
    }
    SECTION("weighted linear fit needs spread among weighted points") {
        std::vector<StatPoint> points = {pt(7.0, 1.0, 1.0), pt(9.0, 2.0, 0.0), pt(13.0, 2.0, 0.0)};
        CHECK_THROWS_AS(fit(points, spec_of(FitMethod::WLS, Basis::Log10OnePlusF)), FitError);
    }
    SECTION("negative weights are rejected") {
        std::vector<StatPoint> points = {pt(7.0, 1.0, -1.0), pt(9.0, 2.0, 1.0)};
        CHECK_THROWS_AS(fit(points, spec_of(FitMethod::WLS, Basis::Log10OnePlusF)), DomainError);
    }
    SECTION("AM/WM require const basis") {
        CHECK_THROWS_AS(FitSpec::checked(FitMethod::AM, Basis::Log10F, FreqRange{6, 24}, {}),
                        DomainError);
    }
}

TEST_CASE("refit of synthetic points regenerates the reference coefficients") {
    const auto points = synthetic::points();
    const auto plan = default_refit_plan(ModelDb::builtin());
    const auto outcomes = refit_catalog(points, plan);
    REQUIRE(outcomes.size() == plan.size());

    // Expected coefficients come from the independent reference table, not
    // from the database that generated the points.
    std::size_t checked = 0;
    for (const auto& o : outcomes) {
        REQUIRE(o.result.has_value());
        const ModelKey canon = ModelDb::canonical_key(o.key);
        for (const auto& e : lspfit::testsupport::expected_models()) {
            if (lspfit::testsupport::key_of(e) != canon) continue;
            INFO(canon.str());
            CHECK(rel_close(o.result->form.slope, e.slope, 1e-9));
            CHECK(rel_close(o.result->form.intercept, e.intercept, 1e-9));
            ++checked;
        }
        if (o.key.parameter.is_pen_loss()) {
            CHECK(rel_close(o.result->form.slope, 0.17, 1e-9));
            CHECK(rel_close(o.result->form.intercept, 1.03, 1e-9));
            ++checked;
        }
    }
    CHECK(checked == plan.size());
}

TEST_CASE("refit pipeline edge cases") {
    const ModelKey key{Scenario::UMi, Condition::LOS, ParameterKind::Code::DS,
                       StatisticKind::Mean, ModelSet::Rel19Only};
    const FitSpec spec = spec_of(FitMethod::OLS, Basis::Log10OnePlusF, 6.0, 24.0,
                                 ReleaseFilter::only(Release::Rel19));

    SECTION("single-entry plan on exact-line points") {
        std::vector<StatPoint> points;
        for (double f : {6.75, 9.0, 13.0, 16.95, 24.0}) {
            StatPoint p = pt(f, -0.15 * basis_value(Basis::Log10OnePlusF, f) - 7.50);
            p.scenario = Scenario::UMi;
            p.condition = Condition::LOS;
            p.parameter = ParameterKind::Code::DS;
            p.statistic = StatisticKind::Mean;
            points.push_back(p);
        }
        const auto outcomes = refit_catalog(points, std::vector<PlanEntry>{{key, spec}});
        REQUIRE(outcomes.size() == 1);
        REQUIRE(outcomes[0].result.has_value());
        CHECK(rel_close(outcomes[0].result->form.slope, -0.15, 1e-9));
        CHECK(rel_close(outcomes[0].result->form.intercept, -7.50, 1e-9));
    }
    SECTION("empty points report EmptyAfterFilter per entry, not silently") {
        const auto outcomes = refit_catalog(std::vector<StatPoint>{},
                                            std::vector<PlanEntry>{{key, spec}});
        REQUIRE(outcomes.size() == 1);
        CHECK_FALSE(outcomes[0].result.has_value());
        REQUIRE(outcomes[0].error.has_value());
        CHECK(*outcomes[0].error == FitError::Kind::EmptyAfterFilter);
    }
    SECTION("duplicate plan keys are rejected") {
        const std::vector<PlanEntry> plan = {{key, spec}, {key, spec}};
        CHECK_THROWS_AS(refit_catalog(std::vector<StatPoint>{}, plan), DomainError);
    }
}

TEST_CASE("residual report") {
    SECTION("computed residuals, sorted by magnitude") {
        // x-shifted version of the closed-form example (residuals are
        // invariant under a shift of x): residuals 1/6, -1/3, 1/6.
        std::vector<StatPoint> points = {pt(1.0, 0.0), pt(2.0, 1.0), pt(3.0, 3.0)};
        const auto r = fit(points, spec_of(FitMethod::OLS, Basis::LinearF));
        CHECK(rel_close(r.form.slope, 1.5, 1e-12));

        const auto rows = residual_report(points, r, Basis::LinearF);
        REQUIRE(rows.size() == 3);
        CHECK(std::abs(rows[0].residual - (-1.0 / 3.0)) < 1e-12);
        CHECK(rows[0].freq_ghz == 2.0);
        CHECK(std::abs(rows[1].residual - 1.0 / 6.0) < 1e-12);
        CHECK(std::abs(rows[2].residual - 1.0 / 6.0) < 1e-12);
        CHECK(rows[0].y_hat == r.form.eval(2.0));
    }
    SECTION("exact-line points give zero residuals") {
        std::vector<StatPoint> points;
        for (double f : {6.75, 9.0, 13.0})
            points.push_back(pt(f, 0.19 * basis_value(Basis::Log10OnePlusF, f) + 0.22));
        const auto r = fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF));
        for (const auto& row : residual_report(points, r, Basis::Log10OnePlusF))
            CHECK(std::abs(row.residual) < 1e-12);
    }
    SECTION("single-point AM has zero residual") {
        std::vector<StatPoint> points = {pt(9.0, 0.46)};
        const auto r = fit(points, spec_of(FitMethod::AM, Basis::Const));
        const auto rows = residual_report(points, r, Basis::Const);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].residual == 0.0);
    }
    SECTION("basis mismatch is rejected") {
        std::vector<StatPoint> points = {pt(9.0, 1.0), pt(13.0, 2.0)};
        const auto r = fit(points, spec_of(FitMethod::OLS, Basis::Log10OnePlusF));
        CHECK_THROWS_AS(residual_report(points, r, Basis::Log10F), DomainError);
    }
}
