// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The canyoncov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "canyoncov/fitting.hpp"

#include "canyoncov/errors.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace canyoncov::fitting {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LinearSolution {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::VectorXd param_variance; // diagonal of s^2 (X'X)^-1, NaN without dof
};

LinearSolution solve_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y)
{
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < p)
        throw FitError("degenerate design: regressors are collinear (e.g. all distances equal)");

    LinearSolution s;
    s.beta = qr.solve(y);
    s.residuals = y - X * s.beta;
    const Eigen::Index dof = n - p;
    if (dof <= 0) {
        s.param_variance = Eigen::VectorXd::Constant(p, kNaN);
        return s;
    }
    const double s2 = s.residuals.squaredNorm() / static_cast<double>(dof);
    const Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    s.param_variance = s2 * xtx_inv.diagonal();
    return s;
}

double rms(const Eigen::VectorXd& r)
{
    return std::sqrt(r.squaredNorm() / static_cast<double>(r.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v)
{
    return {v.data(), v.data() + v.size()};
}

void validate_records(std::span<const LinkRecord> records)
{
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto why = records[i].invalid_reason();
        if (!why.empty())
            throw DomainError("record " + std::to_string(i) + ": " + why);
    }
}

} // namespace

std::string_view to_string(Scenario s)
{
    switch (s) {
    case Scenario::RoofEdge:
        return "RoofEdge";
    case Scenario::Offset:
        return "Offset";
    case Scenario::Lamppost:
        return "Lamppost";
    case Scenario::SameStreetCorner:
        return "SameStreetCorner";
    case Scenario::AroundCorner:
        return "AroundCorner";
    }
    return "Unknown";
}

std::optional<Scenario> parse_scenario(std::string_view s)
{
    for (auto sc : {Scenario::RoofEdge, Scenario::Offset, Scenario::Lamppost, Scenario::SameStreetCorner,
                    Scenario::AroundCorner})
        if (s == to_string(sc))
            return sc;
    return std::nullopt;
}

std::string LinkRecord::invalid_reason() const
{
    if (!std::isfinite(path_gain_db))
        return "path_gain_db is not finite";
    if (!std::isfinite(unwrapped_distance_m) || !(unwrapped_distance_m > 1.0))
        return "distance_m must be > 1 m";
    if (scenario == Scenario::AroundCorner) {
        if (!corner_distance_m)
            return "AroundCorner record requires corner_distance_m";
        if (!(*corner_distance_m > 1.0))
            return "corner_distance_m must be > 1 m";
        if (!(*corner_distance_m < unwrapped_distance_m))
            return "corner_distance_m must be below distance_m";
    } else if (corner_distance_m) {
        return "corner_distance_m is only allowed for AroundCorner records";
    }
    return {};
}

const ParamEstimate& FitResult::param(std::string_view name) const
{
    for (const auto& p : params)
        if (p.name == name)
            return p;
    throw std::out_of_range("no fitted parameter named " + std::string(name));
}

const propagation::SlopeInterceptModel& FitResult::slope_intercept() const
{
    return std::get<propagation::SlopeInterceptModel>(model);
}

const propagation::CornerModel& FitResult::corner() const
{
    return std::get<propagation::CornerModel>(model);
}

double z_value(double ci_level)
{
    if (!(ci_level > 0.0 && ci_level < 1.0))
        throw DomainError("confidence level must lie in (0, 1)");
    return boost::math::quantile(boost::math::normal(), 0.5 + ci_level / 2.0);
}

FitResult fit_slope_intercept(std::span<const LinkRecord> records, double ci_level)
{
    validate_records(records);
    if (records.size() < 2)
        throw FitError("slope-intercept fit needs at least 2 records");
    std::set<double> distinct;
    for (const auto& r : records)
        distinct.insert(r.unwrapped_distance_m);
    if (distinct.size() < 2)
        throw FitError("degenerate design: all distances are equal");

    const auto n = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = 10.0 * std::log10(records[i].unwrapped_distance_m);
        y(i) = records[i].path_gain_db;
    }
    const auto sol = solve_ols(X, y);
    const double z = z_value(ci_level);

    FitResult out;
    out.ci_level = ci_level;
    out.rmse_db = rms(sol.residuals);
    out.residuals_db = to_std(sol.residuals);
    out.model = propagation::SlopeInterceptModel{sol.beta(0), sol.beta(1), out.rmse_db};
    out.params = {{"intercept_db_1m", sol.beta(0), z * std::sqrt(sol.param_variance(0))},
                  {"exponent", sol.beta(1), z * std::sqrt(sol.param_variance(1))}};
    return out;
}

FitResult fit_fixed_intercept(std::span<const LinkRecord> records, double intercept_db_1m, double ci_level)
{
    validate_records(records);
    if (records.empty())
        throw FitError("fixed-intercept fit needs at least 1 record");

    const auto n = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd X(n, 1);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = 10.0 * std::log10(records[i].unwrapped_distance_m);
        y(i) = records[i].path_gain_db - intercept_db_1m;
    }
    const auto sol = solve_ols(X, y);
    const double z = z_value(ci_level);

    FitResult out;
    out.ci_level = ci_level;
    out.rmse_db = rms(sol.residuals);
    out.residuals_db = to_std(sol.residuals);
    out.model = propagation::SlopeInterceptModel{intercept_db_1m, sol.beta(0), out.rmse_db};
    out.params = {{"intercept_db_1m", intercept_db_1m, 0.0},
                  {"exponent", sol.beta(0), z * std::sqrt(sol.param_variance(0))}};
    return out;
}

FitResult fit_corner_model(std::span<const LinkRecord> records, propagation::CornerVariant variant,
                           InterceptMode mode, std::optional<double> corner_distance_override, double ci_level,
                           double pinned_intercept_db, double after_corner_min_m)
{
    using propagation::CornerVariant;
    validate_records(records);
    if (corner_distance_override && !(*corner_distance_override > 1.0))
        throw DomainError("corner distance override must be > 1 m");

    std::size_t before = 0;
    std::size_t after = 0;
    for (const auto& r : records)
        (r.scenario == Scenario::AroundCorner ? after : before)++;
    if (before < 2 || after < 2)
        throw FitError("corner fit needs at least 2 before-corner and 2 after-corner records");

    const bool floating = mode == InterceptMode::Floating;
    const bool dual = variant == CornerVariant::DualSlope;
    const double slope = variant == CornerVariant::Diffraction ? 5.0 : 10.0;

    // Column layout: [P1] n (or n1) [n2] D, with D entering as -D.
    const int col_p1 = floating ? 0 : -1;
    const int col_n = floating ? 1 : 0;
    const int col_n2 = dual ? col_n + 1 : -1;
    const int col_delta = (dual ? col_n2 : col_n) + 1;
    const int cols = col_delta + 1;

    const auto n = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, cols);
    Eigen::VectorXd y(n);
    double first_dc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = records[i];
        const double x = r.unwrapped_distance_m;
        y(i) = r.path_gain_db - (floating ? 0.0 : pinned_intercept_db);
        if (col_p1 >= 0)
            X(i, col_p1) = 1.0;
        if (r.scenario != Scenario::AroundCorner) {
            X(i, col_n) = 10.0 * std::log10(x);
            continue;
        }
        const double dc = corner_distance_override ? *corner_distance_override : *r.corner_distance_m;
        if (!(x > dc))
            throw DomainError("record " + std::to_string(i) + ": after-corner distance must exceed the corner distance");
        if (first_dc == 0.0)
            first_dc = dc;
        if (dual) {
            X(i, col_n) = 10.0 * std::log10(dc);
            X(i, col_n2) = 10.0 * std::log10(x / dc);
        } else {
            X(i, col_n) = slope * std::log10(dc * std::max(x - dc, after_corner_min_m));
        }
        X(i, col_delta) = -1.0;
    }

    const double z = z_value(ci_level);
    auto sol = solve_ols(X, y);
    bool delta_at_bound = false;
    if (sol.beta(col_delta) < 0.0) {
        // The constrained optimum of a single bound lies on the boundary.
        sol = solve_ols(X.leftCols(cols - 1), y);
        sol.beta.conservativeResize(cols);
        sol.beta(col_delta) = 0.0;
        sol.param_variance.conservativeResize(cols);
        sol.param_variance(col_delta) = 0.0;
        delta_at_bound = true;
    }

    propagation::CornerModel m;
    m.variant = variant;
    m.intercept_db_1m = floating ? sol.beta(col_p1) : pinned_intercept_db;
    m.exponent_before = sol.beta(col_n);
    m.exponent_after = dual ? sol.beta(col_n2) : 0.0;
    m.corner_loss_db = sol.beta(col_delta);
    m.corner_distance_m = corner_distance_override ? *corner_distance_override : first_dc;

    const auto hw = [&](int col) { return col < 0 ? 0.0 : z * std::sqrt(sol.param_variance(col)); };

    FitResult out;
    out.ci_level = ci_level;
    out.rmse_db = rms(sol.residuals);
    out.residuals_db = to_std(sol.residuals);
    out.model = m;
    out.params.push_back({"intercept_db_1m", m.intercept_db_1m, hw(col_p1)});
    out.params.push_back({dual ? "exponent_before" : "exponent", m.exponent_before, hw(col_n)});
    if (dual)
        out.params.push_back({"exponent_after", m.exponent_after, hw(col_n2)});
    out.params.push_back({"corner_loss_db", m.corner_loss_db, delta_at_bound ? 0.0 : hw(col_delta)});
    return out;
}

double lognormality_deviation(std::span<const double> residuals_db, std::optional<double> sd_override,
                              double point_fraction)
{
    if (residuals_db.size() < kMinLognormalSamples)
        throw DomainError("log-normality check needs at least 100 residuals");
    if (!(point_fraction > 0.0 && point_fraction <= 1.0))
        throw DomainError("point fraction must lie in (0, 1]");

    std::vector<double> r(residuals_db.begin(), residuals_db.end());
    std::sort(r.begin(), r.end());
    const double n = static_cast<double>(r.size());
    const double mean = std::accumulate(r.begin(), r.end(), 0.0) / n;
    double sd = 0.0;
    if (sd_override) {
        sd = *sd_override;
    } else {
        double ss = 0.0;
        for (double v : r)
            ss += (v - mean) * (v - mean);
        sd = std::sqrt(ss / (n - 1.0));
    }
    if (!(sd >= 0.0) || !std::isfinite(sd))
        throw DomainError("standard deviation must be finite and >= 0");

    const boost::math::normal unit;
    std::vector<double> dev(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double p = (static_cast<double>(i) + 0.5) / n;
        dev[i] = std::abs(r[i] - (mean + sd * boost::math::quantile(unit, p)));
    }
    std::sort(dev.begin(), dev.end());
    const double h = (n - 1.0) * point_fraction;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, dev.size() - 1);
    return dev[lo] + (h - static_cast<double>(lo)) * (dev[hi] - dev[lo]);
}

} // namespace canyoncov::fitting
