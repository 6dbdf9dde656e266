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

#ifndef CANYONCOV_FITTING_HPP
#define CANYONCOV_FITTING_HPP

#include "canyoncov/propagation.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace canyoncov::fitting {

enum class Scenario { RoofEdge, Offset, Lamppost, SameStreetCorner, AroundCorner };

std::string_view to_string(Scenario s);
std::optional<Scenario> parse_scenario(std::string_view s);

struct LinkRecord {
    std::string street_id;
    Scenario scenario = Scenario::RoofEdge;
    double unwrapped_distance_m = 0.0;
    double path_gain_db = 0.0;
    std::optional<double> corner_distance_m; // present iff AroundCorner

    // Empty when the record is valid, otherwise the reason it is not.
    std::string invalid_reason() const;
};

struct ParamEstimate {
    std::string name;
    double value = 0.0;
    // Half-width of the two-sided confidence interval. NaN when the residual
    // variance is undefined (no degrees of freedom); 0 for a parameter pinned
    // at a constraint boundary.
    double ci_half_width = 0.0;
};

struct FitResult {
    std::variant<propagation::SlopeInterceptModel, propagation::CornerModel> model;
    std::vector<ParamEstimate> params;
    double rmse_db = 0.0;
    std::vector<double> residuals_db; // observed - fitted, record order
    double ci_level = 0.9;

    const ParamEstimate& param(std::string_view name) const;
    const propagation::SlopeInterceptModel& slope_intercept() const;
    const propagation::CornerModel& corner() const;
};

// Two-sided normal quantile, 1.645 for 0.9.
double z_value(double ci_level);

// OLS of path gain on 10 log10(d); sigma of the returned model is the rmse.
FitResult fit_slope_intercept(std::span<const LinkRecord> records, double ci_level = 0.9);

// Exponent-only least squares with the 1-m intercept pinned.
FitResult fit_fixed_intercept(std::span<const LinkRecord> records, double intercept_db_1m, double ci_level = 0.9);

enum class InterceptMode { PinnedFriis, Floating };

// Joint linear fit of a corner model. AroundCorner records supply the
// after-corner branch, every other scenario the before-corner branch. Each
// after-corner record uses its own corner distance unless an override is given.
// Corner loss is held >= 0 by clip-and-refit.
FitResult fit_corner_model(std::span<const LinkRecord> records, propagation::CornerVariant variant,
                           InterceptMode mode, std::optional<double> corner_distance_override = std::nullopt,
                           double ci_level = 0.9, double pinned_intercept_db = propagation::kFriisAt1mDb,
                           double after_corner_min_m = propagation::kAfterCornerMinM);

inline constexpr std::size_t kMinLognormalSamples = 100;

// Horizontal (dB-axis) distance between the residual quantiles and the
// quantiles of a normal law with the same mean and standard deviation,
// at Hazen plotting positions, reported as the level not exceeded by
// `point_fraction` of the points. An sd override replaces the sample sd.
double lognormality_deviation(std::span<const double> residuals_db, std::optional<double> sd_override = std::nullopt,
                              double point_fraction = 0.99);

} // namespace canyoncov::fitting

#endif
