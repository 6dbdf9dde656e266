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

#include "canyoncov/propagation.hpp"

#include "canyoncov/errors.hpp"

#include <cmath>
#include <numbers>

namespace canyoncov::propagation {

namespace {

void require_distance(double distance_m)
{
    if (!(distance_m >= 1.0))
        throw DomainError("distance must be >= 1 m (models are anchored at a 1-m intercept), got " +
                          std::to_string(distance_m));
}

} // namespace

void SlopeInterceptModel::validate() const
{
    if (!std::isfinite(intercept_db_1m) || !std::isfinite(exponent))
        throw DomainError("slope-intercept parameters must be finite");
    if (!(sigma_db >= 0.0))
        throw DomainError("sigma_db must be >= 0");
}

void CornerModel::validate() const
{
    if (!std::isfinite(intercept_db_1m) || !std::isfinite(exponent_before) || !std::isfinite(exponent_after))
        throw DomainError("corner model parameters must be finite");
    if (!(corner_distance_m > 1.0))
        throw DomainError("corner_distance_m must be > 1 m");
    if (!(corner_loss_db >= 0.0))
        throw DomainError("corner_loss_db must be >= 0");
}

double wavelength_m(double frequency_hz)
{
    if (!(frequency_hz > 0.0))
        throw DomainError("frequency must be positive");
    return kSpeedOfLight / frequency_hz;
}

double friis_path_gain(double distance_m, double frequency_hz)
{
    require_distance(distance_m);
    const double lambda = wavelength_m(frequency_hz);
    return 20.0 * std::log10(lambda / (4.0 * std::numbers::pi * distance_m));
}

double eval_slope_intercept(const SlopeInterceptModel& model, double distance_m)
{
    require_distance(distance_m);
    return model.intercept_db_1m + 10.0 * model.exponent * std::log10(distance_m);
}

CornerEvaluation eval_corner(const CornerModel& model, double x, double after_corner_min_m)
{
    model.validate();
    if (!(x > 1.0))
        throw DomainError("unwrapped distance must be > 1 m");

    const double dc = model.corner_distance_m;
    const double p1 = model.intercept_db_1m;
    if (x <= dc)
        return {p1 + 10.0 * model.exponent_before * std::log10(x), false};

    switch (model.variant) {
    case CornerVariant::DualSlope:
        return {p1 + 10.0 * model.exponent_before * std::log10(dc) - model.corner_loss_db +
                    10.0 * model.exponent_after * std::log10(x / dc),
                false};
    case CornerVariant::Diffraction:
    case CornerVariant::Scattering: {
        double past = x - dc;
        bool clamped = false;
        if (past < after_corner_min_m) {
            past = after_corner_min_m;
            clamped = true;
        }
        const double slope = model.variant == CornerVariant::Diffraction ? 5.0 : 10.0;
        return {p1 - model.corner_loss_db + slope * model.exponent_before * std::log10(dc * past), clamped};
    }
    }
    throw DomainError("unknown corner variant");
}

SlopeInterceptModel reference_model(ReferenceModel tag)
{
    // sigma carries the RMS deviation of the reference line from the roof-edge data.
    switch (tag) {
    case ReferenceModel::UmaLos:
        return {-56.9, -2.20, 12.3};
    case ReferenceModel::UmaNlos:
        return {-42.5, -3.91, 17.0};
    }
    throw DomainError("unknown reference model");
}

double eval_reference(ReferenceModel tag, double distance_m)
{
    return eval_slope_intercept(reference_model(tag), distance_m);
}

double excess_loss_db(const SlopeInterceptModel& model, double distance_m, double frequency_hz)
{
    return friis_path_gain(distance_m, frequency_hz) - eval_slope_intercept(model, distance_m);
}

const std::map<std::string, Preset>& preset_catalog()
{
    static const std::map<std::string, Preset> catalog = [] {
        std::map<std::string, Preset> c;
        c["roof-edge"] = SlopeInterceptModel{-35.0, -3.56, 7.1};
        c["roof-edge-fixed"] = SlopeInterceptModel{kFriisAt1mDb, -2.48, 7.5};
        c["offset"] = SlopeInterceptModel{-94.0, -1.44, 7.0};
        c["offset-fixed"] = SlopeInterceptModel{kFriisAt1mDb, -2.80, 7.7};
        c["lamppost"] = SlopeInterceptModel{-60.4, -2.42, 5.5};
        c["lamppost-fixed"] = SlopeInterceptModel{kFriisAt1mDb, -2.37, 5.5};
        c["uma-los"] = reference_model(ReferenceModel::UmaLos);
        c["uma-nlos"] = reference_model(ReferenceModel::UmaNlos);

        using V = CornerVariant;
        c["corner-diffraction-friis"] = CornerModel{kFriisAt1mDb, -2.27, 0.0, 2.2, 244.0, V::Diffraction};
        c["corner-scattering-friis"] = CornerModel{kFriisAt1mDb, -2.23, 0.0, 0.0, 244.0, V::Scattering};
        c["corner-dualslope-friis"] = CornerModel{kFriisAt1mDb, -2.27, -12.3, 12.0, 244.0, V::DualSlope};
        c["corner-diffraction-float"] = CornerModel{-52.1, -2.63, 0.0, 0.0, 244.0, V::Diffraction};
        c["corner-scattering-float"] = CornerModel{-81.3, -1.44, 0.0, 0.0, 244.0, V::Scattering};
        c["corner-dualslope-float"] = CornerModel{-11.8, -3.35, -12.2, 11.8, 244.0, V::DualSlope};
        return c;
    }();
    return catalog;
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto& [k, v] : preset_catalog())
        names.push_back(k);
    return names;
}

const Preset& find_preset(std::string_view key)
{
    const auto& c = preset_catalog();
    auto it = c.find(std::string(key));
    if (it == c.end())
        throw ConfigError("unknown preset '" + std::string(key) + "'");
    return it->second;
}

double eval_preset(const Preset& preset, double distance_m, bool* clamped)
{
    if (clamped)
        *clamped = false;
    if (const auto* si = std::get_if<SlopeInterceptModel>(&preset))
        return eval_slope_intercept(*si, distance_m);
    const auto r = eval_corner(std::get<CornerModel>(preset), distance_m);
    if (clamped)
        *clamped = r.clamped;
    return r.gain_db;
}

std::string_view to_string(CornerVariant v)
{
    switch (v) {
    case CornerVariant::Diffraction:
        return "diffraction";
    case CornerVariant::Scattering:
        return "scattering";
    case CornerVariant::DualSlope:
        return "dualslope";
    }
    return "unknown";
}

CornerVariant parse_corner_variant(std::string_view s)
{
    if (s == "diffraction")
        return CornerVariant::Diffraction;
    if (s == "scattering")
        return CornerVariant::Scattering;
    if (s == "dualslope" || s == "dual-slope")
        return CornerVariant::DualSlope;
    throw ConfigError("unknown corner variant '" + std::string(s) + "'");
}

} // namespace canyoncov::propagation
