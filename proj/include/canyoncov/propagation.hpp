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

#ifndef CANYONCOV_PROPAGATION_HPP
#define CANYONCOV_PROPAGATION_HPP

#include <map>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace canyoncov::propagation {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kCarrierHz = 28.0e9;

// Free-space gain at 1 m and 28 GHz as tabulated for the measured corner fits.
// friis_path_gain(1, kCarrierHz) evaluates to -61.39 dB.
inline constexpr double kFriisAt1mDb = -61.4;

// Closest measured point behind a corner. Diffraction and scattering corner
// models diverge as the distance past the corner goes to zero, so they are
// not evaluated closer than this.
inline constexpr double kAfterCornerMinM = 10.0;

// Log-distance model: gain(d) = A + 10 n log10(d) + N(0, sigma).
struct SlopeInterceptModel {
    double intercept_db_1m = 0.0; // A
    double exponent = -2.0;       // n, negative for decay
    double sigma_db = 0.0;        // shadow fading standard deviation

    void validate() const;
};

enum class CornerVariant { Diffraction, Scattering, DualSlope };

// One-corner model along the unwrapped (Manhattan) route distance x.
//
// Before the corner (x <= d_c) all variants are P1 + 10 n log10(x). After it:
//   Diffraction: P1 - D + 5 n log10(d_c (x - d_c))
//   Scattering:  P1 - D + 10 n log10(d_c (x - d_c))
//   DualSlope:   P1 + 10 n1 log10(d_c) - D + 10 n2 log10(x / d_c)
struct CornerModel {
    double intercept_db_1m = kFriisAt1mDb;
    double exponent_before = -2.0;
    double exponent_after = 0.0; // DualSlope only
    double corner_loss_db = 0.0;
    double corner_distance_m = 244.0;
    CornerVariant variant = CornerVariant::Diffraction;

    void validate() const;
};

struct CornerEvaluation {
    double gain_db = 0.0;
    // Set when the point lies closer than after_corner_min past the corner and
    // the value at after_corner_min was returned instead.
    bool clamped = false;
};

enum class ReferenceModel { UmaLos, UmaNlos };

double wavelength_m(double frequency_hz);

double friis_path_gain(double distance_m, double frequency_hz = kCarrierHz);

double eval_slope_intercept(const SlopeInterceptModel& model, double distance_m);

CornerEvaluation eval_corner(const CornerModel& model, double unwrapped_distance_m,
                             double after_corner_min_m = kAfterCornerMinM);

SlopeInterceptModel reference_model(ReferenceModel tag);

double eval_reference(ReferenceModel tag, double distance_m);

// Excess loss of the median model relative to free space (positive = weaker).
double excess_loss_db(const SlopeInterceptModel& model, double distance_m,
                      double frequency_hz = kCarrierHz);

// Median plus one zero-mean Gaussian draw of standard deviation sigma_db.
template <class URBG>
double sample_shadowed(const SlopeInterceptModel& model, double distance_m, URBG& rng)
{
    const double median = eval_slope_intercept(model, distance_m);
    if (model.sigma_db == 0.0)
        return median;
    std::normal_distribution<double> shadow(0.0, model.sigma_db);
    return median + shadow(rng);
}

// Named parameter sets for every fitted relation (all 28 GHz).
using Preset = std::variant<SlopeInterceptModel, CornerModel>;

const std::map<std::string, Preset>& preset_catalog();

std::vector<std::string> preset_names();

// Throws ConfigError naming the key when it is unknown.
const Preset& find_preset(std::string_view key);

// Evaluates a preset at distance_m. Corner presets use their stored corner
// distance; the clamp flag is reported through `clamped` when non-null.
double eval_preset(const Preset& preset, double distance_m, bool* clamped = nullptr);

std::string_view to_string(CornerVariant v);
CornerVariant parse_corner_variant(std::string_view s);

} // namespace canyoncov::propagation

#endif
