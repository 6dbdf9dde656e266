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

#ifndef CANYONCOV_RAYTRACER_HPP
#define CANYONCOV_RAYTRACER_HPP

#include "canyoncov/propagation.hpp"

#include <optional>
#include <vector>

namespace canyoncov::raytracer {

// Straight street canyon: walls at y = 0 and y = street_width_m, ground at
// z = 0, the street running along x. Lateral offsets are measured from the
// y = 0 wall.
struct CanyonGeometry {
    double street_width_m = 30.0;
    double wall_rel_permittivity = 5.0;
    double bs_height_m = 18.0;
    double ue_height_m = 1.5;
    double bs_lateral_offset_m = 7.5;
    double ue_lateral_offset_m = 7.5;
    int max_wall_reflections = 10;
    bool include_ground = true;
    double frequency_hz = propagation::kCarrierHz;
    // Replaces every Fresnel coefficient with this |Gamma|^2 when set.
    std::optional<double> fixed_reflection_power;

    void validate() const;
};

struct RayContribution {
    int wall_bounce_count = 0;
    bool ground_bounce = false;
    double path_length_m = 0.0;
    double power_gain_linear = 0.0;
};

enum class Surface {
    Wall,  // vertical plane: a vertically polarized field is TE
    Ground // horizontal plane: a vertically polarized field is TM
};

// |Gamma|^2 for the field polarized perpendicular to the plane of incidence.
double fresnel_reflection_te(double incidence_from_normal_rad, double eps_r);

// |Gamma|^2 for the field polarized in the plane of incidence. Not monotone:
// it vanishes at the Brewster angle.
double fresnel_reflection_tm(double incidence_from_normal_rad, double eps_r);

// Power reflection coefficient seen by a vertically polarized wave.
double fresnel_reflection_vpol(double incidence_from_normal_rad, double eps_r,
                               Surface surface = Surface::Wall);

std::vector<RayContribution> enumerate_rays(const CanyonGeometry& geometry, double range_m);

// 10 log10 of the incoherent sum of all ray powers.
double incoherent_path_gain(const CanyonGeometry& geometry, double range_m);

} // namespace canyoncov::raytracer

#endif
