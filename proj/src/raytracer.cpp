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

#include "canyoncov/raytracer.hpp"

#include "canyoncov/errors.hpp"

#include <cmath>
#include <numbers>

namespace canyoncov::raytracer {

namespace {

void require_angle(double theta, double eps_r)
{
    if (!(theta >= 0.0) || !(theta < std::numbers::pi / 2.0))
        throw DomainError("incidence angle must lie in [0, pi/2)");
    if (!(eps_r > 1.0))
        throw DomainError("relative permittivity must be > 1");
}

struct WallImage {
    double lateral_m;
    int bounces;
};

// Images of the source across the two walls. Order k >= 1 has two images,
// one per wall the path touches first.
std::vector<WallImage> wall_images(double y_src, double width, int max_bounces)
{
    std::vector<WallImage> images{{y_src, 0}};
    for (int m = -max_bounces; m <= max_bounces + 1; ++m) {
        const int even = 2 * std::abs(m);
        if (m != 0 && even <= max_bounces)
            images.push_back({2.0 * m * width + y_src, even});
        const int odd = std::abs(2 * m - 1);
        if (odd <= max_bounces)
            images.push_back({2.0 * m * width - y_src, odd});
    }
    return images;
}

} // namespace

void CanyonGeometry::validate() const
{
    if (!(street_width_m > 0.0))
        throw DomainError("street width must be positive");
    if (!(wall_rel_permittivity > 1.0))
        throw DomainError("wall relative permittivity must be > 1");
    if (!(bs_height_m > 0.0) || !(ue_height_m > 0.0))
        throw DomainError("terminal heights must be positive");
    if (bs_lateral_offset_m < 0.0 || bs_lateral_offset_m > street_width_m || ue_lateral_offset_m < 0.0 ||
        ue_lateral_offset_m > street_width_m)
        throw DomainError("lateral offsets must lie within the street");
    if (max_wall_reflections < 0 || max_wall_reflections > 100)
        throw DomainError("max_wall_reflections must be in [0, 100]");
    if (fixed_reflection_power && !(*fixed_reflection_power >= 0.0 && *fixed_reflection_power <= 1.0))
        throw DomainError("fixed reflection power must be in [0, 1]");
    propagation::wavelength_m(frequency_hz);
}

double fresnel_reflection_te(double theta, double eps_r)
{
    require_angle(theta, eps_r);
    const double c = std::cos(theta);
    const double s = std::sqrt(eps_r - std::sin(theta) * std::sin(theta));
    const double g = (c - s) / (c + s);
    return g * g;
}

double fresnel_reflection_tm(double theta, double eps_r)
{
    require_angle(theta, eps_r);
    const double c = std::cos(theta);
    const double s = std::sqrt(eps_r - std::sin(theta) * std::sin(theta));
    const double g = (eps_r * c - s) / (eps_r * c + s);
    return g * g;
}

double fresnel_reflection_vpol(double theta, double eps_r, Surface surface)
{
    return surface == Surface::Wall ? fresnel_reflection_te(theta, eps_r) : fresnel_reflection_tm(theta, eps_r);
}

std::vector<RayContribution> enumerate_rays(const CanyonGeometry& g, double range_m)
{
    g.validate();
    if (!(range_m >= 1.0))
        throw DomainError("range must be >= 1 m");

    const double lambda = propagation::wavelength_m(g.frequency_hz);
    const double eps = g.wall_rel_permittivity;
    const auto coeff = [&](double cos_from_normal, Surface surface) {
        if (g.fixed_reflection_power)
            return *g.fixed_reflection_power;
        // Exactly grazing rays only occur at infinite range; treat as total reflection.
        if (cos_from_normal <= 0.0)
            return 1.0;
        return fresnel_reflection_vpol(std::acos(std::min(cos_from_normal, 1.0)), eps, surface);
    };

    std::vector<RayContribution> rays;
    const auto images = wall_images(g.bs_lateral_offset_m, g.street_width_m, g.max_wall_reflections);
    for (const auto& img : images) {
        for (int ground = 0; ground <= (g.include_ground ? 1 : 0); ++ground) {
            const double dy = img.lateral_m - g.ue_lateral_offset_m;
            const double dz = ground ? g.bs_height_m + g.ue_height_m : g.bs_height_m - g.ue_height_m;
            const double length = std::sqrt(range_m * range_m + dy * dy + dz * dz);

            const double free = lambda / (4.0 * std::numbers::pi * length);
            double power = free * free;
            if (img.bounces > 0)
                power *= std::pow(coeff(std::abs(dy) / length, Surface::Wall), img.bounces);
            if (ground)
                power *= coeff(dz / length, Surface::Ground);
            rays.push_back({img.bounces, ground == 1, length, power});
        }
    }
    return rays;
}

double incoherent_path_gain(const CanyonGeometry& geometry, double range_m)
{
    double total = 0.0;
    for (const auto& r : enumerate_rays(geometry, range_m))
        total += r.power_gain_linear;
    return 10.0 * std::log10(total);
}

} // namespace canyoncov::raytracer
