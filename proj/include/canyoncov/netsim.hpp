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

#ifndef CANYONCOV_NETSIM_HPP
#define CANYONCOV_NETSIM_HPP

#include "canyoncov/propagation.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace canyoncov::netsim {

// Manhattan lattice. Blocks are block_long_m along x and block_short_m along
// y, so horizontal streets (constant y) are block_short_m apart and vertical
// streets (constant x) block_long_m apart. Sites sit on intersections whose
// coordinates are multiples of the site spacings.
struct GridSpec {
    double block_long_m = 200.0;
    double block_short_m = 50.0;
    int blocks_x = 8;
    int blocks_y = 16;
    double site_spacing_long_m = 400.0;
    double site_spacing_short_m = 200.0;
    double ue_step_m = 3.0;
    // Torus wrap-around: removes the edge of the simulated area.
    bool wrap = true;

    void validate() const;
};

enum class Facing { East, West, North, South };

struct Site {
    double x_m = 0.0;
    double y_m = 0.0;
};

struct Cell {
    int id = 0;
    int site = 0;
    double x_m = 0.0;
    double y_m = 0.0;
    Facing facing = Facing::East;
    double height_m = 20.0;
    double tx_power_dbm = 28.0;
    double antenna_gain_dbi = 23.0;
};

struct UePoint {
    double x_m = 0.0;
    double y_m = 0.0;
    double ue_gain_dbi = 6.0;
    double noise_figure_db = 9.0;
    double height_m = 1.5;
};

struct Grid {
    GridSpec spec;
    double extent_x_m = 0.0;
    double extent_y_m = 0.0;
    std::vector<double> street_x_m; // vertical street positions
    std::vector<double> street_y_m; // horizontal street positions
    std::vector<Site> sites;
    std::vector<Cell> cells;

    std::size_t intersection_count() const { return street_x_m.size() * street_y_m.size(); }
    // Lattice density 1 / (spacing_long * spacing_short), per km^2.
    double site_density_per_km2() const;
    bool on_horizontal_street(double y_m) const;
    bool on_vertical_street(double x_m) const;
};

Grid build_grid(const GridSpec& spec);

// Street-centerline points, every block edge sampled at its midpoints
// (k + 1/2) L / round(L / ue_step_m); intersections themselves are skipped.
std::vector<UePoint> sample_ues(const Grid& grid, const UePoint& prototype = {});

enum class RouteClass { SameStreet, OneCorner, Unreachable };

std::string_view to_string(RouteClass c);

struct Route {
    RouteClass route_class = RouteClass::Unreachable;
    double unwrapped_distance_m = 0.0;
    double corner_distance_m = 0.0; // OneCorner only
    // Azimuth of the UE seen from the cell relative to its facing direction,
    // counter-clockwise, from the unwrapped (Euclidean) route geometry.
    double azimuth_deg = 0.0;
};

Route classify_route(const UePoint& ue, const Cell& cell, const Grid& grid);

struct PropagationSet {
    propagation::SlopeInterceptModel same_street = std::get<propagation::SlopeInterceptModel>(
        propagation::find_preset("roof-edge"));
    propagation::CornerModel corner =
        std::get<propagation::CornerModel>(propagation::find_preset("corner-diffraction-friis"));
};

struct LinkBudget {
    double bandwidth_hz = 800e6;
    double implementation_penalty_db = 3.0;
};

struct LinkEval {
    Route route;
    double path_gain_db = 0.0;
    double rx_power_dbm = 0.0; // -inf when unreachable
    bool clamped = false;
};

LinkEval link_budget(const Route& route, const PropagationSet& models, const Cell& cell, const UePoint& ue,
                     double degradation_db, double shadow_db = 0.0);

// Piecewise-linear CDF of the directional gain degradation in dB.
class DegradationCdf {
public:
    // (degradation_db, probability) knots; probabilities run from 0 to 1.
    explicit DegradationCdf(std::vector<std::pair<double, double>> knots);

    // 0 dB at P = 0, 2 dB at P = 0.9, 4 dB at P = 1.
    static DegradationCdf roof_edge_default();
    static DegradationCdf none();

    double quantile(double u) const;
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

private:
    std::vector<std::pair<double, double>> knots_;
};

enum class InterferenceModel {
    // Each interfering cell points its beam at one of its own served UEs,
    // drawn at random per victim; idle cells radiate nothing.
    BeamAimed,
    // Every cell radiates full EIRP towards every victim it can reach.
    FullEirp,
};

std::string_view to_string(InterferenceModel m);
InterferenceModel parse_interference_model(std::string_view s);

struct GridScenario {
    Grid grid;
    std::vector<UePoint> ues;
    PropagationSet models;
    LinkBudget budget;
    DegradationCdf degradation = DegradationCdf::roof_edge_default();
    bool shadowing_enabled = false;
    double shadowing_sigma_db = 7.1;
    InterferenceModel interference = InterferenceModel::BeamAimed;
    double beamwidth_deg = 10.0;
    double sidelobe_floor_db = -25.0;
    std::uint64_t seed = 1;
    unsigned threads = 0;
};

GridScenario default_scenario(const GridSpec& spec = {});

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db);

// B log2(1 + SINR / penalty); zero for -inf SINR.
double shannon_rate_bps(double sinr_db, double bandwidth_hz, double penalty_db);

struct UeResult {
    double x_m = 0.0;
    double y_m = 0.0;
    int serving_cell = -1; // cell id, -1 for outage
    RouteClass route_class = RouteClass::Unreachable;
    double rx_power_dbm = 0.0;
    double snr_db = 0.0;  // -inf for outage
    double sinr_db = 0.0; // -inf for outage
    double interference_dbm = 0.0;
    double rate_bps = 0.0;
    bool clamped = false;
};

std::vector<UeResult> compute_map(const GridScenario& scenario);

struct PercentileRow {
    double percentile = 0.0;
    double snr_db = 0.0;
    double sinr_db = 0.0;
    double rate_bps = 0.0;
    // SNR percentile minus SINR percentile.
    double snr_minus_sinr_db = 0.0;
    // Percentile of the per-location SNR - SINR gap (non-outage UEs).
    double location_gap_db = 0.0;
};

// Linear interpolation between order statistics; p in [0, 100].
double percentile(std::vector<double> values, double p);

std::vector<PercentileRow> percentile_report(std::span<const UeResult> map, std::span<const double> percentiles);

} // namespace canyoncov::netsim

#endif
