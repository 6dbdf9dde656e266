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

#include "canyoncov/netsim.hpp"

#include "canyoncov/errors.hpp"
#include "canyoncov/seeding.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace canyoncov::netsim {

namespace {

constexpr double kEps = 1e-6;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_multiple(double value, double unit)
{
    const double q = value / unit;
    return std::abs(q - std::round(q)) < 1e-9 && q >= 1.0 - 1e-9;
}

double positive_mod(double a, double period)
{
    double r = std::fmod(a, period);
    if (r < 0.0)
        r += period;
    if (period - r < kEps)
        r = 0.0;
    return r;
}

// Distance travelled from `from` to `to` moving in direction `sign` (+1/-1)
// along an axis; negative (non-wrapped) means the point lies behind.
double along(double from, double to, double sign, double period, bool wrap)
{
    const double d = sign * (to - from);
    // On the torus the nearest forward image stands in for an infinite grid.
    return wrap ? positive_mod(d, period) : d;
}

// Shortest unsigned leg along a perpendicular street, and its direction.
std::pair<double, double> lateral(double from, double to, double period, bool wrap)
{
    const double d = to - from;
    if (!wrap)
        return {std::abs(d), d >= 0.0 ? 1.0 : -1.0};
    const double fwd = positive_mod(d, period);
    const double back = fwd == 0.0 ? 0.0 : period - fwd;
    return fwd <= back ? std::pair{fwd, 1.0} : std::pair{back, -1.0};
}

bool same_line(double a, double b, double period, bool wrap)
{
    if (!wrap)
        return std::abs(a - b) < kEps;
    const double r = positive_mod(a - b, period);
    return r < kEps || period - r < kEps;
}

bool on_lattice(double v, double spacing, double extent, bool wrap)
{
    const double q = v / spacing;
    if (std::abs(q - std::round(q)) > kEps / spacing)
        return false;
    return wrap || (v > -kEps && v < extent + kEps);
}

double beam_power(double offset_deg, double beamwidth_deg, double floor_linear)
{
    double d = std::fmod(offset_deg, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d < -180.0)
        d += 360.0;
    const double r = d / beamwidth_deg;
    return std::max(std::exp(-4.0 * std::numbers::ln2 * r * r), floor_linear);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

} // namespace

void GridSpec::validate() const
{
    if (!(block_long_m > 0.0) || !(block_short_m > 0.0))
        throw ConfigError("block dimensions must be positive");
    if (blocks_x < 4 || blocks_y < 4)
        throw ConfigError("grid needs at least 4 blocks in each direction");
    if (!is_multiple(site_spacing_long_m, block_long_m))
        throw ConfigError("grid.site_spacing_long_m must be an integer multiple of grid.block_long_m");
    if (!is_multiple(site_spacing_short_m, block_short_m))
        throw ConfigError("grid.site_spacing_short_m must be an integer multiple of grid.block_short_m");
    if (!(ue_step_m > 0.0))
        throw ConfigError("grid.ue_step_m must be positive");
    if (wrap) {
        if (!is_multiple(blocks_x * block_long_m, site_spacing_long_m) ||
            !is_multiple(blocks_y * block_short_m, site_spacing_short_m))
            throw ConfigError("with grid.wrap the grid extent must be a multiple of the site spacing");
    }
}

double Grid::site_density_per_km2() const
{
    return 1e6 / (spec.site_spacing_long_m * spec.site_spacing_short_m);
}

bool Grid::on_horizontal_street(double y_m) const
{
    return on_lattice(y_m, spec.block_short_m, extent_y_m, spec.wrap);
}

bool Grid::on_vertical_street(double x_m) const
{
    return on_lattice(x_m, spec.block_long_m, extent_x_m, spec.wrap);
}

Grid build_grid(const GridSpec& spec)
{
    spec.validate();
    Grid g;
    g.spec = spec;
    g.extent_x_m = spec.blocks_x * spec.block_long_m;
    g.extent_y_m = spec.blocks_y * spec.block_short_m;
    const int nx = spec.wrap ? spec.blocks_x : spec.blocks_x + 1;
    const int ny = spec.wrap ? spec.blocks_y : spec.blocks_y + 1;
    for (int i = 0; i < nx; ++i)
        g.street_x_m.push_back(i * spec.block_long_m);
    for (int j = 0; j < ny; ++j)
        g.street_y_m.push_back(j * spec.block_short_m);

    for (double x : g.street_x_m) {
        if (!on_lattice(x, spec.site_spacing_long_m, g.extent_x_m, spec.wrap))
            continue;
        for (double y : g.street_y_m) {
            if (!on_lattice(y, spec.site_spacing_short_m, g.extent_y_m, spec.wrap))
                continue;
            const int site = static_cast<int>(g.sites.size());
            g.sites.push_back({x, y});
            for (auto f : {Facing::East, Facing::West, Facing::North, Facing::South}) {
                Cell c;
                c.id = static_cast<int>(g.cells.size());
                c.site = site;
                c.x_m = x;
                c.y_m = y;
                c.facing = f;
                g.cells.push_back(c);
            }
        }
    }
    return g;
}

std::vector<UePoint> sample_ues(const Grid& grid, const UePoint& prototype)
{
    const auto& s = grid.spec;
    std::vector<UePoint> ues;
    const auto segment = [&](double len) { return std::max(1, static_cast<int>(std::lround(len / s.ue_step_m))); };

    const int nl = segment(s.block_long_m);
    for (double y : grid.street_y_m)
        for (int i = 0; i < s.blocks_x; ++i)
            for (int k = 0; k < nl; ++k) {
                UePoint u = prototype;
                u.x_m = i * s.block_long_m + (k + 0.5) * s.block_long_m / nl;
                u.y_m = y;
                ues.push_back(u);
            }
    const int ns = segment(s.block_short_m);
    for (double x : grid.street_x_m)
        for (int j = 0; j < s.blocks_y; ++j)
            for (int k = 0; k < ns; ++k) {
                UePoint u = prototype;
                u.x_m = x;
                u.y_m = j * s.block_short_m + (k + 0.5) * s.block_short_m / ns;
                ues.push_back(u);
            }
    return ues;
}

std::string_view to_string(RouteClass c)
{
    switch (c) {
    case RouteClass::SameStreet:
        return "SameStreet";
    case RouteClass::OneCorner:
        return "OneCorner";
    case RouteClass::Unreachable:
        return "Unreachable";
    }
    return "Unknown";
}

Route classify_route(const UePoint& ue, const Cell& cell, const Grid& grid)
{
    const bool wrap = grid.spec.wrap;
    const bool along_x = cell.facing == Facing::East || cell.facing == Facing::West;
    const double sign = (cell.facing == Facing::East || cell.facing == Facing::North) ? 1.0 : -1.0;

    // Work in the cell frame: `axial` runs down the faced street, `cross`
    // along the perpendicular streets.
    const double cell_axial = along_x ? cell.x_m : cell.y_m;
    const double cell_cross = along_x ? cell.y_m : cell.x_m;
    const double ue_axial = along_x ? ue.x_m : ue.y_m;
    const double ue_cross = along_x ? ue.y_m : ue.x_m;
    const double axial_period = along_x ? grid.extent_x_m : grid.extent_y_m;
    const double cross_period = along_x ? grid.extent_y_m : grid.extent_x_m;
    const bool ue_on_faced_axis = along_x ? grid.on_horizontal_street(ue.y_m) : grid.on_vertical_street(ue.x_m);
    const bool ue_on_cross_street = along_x ? grid.on_vertical_street(ue.x_m) : grid.on_horizontal_street(ue.y_m);

    Route r;
    if (ue_on_faced_axis && same_line(ue_cross, cell_cross, cross_period, wrap)) {
        const double t = along(cell_axial, ue_axial, sign, axial_period, wrap);
        if (t > kEps) {
            r.route_class = RouteClass::SameStreet;
            r.unwrapped_distance_m = t;
        }
        return r;
    }
    if (!ue_on_cross_street)
        return r;

    const double dc = along(cell_axial, ue_axial, sign, axial_period, wrap);
    if (!(dc > 1.0))
        return r;
    const auto [leg, dir] = lateral(cell_cross, ue_cross, cross_period, wrap);
    r.route_class = RouteClass::OneCorner;
    r.corner_distance_m = dc;
    r.unwrapped_distance_m = dc + leg;
    // Left of the facing direction is +cross for East and South, -cross for
    // West and North.
    const double left = (cell.facing == Facing::East || cell.facing == Facing::South) ? 1.0 : -1.0;
    r.azimuth_deg = std::atan2(left * dir * leg, dc) * 180.0 / std::numbers::pi;
    return r;
}

LinkEval link_budget(const Route& route, const PropagationSet& models, const Cell& cell, const UePoint& ue,
                     double degradation_db, double shadow_db)
{
    LinkEval e;
    e.route = route;
    switch (route.route_class) {
    case RouteClass::Unreachable:
        e.path_gain_db = kNegInf;
        e.rx_power_dbm = kNegInf;
        return e;
    case RouteClass::SameStreet:
        e.path_gain_db = propagation::eval_slope_intercept(models.same_street, std::max(route.unwrapped_distance_m, 1.0));
        break;
    case RouteClass::OneCorner: {
        auto corner = models.corner;
        corner.corner_distance_m = route.corner_distance_m;
        const auto v = propagation::eval_corner(corner, route.unwrapped_distance_m);
        e.path_gain_db = v.gain_db;
        e.clamped = v.clamped;
        break;
    }
    }
    e.rx_power_dbm =
        cell.tx_power_dbm + cell.antenna_gain_dbi - degradation_db + ue.ue_gain_dbi + e.path_gain_db + shadow_db;
    return e;
}

DegradationCdf::DegradationCdf(std::vector<std::pair<double, double>> knots) : knots_(std::move(knots))
{
    if (knots_.size() < 2)
        throw ConfigError("degradation CDF needs at least 2 knots");
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        const auto [v, p] = knots_[i];
        if (!std::isfinite(v) || !(p >= 0.0 && p <= 1.0))
            throw ConfigError("degradation CDF knots need finite values and probabilities in [0, 1]");
        if (i > 0 && (v < knots_[i - 1].first || p < knots_[i - 1].second))
            throw ConfigError("degradation CDF knots must be non-decreasing");
    }
    if (knots_.front().second != 0.0 || knots_.back().second != 1.0)
        throw ConfigError("degradation CDF must start at probability 0 and end at 1");
}

DegradationCdf DegradationCdf::roof_edge_default()
{
    return DegradationCdf({{0.0, 0.0}, {2.0, 0.9}, {4.0, 1.0}});
}

DegradationCdf DegradationCdf::none()
{
    return DegradationCdf({{0.0, 0.0}, {0.0, 1.0}});
}

double DegradationCdf::quantile(double u) const
{
    u = std::clamp(u, 0.0, 1.0);
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        const auto [v0, p0] = knots_[i - 1];
        const auto [v1, p1] = knots_[i];
        if (u <= p1) {
            if (p1 == p0)
                return v0;
            return v0 + (u - p0) / (p1 - p0) * (v1 - v0);
        }
    }
    return knots_.back().first;
}

std::string_view to_string(InterferenceModel m)
{
    return m == InterferenceModel::BeamAimed ? "beam_aimed" : "full_eirp";
}

InterferenceModel parse_interference_model(std::string_view s)
{
    if (s == "beam_aimed")
        return InterferenceModel::BeamAimed;
    if (s == "full_eirp")
        return InterferenceModel::FullEirp;
    throw ConfigError("unknown interference model '" + std::string(s) + "' (beam_aimed|full_eirp)");
}

GridScenario default_scenario(const GridSpec& spec)
{
    GridScenario s;
    s.grid = build_grid(spec);
    s.ues = sample_ues(s.grid);
    return s;
}

double noise_floor_dbm(double bandwidth_hz, double noise_figure_db)
{
    if (!(bandwidth_hz > 0.0))
        throw DomainError("bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double shannon_rate_bps(double sinr_db, double bandwidth_hz, double penalty_db)
{
    if (sinr_db == kNegInf)
        return 0.0;
    return bandwidth_hz * std::log2(1.0 + db_to_linear(sinr_db - penalty_db));
}

std::vector<UeResult> compute_map(const GridScenario& sc)
{
    const auto& cells = sc.grid.cells;
    const std::size_t n_ue = sc.ues.size();
    const std::size_t n_cell = cells.size();
    if (n_ue == 0 || n_cell == 0)
        throw DomainError("network map needs at least one cell and one UE");

    // Per-link received power and azimuth, row-major by UE.
    std::vector<double> rx(n_ue * n_cell, kNegInf);
    std::vector<double> az(n_ue * n_cell, 0.0);
    std::vector<unsigned char> clamp(n_ue * n_cell, 0);

    detail::parallel_for(n_ue, sc.threads, [&](std::size_t i) {
        for (std::size_t c = 0; c < n_cell; ++c) {
            const auto route = classify_route(sc.ues[i], cells[c], sc.grid);
            if (route.route_class == RouteClass::Unreachable)
                continue;
            SplitMix64 rng(derive_seed(sc.seed, {1, i, static_cast<std::uint64_t>(cells[c].id)}));
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            const double degradation = sc.degradation.quantile(unit(rng));
            double shadow = 0.0;
            if (sc.shadowing_enabled && sc.shadowing_sigma_db > 0.0)
                shadow = std::normal_distribution<double>(0.0, sc.shadowing_sigma_db)(rng);
            const auto link = link_budget(route, sc.models, cells[c], sc.ues[i], degradation, shadow);
            rx[i * n_cell + c] = link.rx_power_dbm;
            az[i * n_cell + c] = route.azimuth_deg;
            clamp[i * n_cell + c] = link.clamped ? 1 : 0;
        }
    });

    std::vector<int> serving(n_ue, -1);
    for (std::size_t i = 0; i < n_ue; ++i) {
        double best = kNegInf;
        for (std::size_t c = 0; c < n_cell; ++c)
            if (rx[i * n_cell + c] > best) {
                best = rx[i * n_cell + c];
                serving[i] = static_cast<int>(c);
            }
    }
    std::vector<std::vector<std::size_t>> served(n_cell);
    for (std::size_t i = 0; i < n_ue; ++i)
        if (serving[i] >= 0)
            served[static_cast<std::size_t>(serving[i])].push_back(i);

    const double floor_linear = db_to_linear(sc.sidelobe_floor_db);
    std::vector<UeResult> out(n_ue);
    detail::parallel_for(n_ue, sc.threads, [&](std::size_t i) {
        const auto& ue = sc.ues[i];
        UeResult& r = out[i];
        r.x_m = ue.x_m;
        r.y_m = ue.y_m;
        const double noise = noise_floor_dbm(sc.budget.bandwidth_hz, ue.noise_figure_db);
        if (serving[i] < 0) {
            r.rx_power_dbm = r.snr_db = r.sinr_db = r.interference_dbm = kNegInf;
            r.rate_bps = 0.0;
            return;
        }
        const auto s = static_cast<std::size_t>(serving[i]);
        double interference = 0.0;
        for (std::size_t c = 0; c < n_cell; ++c) {
            const double p = rx[i * n_cell + c];
            if (c == s || p == kNegInf)
                continue;
            double factor = 1.0;
            if (sc.interference == InterferenceModel::BeamAimed) {
                const auto& members = served[c];
                if (members.empty())
                    continue;
                SplitMix64 rng(derive_seed(sc.seed, {2, i, static_cast<std::uint64_t>(cells[c].id)}));
                std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
                const std::size_t target = members[pick(rng)];
                factor = beam_power(az[i * n_cell + c] - az[target * n_cell + c], sc.beamwidth_deg, floor_linear);
            }
            interference += db_to_linear(p) * factor;
        }
        r.serving_cell = cells[s].id;
        r.route_class = classify_route(ue, cells[s], sc.grid).route_class;
        r.clamped = clamp[i * n_cell + s] != 0;
        r.rx_power_dbm = rx[i * n_cell + s];
        r.snr_db = r.rx_power_dbm - noise;
        r.interference_dbm = interference > 0.0 ? 10.0 * std::log10(interference) : kNegInf;
        r.sinr_db = interference > 0.0 ? r.rx_power_dbm - 10.0 * std::log10(db_to_linear(noise) + interference)
                                       : r.snr_db;
        r.rate_bps = shannon_rate_bps(r.sinr_db, sc.budget.bandwidth_hz, sc.budget.implementation_penalty_db);
    });
    return out;
}

double percentile(std::vector<double> values, double p)
{
    if (values.empty())
        throw DomainError("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 100.0))
        throw DomainError("percentile must lie in [0, 100]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double w = h - static_cast<double>(lo);
    if (w == 0.0 || values[lo] == values[hi])
        return values[lo];
    if (!std::isfinite(values[lo]))
        return values[lo];
    return values[lo] + w * (values[hi] - values[lo]);
}

std::vector<PercentileRow> percentile_report(std::span<const UeResult> map, std::span<const double> percentiles)
{
    if (map.empty())
        throw DomainError("percentile report of an empty map");
    std::vector<double> snr, sinr, rate, gap;
    for (const auto& r : map) {
        snr.push_back(r.snr_db);
        sinr.push_back(r.sinr_db);
        rate.push_back(r.rate_bps);
        if (r.serving_cell >= 0)
            gap.push_back(r.snr_db - r.sinr_db);
    }
    std::vector<PercentileRow> rows;
    for (double p : percentiles) {
        PercentileRow row;
        row.percentile = p;
        row.snr_db = percentile(snr, p);
        row.sinr_db = percentile(sinr, p);
        row.rate_bps = percentile(rate, p);
        row.snr_minus_sinr_db = std::isfinite(row.snr_db) && std::isfinite(row.sinr_db)
                                    ? row.snr_db - row.sinr_db
                                    : std::numeric_limits<double>::quiet_NaN();
        row.location_gap_db = gap.empty() ? std::numeric_limits<double>::quiet_NaN() : percentile(gap, p);
        rows.push_back(row);
    }
    return rows;
}

} // namespace canyoncov::netsim
