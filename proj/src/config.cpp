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

#include "canyoncov/config.hpp"

#include "canyoncov/csv_io.hpp"
#include "canyoncov/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace canyoncov::config {

namespace {

constexpr double kInf = 1e300;

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_double(const std::string& s)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+')
        ++first;
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<long long> to_integer(const std::string& s)
{
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::optional<bool> to_bool(const std::string& s)
{
    std::string l = s;
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (l == "true" || l == "1" || l == "yes" || l == "on")
        return true;
    if (l == "false" || l == "0" || l == "no" || l == "off")
        return false;
    return std::nullopt;
}

const char* const kPresetFields[] = {"intercept_db_1m", "exponent",       "sigma_db",         "exponent_before",
                                     "exponent_after",  "corner_loss_db", "corner_distance_m"};

bool is_preset_override(const std::string& key)
{
    if (key.rfind("preset.", 0) != 0)
        return false;
    const auto dot = key.rfind('.');
    if (dot <= 7)
        return false;
    const std::string name = key.substr(7, dot - 7);
    const std::string field = key.substr(dot + 1);
    if (!propagation::preset_catalog().count(name))
        return false;
    return std::find(std::begin(kPresetFields), std::end(kPresetFields), field) != std::end(kPresetFields);
}

const KeySpec* find_spec(const std::string& key)
{
    for (const auto& s : key_specs())
        if (s.key == key)
            return &s;
    return nullptr;
}

} // namespace

const std::vector<KeySpec>& key_specs()
{
    using V = ValueType;
    static const std::vector<KeySpec> specs = {
        {"seed", V::Int, "", 0, 1.8e19, "master random seed"},
        {"threads", V::Int, "0", 0, 4096, "worker threads, 0 = hardware"},

        {"grid.block_long_m", V::Double, "200", 1, 1e5, ""},
        {"grid.block_short_m", V::Double, "50", 1, 1e5, ""},
        {"grid.blocks_x", V::Int, "8", 4, 10000, ""},
        {"grid.blocks_y", V::Int, "16", 4, 10000, ""},
        {"grid.site_spacing_long_m", V::Double, "400", 1, 1e6, ""},
        {"grid.site_spacing_short_m", V::Double, "200", 1, 1e6, ""},
        {"grid.ue_step_m", V::Double, "3", 0.01, 1e5, ""},
        {"grid.wrap", V::Bool, "true", 0, 0, "torus wrap-around"},

        {"budget.tx_power_dbm", V::Double, "28", -50, 80, ""},
        {"budget.bs_antenna_gain_dbi", V::Double, "23", -20, 60, ""},
        {"budget.bs_height_m", V::Double, "20", 0.1, 500, ""},
        {"budget.ue_gain_dbi", V::Double, "6", -20, 60, ""},
        {"budget.ue_height_m", V::Double, "1.5", 0.1, 100, ""},
        {"budget.noise_figure_db", V::Double, "9", 0, 40, ""},
        {"budget.bandwidth_hz", V::Double, "800e6", 1, 1e12, ""},
        {"budget.implementation_penalty_db", V::Double, "3", 0, 30, ""},

        {"model.same_street", V::String, "roof-edge", 0, 0, "slope-intercept preset"},
        {"model.corner", V::String, "corner-diffraction-friis", 0, 0, "corner preset"},

        {"interference.model", V::String, "beam_aimed", 0, 0, "beam_aimed | full_eirp"},
        {"interference.beamwidth_deg", V::Double, "10", 0.1, 360, ""},
        {"interference.sidelobe_db", V::Double, "-25", -200, 0, ""},

        {"degradation_cdf_file", V::String, "", 0, 0, "CSV degradation_db,prob"},
        {"degradation.enabled", V::Bool, "true", 0, 0, ""},
        {"shadowing.enabled", V::Bool, "false", 0, 0, ""},
        {"shadowing.sigma_db", V::Double, "7.1", 0, 50, ""},

        {"canyon.width_m", V::Double, "30", 0.1, 1e4, ""},
        {"canyon.eps_r", V::Double, "5", 1.000001, 1e4, ""},
        {"canyon.bs_height_m", V::Double, "18", 0.01, 1e4, ""},
        {"canyon.ue_height_m", V::Double, "1.5", 0.01, 1e4, ""},
        {"canyon.bs_lateral_m", V::Double, "7.5", 0, 1e4, "offset from the left wall"},
        {"canyon.ue_lateral_m", V::Double, "7.5", 0, 1e4, "offset from the left wall"},
        {"canyon.max_bounces", V::Int, "10", 0, 100, ""},
        {"canyon.ground", V::Bool, "true", 0, 0, ""},
        {"canyon.frequency_hz", V::Double, "28e9", 1e6, 1e13, ""},

        {"fit.ci_level", V::Double, "0.9", 1e-6, 0.999999, ""},
        {"fit.after_corner_min_m", V::Double, "10", 1, 1e4, ""},
        {"fit.max_reject_fraction", V::Double, "0.1", 0, 1, ""},

        {"angular.hpbw_deg", V::Double, "10", 0.1, 360, ""},
        {"angular.sidelobe_db", V::Double, "-25", -200, 0, ""},
        {"angular.bins", V::Int, "144", 36, 100000, ""},
        {"angular.alpha", V::Double, "0.1", 1e-9, 0.999999, "confidence band level"},
    };
    return specs;
}

ToolConfig ToolConfig::parse(std::string_view text, std::string_view source)
{
    ToolConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        try {
            cfg.set(key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

ToolConfig ToolConfig::load_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

ToolConfig ToolConfig::load(const std::string& path_or_default)
{
    if (path_or_default == "default")
        return {};
    return load_file(path_or_default);
}

void ToolConfig::set(const std::string& key, const std::string& value)
{
    if (is_preset_override(key)) {
        const auto v = to_double(value);
        if (!v)
            throw ConfigError("key " + key + ": not a number: " + value);
        values_[key] = value;
        return;
    }
    const KeySpec* spec = find_spec(key);
    if (!spec)
        throw ConfigError("unknown key: " + key);
    switch (spec->type) {
    case ValueType::Double: {
        const auto v = to_double(value);
        if (!v)
            throw ConfigError("key " + key + ": not a number: " + value);
        if (*v < spec->min || *v > spec->max)
            throw ConfigError("key " + key + ": value " + value + " out of range");
        break;
    }
    case ValueType::Int: {
        if (key == "seed") {
            std::uint64_t s = 0;
            auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
            if (ec != std::errc{} || p != value.data() + value.size())
                throw ConfigError("key seed: not an unsigned integer: " + value);
            break;
        }
        const auto v = to_integer(value);
        if (!v)
            throw ConfigError("key " + key + ": not an integer: " + value);
        if (static_cast<double>(*v) < spec->min || static_cast<double>(*v) > spec->max)
            throw ConfigError("key " + key + ": value " + value + " out of range");
        break;
    }
    case ValueType::Bool:
        if (!to_bool(value))
            throw ConfigError("key " + key + ": not a boolean: " + value);
        break;
    case ValueType::String:
        if (key == "interference.model") {
            try {
                netsim::parse_interference_model(value);
            } catch (const std::exception&) {
                throw ConfigError("key " + key + ": unknown model: " + value);
            }
        } else if (key == "model.same_street" || key == "model.corner") {
            const auto& cat = propagation::preset_catalog();
            const auto it = cat.find(value);
            if (it == cat.end())
                throw ConfigError("key " + key + ": unknown preset: " + value);
            const bool corner = std::holds_alternative<propagation::CornerModel>(it->second);
            if (corner != (key == "model.corner"))
                throw ConfigError("key " + key + ": preset " + value + " has the wrong model family");
        }
        break;
    }
    values_[key] = value;
}

bool ToolConfig::has(const std::string& key) const { return values_.count(key) != 0; }

std::string ToolConfig::raw(const std::string& key) const
{
    if (const auto it = values_.find(key); it != values_.end())
        return it->second;
    const KeySpec* spec = find_spec(key);
    if (!spec)
        throw ConfigError("unknown key: " + key);
    return spec->default_value;
}

double ToolConfig::get_double(const std::string& key) const
{
    const auto v = to_double(raw(key));
    if (!v)
        throw ConfigError("key " + key + " has no numeric value");
    return *v;
}

int ToolConfig::get_int(const std::string& key) const
{
    const auto v = to_integer(raw(key));
    if (!v)
        throw ConfigError("key " + key + " has no integer value");
    return static_cast<int>(*v);
}

bool ToolConfig::get_bool(const std::string& key) const
{
    const auto v = to_bool(raw(key));
    if (!v)
        throw ConfigError("key " + key + " has no boolean value");
    return *v;
}

std::string ToolConfig::get_string(const std::string& key) const { return raw(key); }

std::optional<std::uint64_t> ToolConfig::seed() const
{
    const auto it = values_.find("seed");
    if (it == values_.end())
        return std::nullopt;
    std::uint64_t s = 0;
    std::from_chars(it->second.data(), it->second.data() + it->second.size(), s);
    return s;
}

propagation::Preset resolve_preset(const ToolConfig& cfg, const std::string& name)
{
    propagation::Preset p = propagation::find_preset(name);
    const std::string prefix = "preset." + name + ".";
    for (const auto& [key, value] : cfg.values()) {
        if (key.rfind(prefix, 0) != 0)
            continue;
        const std::string field = key.substr(prefix.size());
        const double v = *to_double(value);
        bool applied = false;
        if (auto* si = std::get_if<propagation::SlopeInterceptModel>(&p)) {
            if (field == "intercept_db_1m")
                si->intercept_db_1m = v, applied = true;
            else if (field == "exponent")
                si->exponent = v, applied = true;
            else if (field == "sigma_db")
                si->sigma_db = v, applied = true;
        } else if (auto* cm = std::get_if<propagation::CornerModel>(&p)) {
            if (field == "intercept_db_1m")
                cm->intercept_db_1m = v, applied = true;
            else if (field == "exponent_before" || field == "exponent")
                cm->exponent_before = v, applied = true;
            else if (field == "exponent_after")
                cm->exponent_after = v, applied = true;
            else if (field == "corner_loss_db")
                cm->corner_loss_db = v, applied = true;
            else if (field == "corner_distance_m")
                cm->corner_distance_m = v, applied = true;
        }
        if (!applied)
            throw ConfigError("key " + key + ": field does not apply to this preset");
    }
    std::visit([](const auto& m) { m.validate(); }, p);
    return p;
}

raytracer::CanyonGeometry canyon_geometry(const ToolConfig& cfg)
{
    raytracer::CanyonGeometry g;
    g.street_width_m = cfg.get_double("canyon.width_m");
    g.wall_rel_permittivity = cfg.get_double("canyon.eps_r");
    g.bs_height_m = cfg.get_double("canyon.bs_height_m");
    g.ue_height_m = cfg.get_double("canyon.ue_height_m");
    g.bs_lateral_offset_m = cfg.get_double("canyon.bs_lateral_m");
    g.ue_lateral_offset_m = cfg.get_double("canyon.ue_lateral_m");
    g.max_wall_reflections = cfg.get_int("canyon.max_bounces");
    g.include_ground = cfg.get_bool("canyon.ground");
    g.frequency_hz = cfg.get_double("canyon.frequency_hz");
    try {
        g.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("canyon geometry: ") + e.what());
    }
    return g;
}

netsim::GridSpec grid_spec(const ToolConfig& cfg)
{
    netsim::GridSpec s;
    s.block_long_m = cfg.get_double("grid.block_long_m");
    s.block_short_m = cfg.get_double("grid.block_short_m");
    s.blocks_x = cfg.get_int("grid.blocks_x");
    s.blocks_y = cfg.get_int("grid.blocks_y");
    s.site_spacing_long_m = cfg.get_double("grid.site_spacing_long_m");
    s.site_spacing_short_m = cfg.get_double("grid.site_spacing_short_m");
    s.ue_step_m = cfg.get_double("grid.ue_step_m");
    s.wrap = cfg.get_bool("grid.wrap");
    s.validate();
    return s;
}

netsim::GridScenario grid_scenario(const ToolConfig& cfg, std::uint64_t seed)
{
    netsim::GridScenario sc;
    sc.grid = netsim::build_grid(grid_spec(cfg));
    for (auto& c : sc.grid.cells) {
        c.tx_power_dbm = cfg.get_double("budget.tx_power_dbm");
        c.antenna_gain_dbi = cfg.get_double("budget.bs_antenna_gain_dbi");
        c.height_m = cfg.get_double("budget.bs_height_m");
    }
    netsim::UePoint proto;
    proto.ue_gain_dbi = cfg.get_double("budget.ue_gain_dbi");
    proto.noise_figure_db = cfg.get_double("budget.noise_figure_db");
    proto.height_m = cfg.get_double("budget.ue_height_m");
    sc.ues = netsim::sample_ues(sc.grid, proto);

    sc.models.same_street =
        std::get<propagation::SlopeInterceptModel>(resolve_preset(cfg, cfg.get_string("model.same_street")));
    sc.models.corner = std::get<propagation::CornerModel>(resolve_preset(cfg, cfg.get_string("model.corner")));
    sc.budget.bandwidth_hz = cfg.get_double("budget.bandwidth_hz");
    sc.budget.implementation_penalty_db = cfg.get_double("budget.implementation_penalty_db");

    if (!cfg.get_bool("degradation.enabled"))
        sc.degradation = netsim::DegradationCdf::none();
    else if (const auto file = cfg.get_string("degradation_cdf_file"); !file.empty())
        sc.degradation = io::load_degradation_cdf(file);

    sc.shadowing_enabled = cfg.get_bool("shadowing.enabled");
    sc.shadowing_sigma_db = cfg.get_double("shadowing.sigma_db");
    sc.interference = netsim::parse_interference_model(cfg.get_string("interference.model"));
    sc.beamwidth_deg = cfg.get_double("interference.beamwidth_deg");
    sc.sidelobe_floor_db = cfg.get_double("interference.sidelobe_db");
    sc.seed = seed;
    sc.threads = static_cast<unsigned>(cfg.get_int("threads"));
    return sc;
}

} // namespace canyoncov::config
