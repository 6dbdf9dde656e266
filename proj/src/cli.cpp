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

#include "canyoncov/cli.hpp"

#include "canyoncov/angular.hpp"
#include "canyoncov/config.hpp"
#include "canyoncov/csv_io.hpp"
#include "canyoncov/errors.hpp"
#include "canyoncov/fitting.hpp"
#include "canyoncov/netsim.hpp"
#include "canyoncov/propagation.hpp"
#include "canyoncov/raytracer.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <string>

namespace canyoncov::cli {

namespace {

namespace fs = std::filesystem;

struct OutputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string escape(std::string_view s)
{
    std::string r;
    for (char c : s) {
        if (c == '"' || c == '\\')
            r += '\\';
        r += (c == '\n' || c == '\r') ? ' ' : c;
    }
    return r;
}

int report(std::ostream& err, ExitCode code, std::string_view name, std::string_view message)
{
    err << "error: code=" << name << " exit=" << static_cast<int>(code) << " message=\"" << escape(message) << "\"\n";
    return code;
}

// Writes `name` inside `dir` (created on demand); nothing else is touched.
void write_output(const std::string& dir, const std::string& name, const std::function<void(std::ostream&)>& body)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw OutputError("cannot create output directory " + dir + ": " + ec.message());
    const fs::path path = fs::path(dir) / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw OutputError("cannot write " + path.string());
    body(f);
    f.flush();
    if (!f)
        throw OutputError("write failed for " + path.string());
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const config::ToolConfig& cfg, std::ostream& err)
{
    if (flag)
        return *flag;
    if (const auto s = cfg.seed())
        return *s;
    if (const char* env = std::getenv("CANYONCOV_SEED"); env && *env) {
        std::uint64_t s = 0;
        const std::string v = env;
        auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
        if (ec != std::errc{} || p != v.data() + v.size())
            throw ConfigError("CANYONCOV_SEED is not an unsigned integer: " + v);
        return s;
    }
    std::random_device rd;
    const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    err << "info: seed=" << s << " (random; pass --seed " << s << " to replay)\n";
    return s;
}

struct Options {
    std::string config = "default";
    std::optional<std::uint64_t> seed;
    std::string out;

    std::string preset;
    double distance = 0.0;

    std::string input;
    std::string fixed_intercept;
    std::string scenario;
    std::string variant;
    bool float_intercept = false;
    std::optional<double> corner_distance;

    std::string meta;
    int full_scattering = 0;

    double dmin = 0.0;
    double dmax = 0.0;
    double step = 0.0;
};

io::LoadedLinks load_with_log(const Options& o, const config::ToolConfig& cfg, std::ostream& err)
{
    auto loaded = io::load_links(o.input, cfg.get_double("fit.max_reject_fraction"));
    const auto& m = loaded.manifest;
    err << "info: rows=" << m.total_rows << " accepted=" << m.accepted_rows << " rejected=" << m.rejected_rows << '\n';
    for (const auto& r : m.rejected)
        err << "warning: " << o.input << ":" << r.line << ": rejected: " << r.reason << '\n';
    return loaded;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config::ToolConfig::load(o.config);
    const auto preset = config::resolve_preset(cfg, o.preset);
    bool clamped = false;
    const double g = propagation::eval_preset(preset, o.distance, &clamped);
    out << io::format_number(g) << '\n';
    if (clamped)
        err << "warning: after-corner distance clamped to " << propagation::kAfterCornerMinM << " m\n";
    return kOk;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config::ToolConfig::load(o.config);
    auto loaded = load_with_log(o, cfg, err);
    std::vector<fitting::LinkRecord> records;
    if (!o.scenario.empty()) {
        const auto sc = fitting::parse_scenario(o.scenario);
        if (!sc)
            throw ConfigError("unknown scenario: " + o.scenario);
        for (auto& r : loaded.records)
            if (r.scenario == *sc)
                records.push_back(r);
    } else {
        records = loaded.records;
        std::set<fitting::Scenario> seen;
        for (const auto& r : records)
            seen.insert(r.scenario);
        if (seen.size() > 1)
            throw InputError("input mixes " + std::to_string(seen.size()) + " scenarios; select one with --scenario");
    }
    const double ci = cfg.get_double("fit.ci_level");
    fitting::FitResult fit;
    if (o.fixed_intercept.empty()) {
        fit = fitting::fit_slope_intercept(records, ci);
    } else {
        double a = propagation::kFriisAt1mDb;
        if (o.fixed_intercept != "friis") {
            const std::string& s = o.fixed_intercept;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), a);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw ConfigError("--fixed-intercept expects 'friis' or a number in dB, got " + s);
        }
        fit = fitting::fit_fixed_intercept(records, a, ci);
    }
    std::optional<double> lognormal;
    if (fit.residuals_db.size() >= fitting::kMinLognormalSamples)
        lognormal = fitting::lognormality_deviation(fit.residuals_db);

    const auto emit = [&](std::ostream& s) {
        io::write_fit_report(s, fit);
        s << "sigma_db," << io::format_number(fit.slope_intercept().sigma_db) << ",,\n";
        s << "n_records," << records.size() << ",,\n";
        if (lognormal)
            s << "lognormal_dev_db," << io::format_number(*lognormal) << ",,\n";
    };
    emit(out);
    if (!o.out.empty()) {
        write_output(o.out, "fit_params.csv", emit);
        write_output(o.out, "fit_residuals.csv", [&](std::ostream& s) { io::write_residuals(s, records, fit); });
    }
    return kOk;
}

int cmd_corner_fit(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config::ToolConfig::load(o.config);
    auto loaded = load_with_log(o, cfg, err);
    const auto variant = propagation::parse_corner_variant(o.variant);
    const auto mode = o.float_intercept ? fitting::InterceptMode::Floating : fitting::InterceptMode::PinnedFriis;
    const auto fit = fitting::fit_corner_model(loaded.records, variant, mode, o.corner_distance,
                                               cfg.get_double("fit.ci_level"), propagation::kFriisAt1mDb,
                                               cfg.get_double("fit.after_corner_min_m"));
    io::write_fit_report(out, fit);
    if (!o.out.empty()) {
        write_output(o.out, "corner_fit_params.csv", [&](std::ostream& s) { io::write_fit_report(s, fit); });
        write_output(o.out, "corner_fit_residuals.csv",
                     [&](std::ostream& s) { io::write_residuals(s, loaded.records, fit); });
    }
    return kOk;
}

int cmd_angular(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config::ToolConfig::load(o.config);
    angular::ScanMeta meta;
    if (!o.meta.empty())
        meta = io::load_scan_meta(o.meta);
    else if (fs::exists(o.input + ".meta"))
        meta = io::load_scan_meta(o.input + ".meta");
    const auto scans = io::load_scans(o.input, meta);
    const double alpha = cfg.get_double("angular.alpha");

    std::vector<double> gains;
    const auto emit_gains = [&](std::ostream& s) {
        s << "scan,gain_db,omni_path_gain_db\n";
        for (std::size_t i = 0; i < scans.size(); ++i)
            s << i << ',' << io::format_number(gains[i]) << ',' << io::format_number(angular::omni_path_gain(scans[i]))
              << '\n';
    };
    for (const auto& sc : scans)
        gains.push_back(angular::azimuth_gain(sc.power_mw));
    emit_gains(out);

    std::optional<angular::EmpiricalCdf> cdf;
    if (gains.size() >= 2)
        cdf = angular::empirical_cdf(gains, alpha);
    std::optional<angular::EmpiricalCdf> full;
    if (o.full_scattering > 0) {
        const auto seed = resolve_seed(o.seed, cfg, err);
        const auto antenna = angular::ComplexPattern::gaussian_beam(
            cfg.get_int("angular.bins"), cfg.get_double("angular.hpbw_deg"), cfg.get_double("angular.sidelobe_db"));
        const auto sim = angular::simulate_full_scattering(antenna, o.full_scattering, seed,
                                                           static_cast<unsigned>(cfg.get_int("threads")));
        full = angular::empirical_cdf(sim, alpha);
        const double nominal = angular::azimuth_gain(antenna.power());
        err << "info: nominal_gain_db=" << io::format_number(nominal)
            << " full_scattering_median_db=" << io::format_number(full->values[full->values.size() / 2]) << '\n';
    }
    if (!o.out.empty()) {
        write_output(o.out, "angular_gains.csv", emit_gains);
        if (cdf)
            write_output(o.out, "angular_cdf.csv", [&](std::ostream& s) { io::write_cdf(s, *cdf); });
        if (full)
            write_output(o.out, "full_scattering_cdf.csv", [&](std::ostream& s) { io::write_cdf(s, *full); });
    }
    return kOk;
}

int cmd_raytrace(const Options& o, std::ostream& out, std::ostream&)
{
    const auto cfg = config::ToolConfig::load(o.config);
    const auto geometry = config::canyon_geometry(cfg);
    if (!(o.dmin >= 1.0) || !(o.dmax >= o.dmin) || !(o.step > 0.0))
        throw DomainError("need 1 <= dmin <= dmax and step > 0");
    const auto n = static_cast<std::size_t>((o.dmax - o.dmin) / o.step + 1e-9) + 1;
    if (n > 10'000'000)
        throw DomainError("range grid too large");
    const auto emit = [&](std::ostream& s) {
        s << "range_m,path_gain_db,n_rays\n";
        for (std::size_t i = 0; i < n; ++i) {
            const double d = o.dmin + static_cast<double>(i) * o.step;
            const auto rays = raytracer::enumerate_rays(geometry, d);
            double sum = 0.0;
            for (const auto& r : rays)
                sum += r.power_gain_linear;
            s << io::format_number(d) << ',' << io::format_number(10.0 * std::log10(sum)) << ',' << rays.size()
              << '\n';
        }
    };
    emit(out);
    if (!o.out.empty())
        write_output(o.out, "raytrace.csv", emit);
    return kOk;
}

int cmd_netsim(const Options& o, std::ostream& out, std::ostream& err)
{
    const auto cfg = config::ToolConfig::load(o.config);
    const auto seed = resolve_seed(o.seed, cfg, err);
    const auto scenario = config::grid_scenario(cfg, seed);
    const auto map = netsim::compute_map(scenario);
    const double pcts[] = {5, 10, 25, 50, 75, 90, 95};
    const auto rows = netsim::percentile_report(map, pcts);

    write_output(o.out, "netsim_map.csv", [&](std::ostream& s) { io::write_map(s, map); });
    write_output(o.out, "netsim_percentiles.csv", [&](std::ostream& s) { io::write_percentiles(s, rows); });
    write_output(o.out, "netsim_cells.csv", [&](std::ostream& s) { io::write_cells(s, scenario.grid.cells); });

    std::size_t outage = 0;
    for (const auto& u : map)
        outage += u.serving_cell < 0;
    out << "seed=" << seed << " ues=" << map.size() << " cells=" << scenario.grid.cells.size()
        << " outage=" << outage << " interference=" << netsim::to_string(scenario.interference) << '\n';
    for (const auto& r : rows)
        if (r.percentile == 10 || r.percentile == 50)
            out << "p" << io::format_number(r.percentile) << " rate_bps=" << io::format_number(r.rate_bps)
                << " snr_db=" << io::format_number(r.snr_db) << " sinr_db=" << io::format_number(r.sinr_db) << '\n';
    return kOk;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Street-canyon mmWave path-loss modelling and coverage simulation", "canyoncov"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    const auto add_common = [&](CLI::App* sub, bool with_seed) {
        sub->add_option("--config", o.config, "Config file, or 'default'");
        if (with_seed)
            sub->add_option("--seed", o.seed, "Master random seed");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a model preset at one distance");
    eval->add_option("--preset", o.preset, "Preset key")->required();
    eval->add_option("--distance", o.distance, "Unwrapped distance in m")->required();
    add_common(eval, false);

    auto* fit = app.add_subcommand("fit", "Slope-intercept or fixed-intercept fit of link data");
    fit->add_option("--input", o.input, "Link CSV")->required();
    fit->add_option("--fixed-intercept", o.fixed_intercept, "'friis' or a 1-m intercept in dB");
    fit->add_option("--scenario", o.scenario, "Restrict to one scenario");
    fit->add_option("--out", o.out, "Output directory");
    add_common(fit, false);

    auto* corner = app.add_subcommand("corner-fit", "Joint fit of a corner model");
    corner->add_option("--input", o.input, "Link CSV")->required();
    corner->add_option("--variant", o.variant, "diffraction | scattering | dualslope")->required();
    corner->add_flag("--float-intercept", o.float_intercept, "Fit the 1-m intercept too");
    corner->add_option("--corner-distance", o.corner_distance, "Override per-record corner distances");
    corner->add_option("--out", o.out, "Output directory");
    add_common(corner, false);

    auto* ang = app.add_subcommand("angular", "Azimuth gains of angular scans");
    ang->add_option("--input", o.input, "Scan CSV")->required();
    ang->add_option("--meta", o.meta, "Metadata sidecar (default: <input>.meta when present)");
    ang->add_option("--full-scattering", o.full_scattering, "Monte-Carlo trials of the full-scattering bound")
        ->check(CLI::Range(0, 100'000'000));
    ang->add_option("--out", o.out, "Output directory");
    add_common(ang, true);

    auto* ray = app.add_subcommand("raytrace", "Two-wall canyon ray tracer over a range sweep");
    ray->add_option("--config", o.config, "Config file, or 'default'")->required();
    ray->add_option("--dmin", o.dmin, "First range in m")->required();
    ray->add_option("--dmax", o.dmax, "Last range in m")->required();
    ray->add_option("--step", o.step, "Range step in m")->required();
    ray->add_option("--out", o.out, "Output directory");

    auto* net = app.add_subcommand("netsim", "Manhattan-grid coverage and rate simulation");
    net->add_option("--config", o.config, "Config file, or 'default'")->required();
    net->add_option("--out", o.out, "Output directory")->required();
    net->add_option("--seed", o.seed, "Master random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return report(err, kUsage, "usage", e.what());
    }

    try {
        if (eval->parsed())
            return cmd_eval(o, out, err);
        if (fit->parsed())
            return cmd_fit(o, out, err);
        if (corner->parsed())
            return cmd_corner_fit(o, out, err);
        if (ang->parsed())
            return cmd_angular(o, out, err);
        if (ray->parsed())
            return cmd_raytrace(o, out, err);
        if (net->parsed())
            return cmd_netsim(o, out, err);
        return report(err, kUsage, "usage", "no subcommand");
    } catch (const ConfigError& e) {
        return report(err, kConfig, "config", e.what());
    } catch (const InputError& e) {
        return report(err, kInput, "input", e.what());
    } catch (const DomainError& e) {
        return report(err, kDomain, "domain", e.what());
    } catch (const FitError& e) {
        return report(err, kFit, "fit", e.what());
    } catch (const OutputError& e) {
        return report(err, kOutput, "output", e.what());
    } catch (const std::exception& e) {
        return report(err, kInternal, "internal", e.what());
    }
}

} // namespace canyoncov::cli
