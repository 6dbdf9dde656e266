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

#include "canyoncov/csv_io.hpp"

#include "canyoncov/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace canyoncov::io {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_double(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    double v = 0.0;
    const char* first = s.data();
    if (*first == '+')
        ++first;
    auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return v;
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    return in;
}

std::string where(std::string_view source, std::size_t line)
{
    return std::string(source) + ":" + std::to_string(line);
}

} // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string format_exact(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

std::vector<std::string> split_csv_line(std::string_view line)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto c = line.find(',', pos);
        out.push_back(trim(line.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos)));
        if (c == std::string_view::npos)
            break;
        pos = c + 1;
    }
    return out;
}

LoadedLinks parse_links(std::istream& in, std::string_view source, double max_reject_fraction)
{
    LoadedLinks out;
    out.manifest.input_paths.emplace_back(source);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        if (!header_seen) {
            if (t != kLinkHeader)
                throw InputError(where(source, line_no) + ": expected header '" + std::string(kLinkHeader) + "'");
            header_seen = true;
            continue;
        }
        ++out.manifest.total_rows;
        const auto reject = [&](std::string reason) {
            out.manifest.rejected.push_back({line_no, std::move(reason)});
        };
        const auto f = split_csv_line(t);
        if (f.size() != 5) {
            reject("expected 5 fields, got " + std::to_string(f.size()));
            continue;
        }
        fitting::LinkRecord r;
        r.street_id = f[0];
        const auto sc = fitting::parse_scenario(f[1]);
        if (!sc) {
            reject("unknown scenario '" + f[1] + "'");
            continue;
        }
        r.scenario = *sc;
        const auto d = parse_double(f[2]);
        const auto g = parse_double(f[3]);
        if (!d || !g) {
            reject("non-numeric distance or path gain");
            continue;
        }
        r.unwrapped_distance_m = *d;
        r.path_gain_db = *g;
        if (!f[4].empty()) {
            const auto dc = parse_double(f[4]);
            if (!dc) {
                reject("non-numeric corner distance");
                continue;
            }
            r.corner_distance_m = *dc;
        }
        if (auto why = r.invalid_reason(); !why.empty()) {
            reject(std::move(why));
            continue;
        }
        ++out.manifest.per_scenario[std::string(fitting::to_string(r.scenario))];
        out.records.push_back(std::move(r));
    }
    if (!header_seen)
        throw InputError(std::string(source) + ": missing header '" + std::string(kLinkHeader) + "'");
    out.manifest.accepted_rows = out.records.size();
    out.manifest.rejected_rows = out.manifest.rejected.size();
    if (out.manifest.total_rows > 0 &&
        static_cast<double>(out.manifest.rejected_rows) > max_reject_fraction * out.manifest.total_rows) {
        const auto& first = out.manifest.rejected.front();
        throw InputError(std::string(source) + ": " + std::to_string(out.manifest.rejected_rows) + " of " +
                         std::to_string(out.manifest.total_rows) + " rows rejected; first at line " +
                         std::to_string(first.line) + ": " + first.reason);
    }
    return out;
}

LoadedLinks load_links(const std::string& path, double max_reject_fraction)
{
    auto in = open_input(path);
    return parse_links(in, path, max_reject_fraction);
}

void write_links(std::ostream& out, std::span<const fitting::LinkRecord> records)
{
    out << kLinkHeader << '\n';
    for (const auto& r : records) {
        out << r.street_id << ',' << fitting::to_string(r.scenario) << ',' << format_exact(r.unwrapped_distance_m)
            << ',' << format_exact(r.path_gain_db) << ',';
        if (r.corner_distance_m)
            out << format_exact(*r.corner_distance_m);
        out << '\n';
    }
}

std::vector<angular::AngularScan> parse_scans(std::istream& in, std::string_view source, const angular::ScanMeta& meta)
{
    std::vector<angular::AngularScan> scans;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    angular::AngularScan cur;
    cur.meta = meta;
    const auto flush = [&] {
        if (!cur.angles_deg.empty()) {
            try {
                cur.validate();
            } catch (const std::exception& e) {
                throw InputError(std::string(source) + ": rotation " + std::to_string(scans.size() + 1) + ": " +
                                 e.what());
            }
            scans.push_back(std::move(cur));
        }
        cur = {};
        cur.meta = meta;
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        if (!header_seen) {
            if (t != kScanHeader)
                throw InputError(where(source, line_no) + ": expected header '" + std::string(kScanHeader) + "'");
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(t);
        if (f.size() != 2)
            throw InputError(where(source, line_no) + ": expected 2 fields");
        const auto a = parse_double(f[0]);
        const auto p = parse_double(f[1]);
        if (!a || !p)
            throw InputError(where(source, line_no) + ": non-numeric field");
        if (!cur.angles_deg.empty() && *a <= cur.angles_deg.back())
            flush();
        cur.angles_deg.push_back(*a);
        cur.power_mw.push_back(*p);
    }
    if (!header_seen)
        throw InputError(std::string(source) + ": missing header '" + std::string(kScanHeader) + "'");
    flush();
    if (scans.empty())
        throw InputError(std::string(source) + ": no scan samples");
    return scans;
}

std::vector<angular::AngularScan> load_scans(const std::string& path, const angular::ScanMeta& meta)
{
    auto in = open_input(path);
    return parse_scans(in, path, meta);
}

angular::ScanMeta load_scan_meta(const std::string& path)
{
    auto in = open_input(path);
    angular::ScanMeta meta;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto h = line.find('#'); h != std::string::npos)
            line.resize(h);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw InputError(where(path, line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const auto v = parse_double(trim(std::string_view(t).substr(eq + 1)));
        if (!v)
            throw InputError(where(path, line_no) + ": non-numeric value for " + key);
        if (key == "tx_power_dbm")
            meta.tx_power_dbm = *v;
        else if (key == "tx_gain_dbi")
            meta.tx_gain_dbi = *v;
        else if (key == "rx_elev_gain_dbi")
            meta.rx_elev_gain_dbi = *v;
        else
            throw InputError(where(path, line_no) + ": unknown key " + key);
    }
    return meta;
}

netsim::DegradationCdf load_degradation_cdf(const std::string& path)
{
    auto in = open_input(path);
    std::vector<std::pair<double, double>> knots;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        if (!header_seen) {
            if (t != "degradation_db,prob")
                throw InputError(where(path, line_no) + ": expected header 'degradation_db,prob'");
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(t);
        const auto d = f.size() == 2 ? parse_double(f[0]) : std::nullopt;
        const auto p = f.size() == 2 ? parse_double(f[1]) : std::nullopt;
        if (!d || !p)
            throw InputError(where(path, line_no) + ": expected two numeric fields");
        knots.emplace_back(*d, *p);
    }
    try {
        return netsim::DegradationCdf(std::move(knots));
    } catch (const std::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_fit_report(std::ostream& out, const fitting::FitResult& fit)
{
    out << "param,value,ci_lo,ci_hi\n";
    for (const auto& p : fit.params)
        out << p.name << ',' << format_number(p.value) << ',' << format_number(p.value - p.ci_half_width) << ','
            << format_number(p.value + p.ci_half_width) << '\n';
    out << "rmse_db," << format_number(fit.rmse_db) << ",,\n";
    if (const auto* cm = std::get_if<propagation::CornerModel>(&fit.model))
        out << "corner_distance_m," << format_number(cm->corner_distance_m) << ",,\n";
}

void write_residuals(std::ostream& out, std::span<const fitting::LinkRecord> records, const fitting::FitResult& fit)
{
    out << "street_id,scenario,distance_m,path_gain_db,residual_db\n";
    for (std::size_t i = 0; i < records.size() && i < fit.residuals_db.size(); ++i) {
        const auto& r = records[i];
        out << r.street_id << ',' << fitting::to_string(r.scenario) << ',' << format_number(r.unwrapped_distance_m)
            << ',' << format_number(r.path_gain_db) << ',' << format_number(fit.residuals_db[i]) << '\n';
    }
}

void write_cdf(std::ostream& out, const angular::EmpiricalCdf& cdf)
{
    out << "value_db,prob,band_lo,band_hi\n";
    for (std::size_t i = 0; i < cdf.values.size(); ++i)
        out << format_number(cdf.values[i]) << ',' << format_number(cdf.probs[i]) << ','
            << format_number(cdf.band_lo(i)) << ',' << format_number(cdf.band_hi(i)) << '\n';
}

void write_map(std::ostream& out, std::span<const netsim::UeResult> map)
{
    out << "x_m,y_m,serving_cell,snr_db,sinr_db,rate_bps,route_class\n";
    for (const auto& u : map)
        out << format_number(u.x_m) << ',' << format_number(u.y_m) << ',' << u.serving_cell << ','
            << format_number(u.snr_db) << ',' << format_number(u.sinr_db) << ',' << format_number(u.rate_bps) << ','
            << netsim::to_string(u.route_class) << '\n';
}

void write_percentiles(std::ostream& out, std::span<const netsim::PercentileRow> rows)
{
    out << "percentile,snr_db,sinr_db,rate_bps,snr_minus_sinr_db,location_gap_db\n";
    for (const auto& r : rows)
        out << format_number(r.percentile) << ',' << format_number(r.snr_db) << ',' << format_number(r.sinr_db)
            << ',' << format_number(r.rate_bps) << ',' << format_number(r.snr_minus_sinr_db) << ','
            << format_number(r.location_gap_db) << '\n';
}

void write_cells(std::ostream& out, std::span<const netsim::Cell> cells)
{
    static const char* const facing[] = {"east", "west", "north", "south"};
    out << "cell_id,site,x_m,y_m,facing\n";
    for (const auto& c : cells)
        out << c.id << ',' << c.site << ',' << format_number(c.x_m) << ',' << format_number(c.y_m) << ','
            << facing[static_cast<int>(c.facing)] << '\n';
}

} // namespace canyoncov::io
