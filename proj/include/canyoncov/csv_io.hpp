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

#ifndef CANYONCOV_CSV_IO_HPP
#define CANYONCOV_CSV_IO_HPP

#include "canyoncov/angular.hpp"
#include "canyoncov/fitting.hpp"
#include "canyoncov/netsim.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace canyoncov::io {

inline constexpr std::string_view kLinkHeader = "street_id,scenario,distance_m,path_gain_db,corner_distance_m";
inline constexpr std::string_view kScanHeader = "angle_deg,power_mw";

// Fixed 6-significant-digit rendering for numeric outputs.
std::string format_number(double v);

// Shortest text that parses back to the same double.
std::string format_exact(double v);

std::vector<std::string> split_csv_line(std::string_view line);

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;
};

struct DatasetManifest {
    std::vector<std::string> input_paths;
    std::size_t total_rows = 0;
    std::size_t accepted_rows = 0;
    std::size_t rejected_rows = 0;
    std::map<std::string, std::size_t> per_scenario;
    std::vector<RejectedRow> rejected;
};

struct LoadedLinks {
    std::vector<fitting::LinkRecord> records;
    DatasetManifest manifest;
};

// Parses link CSV text. Missing header or a rejected fraction above
// max_reject_fraction throws InputError; other bad rows are logged.
LoadedLinks parse_links(std::istream& in, std::string_view source, double max_reject_fraction = 0.1);
LoadedLinks load_links(const std::string& path, double max_reject_fraction = 0.1);

void write_links(std::ostream& out, std::span<const fitting::LinkRecord> records);

// Splits a scan file into rotations: a new rotation starts whenever the
// angle does not increase. Metadata comes from the optional sidecar.
std::vector<angular::AngularScan> parse_scans(std::istream& in, std::string_view source,
                                              const angular::ScanMeta& meta = {});
std::vector<angular::AngularScan> load_scans(const std::string& path, const angular::ScanMeta& meta = {});

// Sidecar `key = value` file with tx_power_dbm, tx_gain_dbi, rx_elev_gain_dbi.
angular::ScanMeta load_scan_meta(const std::string& path);

// CSV `degradation_db,prob`.
netsim::DegradationCdf load_degradation_cdf(const std::string& path);

void write_fit_report(std::ostream& out, const fitting::FitResult& fit);
void write_residuals(std::ostream& out, std::span<const fitting::LinkRecord> records,
                     const fitting::FitResult& fit);
void write_cdf(std::ostream& out, const angular::EmpiricalCdf& cdf);
void write_map(std::ostream& out, std::span<const netsim::UeResult> map);
void write_percentiles(std::ostream& out, std::span<const netsim::PercentileRow> rows);
void write_cells(std::ostream& out, std::span<const netsim::Cell> cells);

} // namespace canyoncov::io

#endif
