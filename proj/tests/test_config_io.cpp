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

#include <doctest.h>

#include <random>
#include <sstream>

using namespace canyoncov;

namespace {

const std::string kData = CANYONCOV_TEST_DATA;

} // namespace

TEST_SUITE("config_io")
{
    TEST_CASE("defaults cover every documented key")
    {
        const auto cfg = config::ToolConfig::load("default");
        CHECK(cfg.get_double("grid.block_long_m") == 200.0);
        CHECK(cfg.get_int("grid.blocks_y") == 16);
        CHECK(cfg.get_bool("grid.wrap"));
        CHECK(cfg.get_double("budget.bandwidth_hz") == 800e6);
        CHECK(cfg.get_string("interference.model") == "beam_aimed");
        CHECK_FALSE(cfg.seed().has_value());
        for (const auto& k : config::key_specs())
            if (!k.default_value.empty())
                CHECK_NOTHROW(cfg.get_string(k.key));
    }

    TEST_CASE("parse key = value with comments")
    {
        const auto cfg = config::ToolConfig::parse("# comment\n"
                                                   "grid.blocks_x = 12   # trailing\n"
                                                   "\n"
                                                   "canyon.ground=false\n"
                                                   "seed = 18446744073709551615\n"
                                                   "preset.roof-edge.exponent = -3.0\n");
        CHECK(cfg.get_int("grid.blocks_x") == 12);
        CHECK_FALSE(cfg.get_bool("canyon.ground"));
        CHECK(cfg.seed() == 18446744073709551615ull);
        const auto p = std::get<propagation::SlopeInterceptModel>(config::resolve_preset(cfg, "roof-edge"));
        CHECK(p.exponent == -3.0);
        CHECK(p.intercept_db_1m == -35.0);
    }

    TEST_CASE("unknown keys and bad values are named")
    {
        try {
            config::ToolConfig::parse("grid.blocks_x = 8\ngrid.bogus = 1\n", "x.ini");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string m = e.what();
            CHECK(m.find("grid.bogus") != std::string::npos);
            CHECK(m.find("x.ini:2") != std::string::npos);
        }
        CHECK_THROWS_AS(config::ToolConfig::parse("grid.blocks_x = 2\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("canyon.eps_r = 1\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("fit.ci_level = abc\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("grid.wrap = maybe\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("no equals sign\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("model.corner = roof-edge\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("interference.model = loud\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::parse("preset.nope.exponent = 1\n"), ConfigError);
        CHECK_THROWS_AS(config::ToolConfig::load("/nonexistent/file.ini"), ConfigError);
    }

    TEST_CASE("preset override with a field of the other family is rejected on use")
    {
        const auto cfg = config::ToolConfig::parse("preset.roof-edge.corner_loss_db = 1\n");
        CHECK_THROWS_AS(config::resolve_preset(cfg, "roof-edge"), ConfigError);
    }

    TEST_CASE("config builds geometry and scenarios")
    {
        const auto cfg = config::ToolConfig::parse("canyon.width_m = 24\ncanyon.max_bounces = 4\n"
                                                   "grid.blocks_x = 4\ngrid.blocks_y = 4\ngrid.wrap = false\n"
                                                   "interference.model = full_eirp\nbudget.tx_power_dbm = 30\n");
        const auto g = config::canyon_geometry(cfg);
        CHECK(g.street_width_m == 24.0);
        CHECK(g.max_wall_reflections == 4);
        const auto s = config::grid_scenario(cfg, 9);
        CHECK(s.grid.cells.size() == 24);
        CHECK(s.grid.cells.front().tx_power_dbm == 30.0);
        CHECK(s.interference == netsim::InterferenceModel::FullEirp);
        CHECK(s.seed == 9);
    }

    TEST_CASE("loads a well-formed link file")
    {
        std::istringstream in("street_id,scenario,distance_m,path_gain_db,corner_distance_m\n"
                              "a,RoofEdge,50,-95.5,\n"
                              "a,Offset,80,-121,\n"
                              "b,AroundCorner,300,-130.25,244\n");
        const auto l = io::parse_links(in, "mem");
        CHECK(l.records.size() == 3);
        CHECK(l.manifest.rejected_rows == 0);
        CHECK(l.manifest.accepted_rows + l.manifest.rejected_rows == l.manifest.total_rows);
        CHECK(l.manifest.per_scenario.at("AroundCorner") == 1);
        CHECK(l.records[2].corner_distance_m == 244.0);
    }

    TEST_CASE("malformed rows are logged with line numbers")
    {
        const auto l = io::load_links(kData + "/links_one_bad.csv");
        CHECK(l.manifest.total_rows == 20);
        CHECK(l.manifest.accepted_rows == 19);
        REQUIRE(l.manifest.rejected.size() == 1);
        CHECK(l.manifest.rejected[0].line == 21);
        CHECK(l.manifest.rejected[0].reason.find("corner") != std::string::npos);
    }

    TEST_CASE("too many rejected rows and a missing header are hard errors")
    {
        CHECK_THROWS_AS(io::load_links(kData + "/links_many_bad.csv"), InputError);
        CHECK_THROWS_AS(io::load_links(kData + "/links_no_header.csv"), InputError);
        CHECK_THROWS_AS(io::load_links(kData + "/does_not_exist.csv"), InputError);
        std::istringstream sub("street_id,scenario,distance_m,path_gain_db,corner_distance_m\n"
                               "a,RoofEdge,0.5,-60,\n"
                               "a,RoofEdge,50,-95,\n");
        const auto l = io::parse_links(sub, "mem", 0.6);
        CHECK(l.manifest.rejected.at(0).reason.find("distance") != std::string::npos);
    }

    TEST_CASE("property: write_links round-trips accepted rows exactly")
    {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> d(1.0001, 5000.0), g(-200.0, -40.0);
        std::vector<fitting::LinkRecord> recs;
        for (int i = 0; i < 500; ++i) {
            fitting::LinkRecord r{"st" + std::to_string(i % 7), fitting::Scenario::Lamppost, d(rng), g(rng), {}};
            if (i % 5 == 0) {
                r.scenario = fitting::Scenario::AroundCorner;
                r.corner_distance_m = r.unwrapped_distance_m * 0.5 + 0.6;
            }
            recs.push_back(r);
        }
        std::stringstream s;
        io::write_links(s, recs);
        const auto back = io::parse_links(s, "mem");
        REQUIRE(back.records.size() == recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i) {
            CHECK(back.records[i].street_id == recs[i].street_id);
            CHECK(back.records[i].scenario == recs[i].scenario);
            CHECK(back.records[i].unwrapped_distance_m == recs[i].unwrapped_distance_m);
            CHECK(back.records[i].path_gain_db == recs[i].path_gain_db);
            CHECK(back.records[i].corner_distance_m == recs[i].corner_distance_m);
        }
    }

    TEST_CASE("scan files split into rotations and read their sidecar")
    {
        const auto meta = io::load_scan_meta(kData + "/scans.csv.meta");
        CHECK(meta.tx_power_dbm == 22.0);
        CHECK(meta.tx_gain_dbi == 10.0);
        const auto scans = io::load_scans(kData + "/scans.csv", meta);
        REQUIRE(scans.size() == 3);
        for (const auto& s : scans) {
            CHECK(s.angles_deg.size() == 144);
            CHECK(s.meta.tx_power_dbm == 22.0);
        }
        std::istringstream bad("angle_deg,power_mw\n0,1\n5,-1\n");
        CHECK_THROWS_AS(io::parse_scans(bad, "mem"), InputError);
    }

    TEST_CASE("number formatting")
    {
        CHECK(io::format_number(-106.2) == "-106.2");
        CHECK(io::format_number(1.0 / 3.0) == "0.333333");
        CHECK(io::format_number(6.37061234e8) == "6.37061e+08");
        CHECK(io::format_number(-0.0) == "0");
        CHECK(io::format_number(-std::numeric_limits<double>::infinity()) == "-inf");
        CHECK(std::stod(io::format_exact(0.1 + 0.2)) == 0.1 + 0.2);
    }
}
