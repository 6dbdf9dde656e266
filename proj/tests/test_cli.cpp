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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;
using canyoncov::cli::run;

namespace {

const std::string kData = CANYONCOV_TEST_DATA;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "canyoncov");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::path(CANYONCOV_TEST_SCRATCH) / name;
    fs::remove_all(p);
    return p;
}

std::vector<std::string> csv_row(const std::string& text, const std::string& key)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + ",", 0) == 0) {
            std::vector<std::string> f;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ','))
                f.push_back(cell);
            return f;
        }
    return {};
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("eval prints the preset value")
    {
        const auto r = invoke({"eval", "--preset", "roof-edge", "--distance", "100"});
        CHECK(r.code == 0);
        CHECK(r.out == "-106.2\n");
    }

    TEST_CASE("errors map to distinct exit codes with a machine-readable line")
    {
        auto r = invoke({"frobnicate"});
        CHECK(r.code == canyoncov::cli::kUsage);
        CHECK(r.err.rfind("error: code=usage exit=1 message=\"", 0) == 0);
        r = invoke({"eval", "--preset", "nope", "--distance", "100"});
        CHECK(r.code == canyoncov::cli::kConfig);
        CHECK(r.err.find("code=config") != std::string::npos);
        r = invoke({"eval", "--preset", "roof-edge", "--distance", "0.5"});
        CHECK(r.code == canyoncov::cli::kDomain);
        r = invoke({"fit", "--input", kData + "/missing.csv"});
        CHECK(r.code == canyoncov::cli::kInput);
        r = invoke({"netsim", "--config", kData + "/missing.ini", "--out", scratch("nope").string()});
        CHECK(r.code == canyoncov::cli::kConfig);
        CHECK_FALSE(fs::exists(scratch("nope")));
    }

    TEST_CASE("fit on the shipped fixture recovers its generator within the interval")
    {
        const auto dir = scratch("fit");
        const auto r = invoke({"fit", "--input", kData + "/roof_edge_fixture.csv", "--out", dir.string()});
        REQUIRE(r.code == 0);
        const auto a = csv_row(r.out, "intercept_db_1m");
        const auto n = csv_row(r.out, "exponent");
        REQUIRE(a.size() == 4);
        REQUIRE(n.size() == 4);
        CHECK(std::stod(a[2]) <= -35.0);
        CHECK(std::stod(a[3]) >= -35.0);
        CHECK(std::stod(n[2]) <= -3.56);
        CHECK(std::stod(n[3]) >= -3.56);
        CHECK(std::stod(csv_row(r.out, "rmse_db").at(1)) == doctest::Approx(7.1).epsilon(0.05));
        CHECK(fs::exists(dir / "fit_params.csv"));
        CHECK(fs::exists(dir / "fit_residuals.csv"));
        CHECK(r.err.find("accepted=1650") != std::string::npos);
    }

    TEST_CASE("fixed-intercept fit")
    {
        const auto r = invoke({"fit", "--input", kData + "/roof_edge_fixture.csv", "--fixed-intercept", "friis"});
        REQUIRE(r.code == 0);
        CHECK(csv_row(r.out, "intercept_db_1m").at(1) == "-61.4");
        const auto bad = invoke({"fit", "--input", kData + "/roof_edge_fixture.csv", "--fixed-intercept", "x1"});
        CHECK(bad.code == canyoncov::cli::kConfig);
    }

    TEST_CASE("corner fit on the shipped fixture")
    {
        const auto r = invoke({"corner-fit", "--input", kData + "/corner_fixture.csv", "--variant", "diffraction"});
        REQUIRE(r.code == 0);
        const auto n = csv_row(r.out, "exponent");
        REQUIRE(n.size() == 4);
        CHECK(std::stod(n[1]) == doctest::Approx(-2.27).epsilon(0.03));
        const auto f = invoke({"corner-fit", "--input", kData + "/corner_fixture.csv", "--variant", "dualslope",
                               "--float-intercept"});
        CHECK(f.code == 0);
        CHECK(csv_row(f.out, "exponent_after").size() == 4);
        const auto bad = invoke({"corner-fit", "--input", kData + "/corner_fixture.csv", "--variant", "bent"});
        CHECK(bad.code == canyoncov::cli::kConfig);
    }

    TEST_CASE("angular subcommand reports per-scan gains and CDFs")
    {
        const auto dir = scratch("angular");
        const auto r = invoke({"angular", "--input", kData + "/scans.csv", "--full-scattering", "200", "--seed", "4",
                               "--out", dir.string()});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("scan,gain_db,omni_path_gain_db\n", 0) == 0);
        const auto first = csv_row(r.out, "0");
        REQUIRE(first.size() == 3);
        CHECK(std::stod(first[1]) > 14.0);
        CHECK(slurp(dir / "angular_cdf.csv").rfind("value_db,prob,band_lo,band_hi\n", 0) == 0);
        CHECK(fs::exists(dir / "full_scattering_cdf.csv"));
    }

    TEST_CASE("raytrace sweep")
    {
        const auto r = invoke({"raytrace", "--config", "default", "--dmin", "10", "--dmax", "30", "--step", "10"});
        REQUIRE(r.code == 0);
        CHECK(r.out.rfind("range_m,path_gain_db,n_rays\n", 0) == 0);
        CHECK(csv_row(r.out, "20").at(2) == "42");
        CHECK(invoke({"raytrace", "--config", "default", "--dmin", "10", "--dmax", "5", "--step", "1"}).code ==
              canyoncov::cli::kDomain);
    }

    TEST_CASE("netsim is byte-identical for a fixed seed and writes only inside --out")
    {
        const auto cfg = scratch("netsim_cfg.ini");
        fs::create_directories(cfg.parent_path());
        std::ofstream(cfg) << "grid.blocks_x = 4\ngrid.blocks_y = 8\ngrid.ue_step_m = 10\n";
        const auto a = scratch("netsim_a"), b = scratch("netsim_b");
        const auto ra = invoke({"netsim", "--config", cfg.string(), "--out", a.string(), "--seed", "3"});
        const auto rb = invoke({"netsim", "--config", cfg.string(), "--out", b.string(), "--seed", "3"});
        REQUIRE(ra.code == 0);
        REQUIRE(rb.code == 0);
        for (const char* f : {"netsim_map.csv", "netsim_percentiles.csv", "netsim_cells.csv"})
            CHECK(slurp(a / f) == slurp(b / f));
        std::size_t files = 0;
        for (const auto& e : fs::recursive_directory_iterator(a)) {
            (void)e;
            ++files;
        }
        CHECK(files == 3);
        CHECK(slurp(a / "netsim_map.csv").rfind("x_m,y_m,serving_cell,snr_db,sinr_db,rate_bps,route_class\n", 0) ==
              0);
    }

    TEST_CASE("omitted seed is drawn at random and logged")
    {
        const auto r = invoke({"angular", "--input", kData + "/scans.csv", "--full-scattering", "10"});
        REQUIRE(r.code == 0);
        CHECK(r.err.find("info: seed=") != std::string::npos);
    }
}
