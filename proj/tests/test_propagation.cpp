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

#include "oracles.hpp"

#include "canyoncov/errors.hpp"
#include "canyoncov/propagation.hpp"

#include <doctest.h>

#include <random>

using namespace canyoncov;
using namespace canyoncov::propagation;

namespace {

const SlopeInterceptModel& si(const char* key) { return std::get<SlopeInterceptModel>(find_preset(key)); }
const CornerModel& corner(const char* key) { return std::get<CornerModel>(find_preset(key)); }

} // namespace

TEST_SUITE("propagation")
{
    TEST_CASE("free-space anchor")
    {
        // Frozen from oracle::friis_db.
        CHECK(oracle::friis_db(1.0) == doctest::Approx(-61.390944).epsilon(1e-8));
        CHECK(friis_path_gain(1.0) == doctest::Approx(-61.390944).epsilon(1e-8));
        CHECK(friis_path_gain(10.0) == doctest::Approx(-81.390944).epsilon(1e-8));
        CHECK(friis_path_gain(200.0) == doctest::Approx(-107.411544).epsilon(1e-8));
        CHECK(std::abs(friis_path_gain(1.0) - kFriisAt1mDb) < 0.05);
        CHECK_THROWS_AS(friis_path_gain(0.5), DomainError);
        CHECK_THROWS_AS(wavelength_m(0.0), DomainError);
    }

    TEST_CASE("slope-intercept presets")
    {
        CHECK(eval_slope_intercept(si("roof-edge"), 100.0) == doctest::Approx(-106.2).epsilon(1e-12));
        CHECK(eval_slope_intercept(si("roof-edge"), 200.0) == doctest::Approx(-116.916668).epsilon(1e-8));
        CHECK(eval_slope_intercept(si("offset"), 100.0) == doctest::Approx(-122.8).epsilon(1e-12));
        const double gap = eval_slope_intercept(si("roof-edge"), 100.0) - eval_slope_intercept(si("offset"), 100.0);
        CHECK(gap == doctest::Approx(16.6).epsilon(1e-10));
        CHECK(eval_reference(ReferenceModel::UmaLos, 1.0) == -56.9);
        CHECK(eval_reference(ReferenceModel::UmaNlos, 1.0) == -42.5);
        CHECK(eval_reference(ReferenceModel::UmaLos, 100.0) == doctest::Approx(-100.9));
        CHECK_THROWS_AS(eval_slope_intercept(si("roof-edge"), 0.9), DomainError);
    }

    TEST_CASE("every slope preset returns its intercept at 1 m")
    {
        for (const auto& name : preset_names()) {
            const auto& p = find_preset(name);
            if (const auto* m = std::get_if<SlopeInterceptModel>(&p)) {
                INFO(name);
                CHECK(eval_slope_intercept(*m, 1.0) == m->intercept_db_1m);
            }
        }
    }

    TEST_CASE("property: slope-intercept is monotone non-increasing for n <= 0")
    {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> a(-120, 0), n(-6, 0), d(1, 5000);
        for (int i = 0; i < 2000; ++i) {
            SlopeInterceptModel m{a(rng), n(rng), 0.0};
            const double d1 = d(rng), d2 = d(rng);
            const double lo = std::min(d1, d2), hi = std::max(d1, d2);
            CHECK(eval_slope_intercept(m, hi) <= eval_slope_intercept(m, lo));
        }
    }

    TEST_CASE("excess loss relative to free space")
    {
        CHECK(excess_loss_db(si("roof-edge"), 200.0) ==
              doctest::Approx(oracle::friis_db(200.0) - oracle::slope_intercept_db(-35, -3.56, 200.0)));
        CHECK(excess_loss_db(si("roof-edge"), 200.0) == doctest::Approx(9.505124).epsilon(1e-6));
        CHECK(excess_loss_db(si("roof-edge-fixed"), 200.0) == doctest::Approx(11.054000).epsilon(1e-6));
    }

    TEST_CASE("shadowed sample has the model median and sigma")
    {
        std::mt19937_64 rng(11);
        const auto& m = si("roof-edge");
        double s = 0, s2 = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const double v = sample_shadowed(m, 100.0, rng) + 106.2;
            s += v;
            s2 += v * v;
        }
        CHECK(std::abs(s / n) < 0.2);
        CHECK(std::sqrt(s2 / n - (s / n) * (s / n)) == doctest::Approx(7.1).epsilon(0.03));
    }

    TEST_CASE("diffraction corner model")
    {
        const auto& m = corner("corner-diffraction-friis");
        // Before the corner the model is the pinned slope.
        CHECK(eval_corner(m, 100.0).gain_db == doctest::Approx(oracle::diffraction_db(-61.4, -2.27, 2.2, 244, 100)));
        CHECK(eval_corner(m, 244.0).gain_db == doctest::Approx(-61.4 - 22.7 * std::log10(244.0)));
        const auto e = eval_corner(m, 294.0);
        CHECK(e.gain_db == doctest::Approx(-109.980184).epsilon(1e-8));
        CHECK_FALSE(e.clamped);
        const auto near = eval_corner(m, 249.0);
        CHECK(near.clamped);
        CHECK(near.gain_db == doctest::Approx(-102.046875).epsilon(1e-8));
        CHECK(near.gain_db == eval_corner(m, 254.0).gain_db);
    }

    TEST_CASE("scattering and dual-slope corner models")
    {
        const auto& s = corner("corner-scattering-friis");
        CHECK(eval_corner(s, 300.0).gain_db == doctest::Approx(-153.623386).epsilon(1e-8));
        const auto& d = corner("corner-dualslope-friis");
        const double at = eval_corner(d, 244.0).gain_db;
        CHECK(at == doctest::Approx(-115.593749).epsilon(1e-8));
        CHECK(at - eval_corner(d, 254.0).gain_db == doctest::Approx(14.145599).epsilon(1e-6));
        CHECK(at - eval_corner(d, 294.0).gain_db == doctest::Approx(21.957773).epsilon(1e-6));
        // Dual-slope is continuous at the corner up to the loss step.
        CHECK(at - eval_corner(d, 244.0 + 1e-9).gain_db == doctest::Approx(12.0).epsilon(1e-6));
        CHECK_FALSE(eval_corner(d, 245.0).clamped);
    }

    TEST_CASE("property: corner loss lowers every after-corner value by exactly its size")
    {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> x(260, 2000), delta(0, 20);
        for (auto v : {CornerVariant::Diffraction, CornerVariant::Scattering, CornerVariant::DualSlope}) {
            CornerModel m{-61.4, -2.3, -10.0, 0.0, 244.0, v};
            for (int i = 0; i < 200; ++i) {
                const double xi = x(rng);
                CornerModel lossy = m;
                lossy.corner_loss_db = delta(rng);
                CHECK(eval_corner(m, xi).gain_db - eval_corner(lossy, xi).gain_db ==
                      doctest::Approx(lossy.corner_loss_db));
            }
        }
    }

    TEST_CASE("corner model preconditions")
    {
        CornerModel m = corner("corner-diffraction-friis");
        m.corner_distance_m = 0.5;
        CHECK_THROWS_AS(m.validate(), DomainError);
        CHECK_THROWS_AS(eval_corner(corner("corner-diffraction-friis"), 0.5), DomainError);
        CHECK_THROWS_AS(find_preset("no-such-preset"), ConfigError);
        CHECK(parse_corner_variant("dualslope") == CornerVariant::DualSlope);
        CHECK_THROWS_AS(parse_corner_variant("triple"), ConfigError);
    }

    TEST_CASE("eval_preset dispatches on the model family")
    {
        bool clamped = true;
        CHECK(eval_preset(find_preset("lamppost"), 10.0, &clamped) == doctest::Approx(-84.6));
        CHECK_FALSE(clamped);
        CHECK(eval_preset(find_preset("corner-diffraction-friis"), 250.0, &clamped) ==
              doctest::Approx(oracle::diffraction_db(-61.4, -2.27, 2.2, 244, 250)));
        CHECK(clamped);
    }
}
