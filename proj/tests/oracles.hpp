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

// Reference computations used to derive expected values. They are written
// from first principles and share no code with the library.

#ifndef CANYONCOV_TESTS_ORACLES_HPP
#define CANYONCOV_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kC = 299792458.0;

// Free-space path loss in dB via 20 log10(4 pi d f / c), negated.
inline double friis_db(double d, double f = 28e9) { return -20.0 * std::log10(4.0 * kPi * d * f / kC); }

inline double slope_intercept_db(double a, double n, double d) { return a + n * 10.0 * std::log10(d); }

inline double diffraction_db(double p1, double n, double delta, double dc, double x)
{
    if (x <= dc)
        return p1 + 10.0 * n * std::log10(x);
    return p1 - delta + 5.0 * n * std::log10(dc * std::max(x - dc, 10.0));
}

inline double scattering_db(double p1, double n, double delta, double dc, double x)
{
    if (x <= dc)
        return p1 + 10.0 * n * std::log10(x);
    return p1 - delta + 10.0 * n * std::log10(dc * std::max(x - dc, 10.0));
}

inline double dualslope_db(double p1, double n1, double n2, double delta, double dc, double x)
{
    if (x <= dc)
        return p1 + 10.0 * n1 * std::log10(x);
    return p1 + 10.0 * n1 * std::log10(dc) - delta + 10.0 * n2 * std::log10(x / dc);
}

// |Gamma|^2 for the field perpendicular to the plane of incidence, via Snell.
inline double fresnel_perp(double theta_i, double eps)
{
    const std::complex<double> n = std::sqrt(std::complex<double>(eps, 0.0));
    const std::complex<double> sin_t = std::sin(theta_i) / n;
    const std::complex<double> cos_t = std::sqrt(1.0 - sin_t * sin_t);
    const std::complex<double> g = (std::cos(theta_i) - n * cos_t) / (std::cos(theta_i) + n * cos_t);
    return std::norm(g);
}

// |Gamma|^2 for the field parallel to the plane of incidence, via Snell.
inline double fresnel_par(double theta_i, double eps)
{
    const std::complex<double> n = std::sqrt(std::complex<double>(eps, 0.0));
    const std::complex<double> sin_t = std::sin(theta_i) / n;
    const std::complex<double> cos_t = std::sqrt(1.0 - sin_t * sin_t);
    const std::complex<double> g = (n * std::cos(theta_i) - cos_t) / (n * std::cos(theta_i) + cos_t);
    return std::norm(g);
}

struct Image {
    double y;
    int bounces;
};

// Wall images by explicit alternating mirror sequences: walls at y = 0 and
// y = w, each sequence starting on either wall.
inline std::vector<Image> canyon_images(double y0, double w, int k_max)
{
    std::vector<Image> out{{y0, 0}};
    for (int first = 0; first < 2; ++first) {
        double y = y0;
        int wall = first;
        for (int k = 1; k <= k_max; ++k) {
            y = wall == 0 ? -y : 2.0 * w - y;
            out.push_back({y, k});
            wall ^= 1;
        }
    }
    return out;
}

struct Canyon {
    double w = 30.0, eps = 5.0, hb = 18.0, hu = 1.5, yb = 7.5, yu = 7.5, f = 28e9;
    int k = 10;
    bool ground = true;
};

inline double canyon_gain_db(const Canyon& c, double d, std::size_t* n_rays = nullptr)
{
    const double lam = kC / c.f;
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& im : canyon_images(c.yb, c.w, c.k)) {
        for (int g = 0; g <= (c.ground ? 1 : 0); ++g) {
            const double dy = im.y - c.yu;
            const double dz = g ? c.hb + c.hu : c.hb - c.hu;
            const double len = std::sqrt(d * d + dy * dy + dz * dz);
            double p = std::pow(lam / (4.0 * kPi * len), 2);
            if (im.bounces > 0)
                p *= std::pow(fresnel_perp(std::acos(std::fabs(dy) / len), c.eps), im.bounces);
            if (g)
                p *= fresnel_par(std::acos(dz / len), c.eps);
            sum += p;
            ++count;
        }
    }
    if (n_rays)
        *n_rays = count;
    return 10.0 * std::log10(sum);
}

// max / mean of a power vector, in dB.
inline double max_over_mean_db(const std::vector<double>& p)
{
    const double mx = *std::max_element(p.begin(), p.end());
    const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
    return 10.0 * std::log10(mx / mean);
}

// Sampled Gaussian beam of the given half-power width on `bins` bins, power
// floored at floor_db, in linear units.
inline std::vector<double> gaussian_beam_power(int bins, double hpbw, double floor_db)
{
    std::vector<double> p(static_cast<std::size_t>(bins));
    for (int i = 0; i < bins; ++i) {
        double a = 360.0 * i / bins;
        if (a > 180.0)
            a -= 360.0;
        const double db = std::max(-3.0102999566398 * std::pow(2.0 * a / hpbw, 2), floor_db);
        p[static_cast<std::size_t>(i)] = std::pow(10.0, db / 10.0);
    }
    return p;
}

// Monte Carlo of max/mean over `bins` i.i.d. unit exponentials.
inline std::vector<double> exponential_max_mean_db(int bins, int trials, std::uint64_t seed)
{
    std::mt19937 rng(static_cast<std::uint32_t>(seed));
    std::exponential_distribution<double> e(1.0);
    std::vector<double> out;
    std::vector<double> p(static_cast<std::size_t>(bins));
    for (int t = 0; t < trials; ++t) {
        for (auto& v : p)
            v = e(rng);
        out.push_back(max_over_mean_db(p));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline double quantile_sorted(const std::vector<double>& s, double q)
{
    const double h = q * static_cast<double>(s.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, s.size() - 1);
    return s[lo] + (h - static_cast<double>(lo)) * (s[hi] - s[lo]);
}

// Closed-form two-parameter OLS on x = 10 log10(d).
struct Line {
    double a, n, se_a, se_n, rmse;
};

inline Line ols_line(const std::vector<double>& d, const std::vector<double>& y)
{
    const double m = static_cast<double>(d.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        sx += 10.0 * std::log10(d[i]);
        sy += y[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = 10.0 * std::log10(d[i]) - mx;
        sxx += x * x;
        sxy += x * (y[i] - my);
    }
    const double n = sxy / sxx;
    const double a = my - n * mx;
    double ss = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double r = y[i] - a - n * 10.0 * std::log10(d[i]);
        ss += r * r;
    }
    const double s2 = m > 2 ? ss / (m - 2) : NAN;
    return {a, n, std::sqrt(s2 * (1.0 / m + mx * mx / sxx)), std::sqrt(s2 / sxx), std::sqrt(ss / m)};
}

inline double dkw(double n, double alpha) { return std::sqrt(std::log(2.0 / alpha) / (2.0 * n)); }

inline double noise_dbm(double bw, double nf) { return -174.0 + 10.0 * std::log10(bw) + nf; }

inline double rate_bps(double sinr_db, double bw, double penalty_db)
{
    return bw * std::log2(1.0 + std::pow(10.0, (sinr_db - penalty_db) / 10.0));
}

} // namespace oracle

#endif
