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

#include "canyoncov/angular.hpp"

#include "canyoncov/errors.hpp"
#include "canyoncov/seeding.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace canyoncov::angular {

namespace {

double wrapped_offset_deg(double a, double b)
{
    double d = std::fmod(a - b, 360.0);
    if (d > 180.0)
        d -= 360.0;
    if (d < -180.0)
        d += 360.0;
    return d;
}

double gaussian_lobe(double offset_deg, double hpbw_deg)
{
    const double r = offset_deg / hpbw_deg;
    return std::exp(-4.0 * std::log(2.0) * r * r);
}

} // namespace

void AngularScan::validate() const
{
    if (angles_deg.empty())
        throw DomainError("empty angular scan");
    if (angles_deg.size() != power_mw.size())
        throw DomainError("angle and power columns differ in length");
    if (angles_deg.size() < static_cast<std::size_t>(kMinScanSamples))
        throw DomainError("angular scan needs at least 36 samples per rotation");
    for (std::size_t i = 0; i < angles_deg.size(); ++i) {
        if (!(angles_deg[i] >= 0.0 && angles_deg[i] < 360.0))
            throw DomainError("scan angles must lie in [0, 360)");
        if (i > 0 && !(angles_deg[i] > angles_deg[i - 1]))
            throw DomainError("scan angles must be strictly increasing");
        if (!(power_mw[i] > 0.0))
            throw DomainError("scan powers must be strictly positive");
    }
}

ComplexPattern::ComplexPattern(std::vector<std::complex<double>> amplitude) : amp_(std::move(amplitude))
{
    if (amp_.empty())
        throw DomainError("empty pattern");
}

ComplexPattern ComplexPattern::impulse(int bins, int bin)
{
    if (bins <= 0 || bin < 0 || bin >= bins)
        throw DomainError("impulse bin out of range");
    std::vector<std::complex<double>> a(bins);
    a[bin] = std::sqrt(static_cast<double>(bins));
    return ComplexPattern(std::move(a));
}

ComplexPattern ComplexPattern::constant(int bins, double amplitude)
{
    if (bins <= 0)
        throw DomainError("pattern needs at least one bin");
    return ComplexPattern(std::vector<std::complex<double>>(bins, amplitude));
}

ComplexPattern ComplexPattern::gaussian_beam(int bins, double hpbw_deg, double sidelobe_floor_db, double pointing_deg)
{
    if (bins <= 0 || !(hpbw_deg > 0.0))
        throw DomainError("beam needs bins > 0 and a positive beamwidth");
    const double floor = std::pow(10.0, sidelobe_floor_db / 10.0);
    std::vector<std::complex<double>> a(bins);
    for (int i = 0; i < bins; ++i) {
        const double off = wrapped_offset_deg(360.0 * i / bins, pointing_deg);
        a[i] = std::sqrt(std::max(gaussian_lobe(off, hpbw_deg), floor));
    }
    return ComplexPattern(std::move(a));
}

std::vector<double> ComplexPattern::power() const
{
    std::vector<double> p(amp_.size());
    std::transform(amp_.begin(), amp_.end(), p.begin(), [](auto z) { return std::norm(z); });
    return p;
}

double ComplexPattern::mean_power() const
{
    const auto p = power();
    return std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
}

ComplexPattern default_antenna(int bins)
{
    return ComplexPattern::gaussian_beam(bins, 10.0, -25.0);
}

double omni_path_gain(const AngularScan& scan)
{
    scan.validate();
    const double p_all =
        std::accumulate(scan.power_mw.begin(), scan.power_mw.end(), 0.0) / static_cast<double>(scan.power_mw.size());
    return 10.0 * std::log10(p_all) - scan.meta.tx_power_dbm - scan.meta.tx_gain_dbi - scan.meta.rx_elev_gain_dbi;
}

double azimuth_gain(std::span<const double> power)
{
    if (power.empty())
        throw DomainError("azimuth gain of an empty pattern");
    if (power.size() < static_cast<std::size_t>(kMinScanSamples))
        throw DomainError("azimuth gain needs at least 36 samples");
    double peak = 0.0;
    double sum = 0.0;
    for (double p : power) {
        if (!(p >= 0.0))
            throw DomainError("azimuth gain needs non-negative powers");
        peak = std::max(peak, p);
        sum += p;
    }
    const double mean = sum / static_cast<double>(power.size());
    if (!(mean > 0.0))
        throw DomainError("azimuth gain of an all-zero pattern");
    return std::max(0.0, 10.0 * std::log10(peak / mean));
}

ComplexPattern effective_pattern(const ComplexPattern& channel, const ComplexPattern& antenna)
{
    const int n = channel.size();
    if (n == 0 || antenna.size() != n)
        throw DomainError("channel and antenna patterns must share one angular grid");
    const auto& h = channel.amplitude();
    const auto& a = antenna.amplitude();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    std::vector<std::complex<double>> y(n);
    for (int m = 0; m < n; ++m) {
        std::complex<double> acc = 0.0;
        for (int k = 0; k < n; ++k) {
            int idx = m - k;
            if (idx < 0)
                idx += n;
            acc += h[k] * a[idx];
        }
        y[m] = acc * scale;
    }
    return ComplexPattern(std::move(y));
}

std::vector<double> simulate_full_scattering(const ComplexPattern& antenna, int n_trials, std::uint64_t seed,
                                             unsigned threads)
{
    if (n_trials < 1)
        throw DomainError("full-scattering simulation needs at least one trial");
    const int n = antenna.size();
    if (n == 0)
        throw DomainError("empty antenna pattern");

    std::vector<double> gains(static_cast<std::size_t>(n_trials));
    const auto run_trial = [&](int t) {
        std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        // Unit mean power: real and imaginary parts each N(0, 1/2).
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        std::vector<std::complex<double>> h(n);
        for (auto& z : h) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z = {re, im};
        }
        const auto eff = effective_pattern(ComplexPattern(std::move(h)), antenna);
        const auto p = eff.power();
        gains[t] = azimuth_gain(p);
    };

    detail::parallel_for(gains.size(), threads, [&](std::size_t t) { run_trial(static_cast<int>(t)); });
    return gains;
}

double EmpiricalCdf::band_lo(std::size_t i) const
{
    return std::max(0.0, probs.at(i) - band_epsilon);
}

double EmpiricalCdf::band_hi(std::size_t i) const
{
    return std::min(1.0, probs.at(i) + band_epsilon);
}

double EmpiricalCdf::evaluate(double x) const
{
    const auto it = std::upper_bound(values.begin(), values.end(), x);
    return static_cast<double>(it - values.begin()) / static_cast<double>(values.size());
}

double dkw_epsilon(std::size_t n, double alpha)
{
    if (n == 0)
        throw DomainError("DKW band needs samples");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie in (0, 1)");
    return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

EmpiricalCdf empirical_cdf(std::span<const double> samples, double alpha)
{
    if (samples.size() < 2)
        throw DomainError("empirical CDF needs at least 2 samples");
    EmpiricalCdf cdf;
    cdf.values.assign(samples.begin(), samples.end());
    std::sort(cdf.values.begin(), cdf.values.end());
    const double n = static_cast<double>(cdf.values.size());
    cdf.probs.resize(cdf.values.size());
    for (std::size_t i = 0; i < cdf.values.size(); ++i)
        cdf.probs[i] = static_cast<double>(i + 1) / n;
    cdf.band_epsilon = dkw_epsilon(cdf.values.size(), alpha);
    return cdf;
}

AngularScan synthetic_scan(const SyntheticScanSpec& spec)
{
    if (spec.bins < kMinScanSamples)
        throw DomainError("synthetic scan needs at least 36 bins");
    const double floor = std::pow(10.0, spec.sidelobe_floor_db / 10.0);
    const double second = std::pow(10.0, spec.secondary_level_db / 10.0);
    AngularScan scan;
    scan.meta = spec.meta;
    for (int i = 0; i < spec.bins; ++i) {
        const double ang = 360.0 * i / spec.bins;
        double rel = gaussian_lobe(wrapped_offset_deg(ang, spec.main_lobe_deg), spec.hpbw_deg);
        if (spec.secondary_offset_deg)
            rel += second * gaussian_lobe(wrapped_offset_deg(ang, spec.main_lobe_deg + *spec.secondary_offset_deg),
                                          spec.hpbw_deg);
        scan.angles_deg.push_back(ang);
        scan.power_mw.push_back(spec.peak_power_mw * std::max(rel, floor));
    }
    return scan;
}

} // namespace canyoncov::angular
