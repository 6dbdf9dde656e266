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

#ifndef CANYONCOV_ANGULAR_HPP
#define CANYONCOV_ANGULAR_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace canyoncov::angular {

// 2.5 degree bins, the sampling of one rotation of the receive horn.
inline constexpr int kDefaultBins = 144;
inline constexpr int kMinScanSamples = 36;

struct ScanMeta {
    double tx_power_dbm = 0.0;
    double tx_gain_dbi = 0.0;
    double rx_elev_gain_dbi = 0.0;
};

// Power versus azimuth for one rotation.
struct AngularScan {
    std::vector<double> angles_deg; // strictly increasing, in [0, 360)
    std::vector<double> power_mw;   // linear, > 0
    ScanMeta meta;

    void validate() const;
};

// Complex (field) pattern on the uniform grid angle_i = 360 i / N.
class ComplexPattern {
public:
    ComplexPattern() = default;
    explicit ComplexPattern(std::vector<std::complex<double>> amplitude);

    // Unit-mean-power impulse at `bin`; the identity of effective_pattern.
    static ComplexPattern impulse(int bins, int bin = 0);
    // Constant amplitude: a physically isotropic antenna.
    static ComplexPattern constant(int bins, double amplitude = 1.0);
    // Gaussian main lobe with the given half-power beamwidth, pointing at
    // `pointing_deg`, with power floored at `sidelobe_floor_db` below the peak.
    static ComplexPattern gaussian_beam(int bins, double hpbw_deg, double sidelobe_floor_db,
                                        double pointing_deg = 0.0);

    int size() const { return static_cast<int>(amp_.size()); }
    double angle_deg(int i) const { return 360.0 * i / size(); }
    const std::vector<std::complex<double>>& amplitude() const { return amp_; }
    std::vector<double> power() const;
    double mean_power() const;

private:
    std::vector<std::complex<double>> amp_;
};

// Default base antenna: 10 degree beam over a -25 dB isotropic floor.
ComplexPattern default_antenna(int bins = kDefaultBins);

// 10 log10(P_all) - P_T - G_T - G_elev with P_all the sample mean of power.
double omni_path_gain(const AngularScan& scan);

// 10 log10(max / mean) of a linear power pattern.
double azimuth_gain(std::span<const double> power);

// Circular convolution over azimuth, scaled by 1/sqrt(N) so that an impulse
// of unit mean power is the identity and mean powers multiply.
ComplexPattern effective_pattern(const ComplexPattern& channel, const ComplexPattern& antenna);

// Azimuth gain of the effective pattern for i.i.d. circularly symmetric
// complex Gaussian channel spectra. Trial i draws from a generator seeded
// from (seed, i), so the result does not depend on the thread count.
std::vector<double> simulate_full_scattering(const ComplexPattern& antenna, int n_trials, std::uint64_t seed,
                                             unsigned threads = 0);

struct EmpiricalCdf {
    std::vector<double> values; // sorted
    std::vector<double> probs;  // (i + 1) / N
    double band_epsilon = 0.0;

    double band_lo(std::size_t i) const;
    double band_hi(std::size_t i) const;
    // Right-continuous step function.
    double evaluate(double x) const;
};

// DKW half-width sqrt(ln(2 / alpha) / (2 N)).
double dkw_epsilon(std::size_t n, double alpha);

EmpiricalCdf empirical_cdf(std::span<const double> samples, double alpha = 0.1);

// Synthetic rotation for exercising the pipeline without measured scans.
struct SyntheticScanSpec {
    int bins = kDefaultBins;
    double peak_power_mw = 1e-6;
    double main_lobe_deg = 0.0;
    double hpbw_deg = 10.0;
    double sidelobe_floor_db = -40.0;
    std::optional<double> secondary_offset_deg;
    double secondary_level_db = -10.0;
    ScanMeta meta;
};

AngularScan synthetic_scan(const SyntheticScanSpec& spec);

} // namespace canyoncov::angular

#endif
