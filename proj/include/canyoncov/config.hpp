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

#ifndef CANYONCOV_CONFIG_HPP
#define CANYONCOV_CONFIG_HPP

#include "canyoncov/angular.hpp"
#include "canyoncov/netsim.hpp"
#include "canyoncov/propagation.hpp"
#include "canyoncov/raytracer.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace canyoncov::config {

enum class ValueType { Double, Int, Bool, String };

struct KeySpec {
    std::string key;
    ValueType type = ValueType::Double;
    std::string default_value; // empty: unset unless given
    double min = -1e300;
    double max = 1e300;
    std::string help;
};

// Every recognised key with its default, in documentation order.
const std::vector<KeySpec>& key_specs();

// Flat `key = value` configuration with dotted namespaces. Unknown keys are
// rejected, numbers are range-checked when set.
class ToolConfig {
public:
    ToolConfig() = default;

    static ToolConfig parse(std::string_view text, std::string_view source = "<config>");
    static ToolConfig load_file(const std::string& path);
    // "default" yields the built-in defaults, anything else is a file path.
    static ToolConfig load(const std::string& path_or_default);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    int get_int(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::optional<std::uint64_t> seed() const;

    // Explicitly set keys, sorted.
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::string raw(const std::string& key) const;
    std::map<std::string, std::string> values_;
};

// Preset catalog with any `preset.<name>.<field>` overrides applied.
propagation::Preset resolve_preset(const ToolConfig& cfg, const std::string& name);

raytracer::CanyonGeometry canyon_geometry(const ToolConfig& cfg);

netsim::GridSpec grid_spec(const ToolConfig& cfg);

// Full network scenario; reads degradation_cdf_file when set.
netsim::GridScenario grid_scenario(const ToolConfig& cfg, std::uint64_t seed);

} // namespace canyoncov::config

#endif
