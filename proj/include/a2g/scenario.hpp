// SPDX-License-Identifier: Apache-2.0
//
// a2g: air-to-ground link reliability toolkit
// Copyright (C) 2026 The a2g authors
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
// ------------------------------------------------------------------------

// Line-oriented scenario files.
//
//   # comment
//   [section]
//   key = value          numbers; keys ending in _db take decibels
//
// Unknown sections or keys are errors. Decibel inputs are converted to
// linear values exactly once, while loading.

#ifndef A2G_SCENARIO_HPP
#define A2G_SCENARIO_HPP

#include "a2g/channel_model.hpp"
#include "a2g/relay_network.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace a2g {

/// Syntax, range or structure problem in a scenario file.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable = "h";  ///< h, r_d, theta or rho
    double min = 10.0;
    double max = 3000.0;
    int points = 64;
    bool log_spacing = false;

    std::vector<double> values() const;
    bool operator==(const SweepSpec&) const = default;
};

struct McSpec {
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    bool operator==(const McSpec&) const = default;
};

struct Scenario {
    PropagationModel propagation = PropagationModel::case_study();
    LinkBudget budget = LinkBudget::case_study();
    double total_gamma = 0.0;  ///< power-split budget; defaults to gamma_u
    double lambda = 0.0;
    DiskMode disk = 2000.0;    ///< nullopt = self-consistent radius
    double r_d = 1000.0;       ///< destination distance of altitude sweeps
    SweepSpec sweep;
    McSpec mc;
    std::vector<double> validate_r_d{500.0, 1000.0, 1500.0, 2000.0};
    std::vector<double> validate_h{400.0, 700.0, 1300.0, 2000.0};
    std::vector<double> config_xi;  ///< linear thresholds; empty = budget.xi
    int rho_points = 16;
    std::optional<AlphaFit> alpha_fit;
    std::string output;

    bool operator==(const Scenario& o) const;
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);

/// Canonical text form with linear values at full precision; parsing it
/// reproduces the scenario exactly.
std::string serialize_scenario(const Scenario& sc);

}  // namespace a2g

#endif
