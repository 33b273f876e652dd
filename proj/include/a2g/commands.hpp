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

// Subcommands behind the command-line tool. Each writes CSV to a stream;
// rows follow the sweep order.

#ifndef A2G_COMMANDS_HPP
#define A2G_COMMANDS_HPP

#include "a2g/scenario.hpp"

#include <ostream>
#include <string>

namespace a2g {

struct CommandOptions {
    Strategy strategy = Strategy::cc;
    bool approx_inverse = false;
};

/// Relay disk radius used at altitude h: the scenario's fixed radius, or the
/// self-consistent coverage radius of the strategy (cc for dc) when auto.
double resolve_disk(const Scenario& sc, Strategy s, double h);

/// h,outage_dc,outage_rc,outage_rc_lb,outage_cc over the h sweep at sc.r_d.
void cmd_outage_curve(const Scenario& sc, const CommandOptions& opt, std::ostream& out);

/// r_d,theta_opt_analytic,theta_opt_numeric,h_opt over the r_d sweep.
void cmd_optimal_altitude(const Scenario& sc, const CommandOptions& opt, std::ostream& out);

/// xi,theta_c,r_c,h over the theta sweep for each configured threshold.
void cmd_config_space(const Scenario& sc, const CommandOptions& opt, std::ostream& out);

/// h,rho,r_c,is_optimum over the h sweep times a rho grid, then the joint
/// optimum within the h sweep range flagged with is_optimum = 1.
void cmd_power_sweep(const Scenario& sc, const CommandOptions& opt, std::ostream& out);

struct ValidationSummary {
    int rows = 0;
    int hard_failures = 0;  ///< |z| > 5
    double max_abs_z = 0.0;
};

/// strategy,r_d,h,analytic,mc,std_err,z_score over the validation grid.
ValidationSummary cmd_validate(const Scenario& sc, std::ostream& out);

struct FitAlphaInput {
    double freq_hz;
    double sigma_los_db;
    double sigma_nlos_db;
    double a_db;
    double d_min;
    double d_max;
    int points;
};

/// a1,offset row for log-spaced distances over [d_min, d_max].
AlphaFit cmd_fit_alpha(const FitAlphaInput& in, std::ostream& out);

/// Formats v with 12 significant digits in the C locale.
std::string csv_number(double v);

}  // namespace a2g

#endif
