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

// Direct UAV to ground-node link: outage, altitude optimisation and the
// fixed-outage configuration curve.

#ifndef A2G_DIRECT_LINK_HPP
#define A2G_DIRECT_LINK_HPP

#include "a2g/channel_model.hpp"

#include <functional>

namespace a2g {

/// Point of the curve {(r, h) : outage_dc(r, h) = epsilon}, in polar form
/// around the UAV ground projection.
struct ConfigSpacePoint {
    double theta_c;
    double lambda_radius;
    double h;
    double r_c;
    double x_c;
    double y_c;
};

enum class SearchStatus { ok, non_unimodal, grid_fallback };

struct OptimumAltitude {
    double theta_opt = 0.0;
    double h_opt = 0.0;
    double outage_at_opt = 0.0;
    SearchStatus status = SearchStatus::ok;
    // Regime diagnostics of the high-K, large-xy derivation.
    double k_at_opt = 0.0;
    double xy_at_opt = 0.0;
    double residual = 0.0;
};

double outage_dc(const Geometry& geom, const PropagationModel& model, const LinkBudget& budget);

/// Stationarity residual of the direct-link outage in theta at fixed r_d:
/// sqrt(xi/gamma_u (r_d/cos)^alpha) [K'/K + alpha' ln(r_d/cos) + alpha tan] - K'/K.
double altitude_residual(double theta, double r_d, const PropagationModel& model, const LinkBudget& budget);

/// Root of altitude_residual on [1e-4, pi/2 - 1e-4]. Throws convergence_error
/// when the residual does not change sign.
OptimumAltitude optimal_theta_dc(double r_d, const PropagationModel& model, const LinkBudget& budget);

/// Argmin over h of an arbitrary outage profile: 64-point log grid over
/// [1, 50 r_d] then golden section to relative width 1e-4.
OptimumAltitude optimal_theta_numeric(double r_d, const std::function<double(double)>& outage_of_h);

ConfigSpacePoint config_space_point(double theta_c, const PropagationModel& model, const LinkBudget& budget,
                                    bool use_approx_inverse = false);

/// Stationarity residual of r_C(theta) using the large-x inverse
/// y ~ x - Q^{-1}(eps): alpha tan + alpha' ln Lambda - 2 x' q / (x (x - q)).
double coverage_residual(double theta, const PropagationModel& model, const LinkBudget& budget);

struct CoverageOptimum {
    double theta_opt;
    double h_opt;
    double r_c_max;
    SearchStatus status;
    double residual;
};

/// Maximum-coverage elevation; falls back to a 512-point search over the
/// exact configuration curve when coverage_residual has no root.
CoverageOptimum optimal_theta_coverage(const PropagationModel& model, const LinkBudget& budget);

/// Largest r with outage_dc(r, h) <= epsilon (0 when unattainable).
double coverage_radius_dc(double h, const PropagationModel& model, const LinkBudget& budget);

struct ScalingReport {
    CoverageOptimum a;
    CoverageOptimum b;
    double h_ratio;
    double r_ratio;
    double predicted_ratio;  ///< ((gamma_b/xi_b)/(gamma_a/xi_a))^{1/alpha(theta_a)}
    double exponent_h;       ///< log(h_ratio) / log(snr ratio)
    double exponent_r;
    double inverse_alpha;    ///< 1/alpha(theta_a)
};

/// Compares the coverage optimum of two budgets that share epsilon.
ScalingReport scaling_check(const PropagationModel& model, const LinkBudget& a, const LinkBudget& b);

/// Least-squares slope of log h_opt against log(gamma_u/xi) over budgets
/// obtained by scaling gamma_u of base by each factor.
double scaling_exponent(const PropagationModel& model, const LinkBudget& base, std::span<const double> factors);

}  // namespace a2g

#endif
