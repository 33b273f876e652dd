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

// Elevation-angle dependent air-to-ground propagation.
//
// The Rician factor grows exponentially from kappa0 (ground-to-ground) to
// kappa_half_pi (UAV overhead); the path-loss exponent follows the logistic
// line-of-sight probability between alpha0 and alpha_half_pi. All inputs are
// linear; dB helpers are provided for the scenario layer.

#ifndef A2G_CHANNEL_MODEL_HPP
#define A2G_CHANNEL_MODEL_HPP

#include "a2g/special_functions.hpp"

#include <cmath>
#include <span>

namespace a2g {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// How the logistic path-loss coefficients are derived from the endpoints.
enum class AlphaCoefficients {
    exact,       ///< a1 = (alpha_pi2 - alpha0) / (P_LoS(pi/2) - P_LoS(0)), b1 = alpha0 - a1 P_LoS(0)
    approximate  ///< a1 = alpha_pi2 - alpha0, b1 = alpha0 (P_LoS(0) ~ 0, P_LoS(pi/2) ~ 1)
};

class PropagationModel {
public:
    /// Rician factors are linear; a2 is dimensionless and b2 is per radian.
    PropagationModel(double kappa0, double kappa_half_pi, double alpha0, double alpha_half_pi, double a2, double b2,
                     AlphaCoefficients coefficients = AlphaCoefficients::exact);

    /// Default environment used throughout tests and the bundled scenario:
    /// kappa0 = 5 dB, kappa_pi/2 = 15 dB, alpha0 = 3.5, alpha_pi/2 = 2 and a
    /// suburban logistic line-of-sight curve (a2 ~ 39.8, b2 ~ 24.6 / rad).
    static PropagationModel case_study();

    double kappa0() const noexcept { return kappa0_; }
    double kappa_half_pi() const noexcept { return kappa_half_pi_; }
    double alpha0() const noexcept { return alpha0_; }
    double alpha_half_pi() const noexcept { return alpha_half_pi_; }
    double a2() const noexcept { return a2_; }
    double b2() const noexcept { return b2_; }
    AlphaCoefficients coefficients() const noexcept { return coefficients_; }

    double a1() const noexcept { return a1_; }
    double b1() const noexcept { return b1_; }
    double a3() const noexcept { return kappa0_; }
    double b3() const noexcept { return b3_; }

    bool operator==(const PropagationModel&) const = default;

private:
    double kappa0_;
    double kappa_half_pi_;
    double alpha0_;
    double alpha_half_pi_;
    double a2_;
    double b2_;
    AlphaCoefficients coefficients_;
    double a1_;
    double b1_;
    double b3_;
};

/// Transmit-SNR budgets (A P / N0), SNR threshold and target outage, linear.
struct LinkBudget {
    double gamma_u;
    double gamma_r;
    double xi;
    double epsilon;

    /// Throws std::domain_error on any invariant violation.
    void validate() const;

    static LinkBudget from_db(double gamma_u_db, double gamma_r_db, double xi_db, double epsilon);
    /// gamma = 75 dB for both transmitters, xi = 2.5 dB, epsilon = 0.1.
    static LinkBudget case_study();

    bool operator==(const LinkBudget&) const = default;
};

/// UAV ground-projection to ground node distance and altitude.
struct Geometry {
    double r_d;
    double h;

    Geometry(double r_d, double h);
    double theta() const noexcept;   ///< elevation angle atan2(h, r_d)
    double length() const noexcept;  ///< slant range hypot(r_d, h)
};

double p_los(double theta, const PropagationModel& model);
double rician_factor(double theta, const PropagationModel& model);
double path_loss_exponent(double theta, const PropagationModel& model);

struct ChannelDerivatives {
    double k_prime;      ///< dK/dtheta
    double alpha_prime;  ///< dalpha/dtheta
    double x_prime;      ///< d sqrt(2K)/dtheta = K' / sqrt(2K)
};
ChannelDerivatives derivatives(double theta, const PropagationModel& model);

/// CDF of unit-mean Rician fading power with factor k.
double rician_fading_cdf(double omega, double k);
/// Noncentral chi-square density of unit-mean Rician fading power.
double rician_fading_pdf(double omega, double k);

/// Probability that a link with Rician factor k, exponent alpha and length
/// ell supports SNR above xi given budget gamma:
/// Q1(sqrt(2k), sqrt(2 xi (1+k) ell^alpha / gamma)).
double link_success_probability(double k, double alpha, double ell, double gamma, double xi);
/// 1 - link_success_probability, accurate when small.
double link_outage_probability(double k, double alpha, double ell, double gamma, double xi);

/// Marcum arguments of the air-to-ground link at (r, h).
struct MarcumArguments {
    double x;
    double y;
};
MarcumArguments a2g_marcum_arguments(double r, double h, const PropagationModel& model, double gamma, double xi);

/// Linear budget 10^((A_dB + P_dBm - N0_dBm)/10).
double budget_from_physical(double a_db, double p_tx_dbm, double n0_dbm);

/// Path-loss exponent regression against a LoS/NLoS excess-loss model with
/// free-space core 20 log10(4 pi f l / c). alpha(theta) ~ a1 P_LoS(theta) + offset.
struct AlphaFit {
    double a1;
    double offset;
};
AlphaFit fit_alpha_from_pl_model(double freq_hz, double sigma_los_db, double sigma_nlos_db, double a_db,
                                 std::span<const double> distances);

inline constexpr double speed_of_light = 299792458.0;

}  // namespace a2g

#endif
