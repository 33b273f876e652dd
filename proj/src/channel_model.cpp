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

#include "a2g/channel_model.hpp"

#include "a2g/errors.hpp"

#include <numbers>

namespace a2g {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

void require_angle(double theta, const char* op)
{
    if (!(theta >= 0.0 && theta <= half_pi))
        throw std::domain_error(std::string(op) + ": elevation angle outside [0, pi/2]: " + std::to_string(theta));
}

double logistic_los(double theta, double a2, double b2)
{
    return 1.0 / (1.0 + a2 * std::exp(-b2 * theta));
}

}  // namespace

PropagationModel::PropagationModel(double kappa0, double kappa_half_pi, double alpha0, double alpha_half_pi, double a2,
                                   double b2, AlphaCoefficients coefficients)
    : kappa0_(kappa0),
      kappa_half_pi_(kappa_half_pi),
      alpha0_(alpha0),
      alpha_half_pi_(alpha_half_pi),
      a2_(a2),
      b2_(b2),
      coefficients_(coefficients)
{
    detail::require(std::isfinite(kappa0) && kappa0 > 0.0, "PropagationModel: kappa0 must be > 0");
    detail::require(std::isfinite(kappa_half_pi) && kappa_half_pi >= kappa0,
                    "PropagationModel: kappa_half_pi must be >= kappa0");
    detail::require(std::isfinite(alpha_half_pi) && alpha_half_pi >= 2.0,
                    "PropagationModel: alpha_half_pi must be >= 2");
    detail::require(std::isfinite(alpha0) && alpha0 >= alpha_half_pi,
                    "PropagationModel: alpha0 must be >= alpha_half_pi");
    detail::require(std::isfinite(a2) && a2 > 0.0, "PropagationModel: a2 must be > 0");
    detail::require(std::isfinite(b2) && b2 > 0.0, "PropagationModel: b2 must be > 0");

    const double p0 = logistic_los(0.0, a2, b2);
    const double p90 = logistic_los(half_pi, a2, b2);
    if (coefficients == AlphaCoefficients::exact) {
        a1_ = (alpha_half_pi - alpha0) / (p90 - p0);
        b1_ = alpha0 - a1_ * p0;
    } else {
        a1_ = alpha_half_pi - alpha0;
        b1_ = alpha0;
    }
    b3_ = (2.0 / std::numbers::pi) * std::log(kappa_half_pi / kappa0);
}

PropagationModel PropagationModel::case_study()
{
    // Suburban logistic LoS curve 1/(1 + a exp(-b (theta_deg - a))) with
    // a = 4.88, b = 0.43 rewritten for theta in radians.
    const double a = 4.88, b = 0.43;
    const double a2 = a * std::exp(a * b);
    const double b2 = b * 180.0 / std::numbers::pi;
    return PropagationModel(db_to_linear(5.0), db_to_linear(15.0), 3.5, 2.0, a2, b2);
}

void LinkBudget::validate() const
{
    detail::require(std::isfinite(gamma_u) && gamma_u > 0.0, "LinkBudget: gamma_u must be > 0");
    detail::require(std::isfinite(gamma_r) && gamma_r > 0.0, "LinkBudget: gamma_r must be > 0");
    detail::require(std::isfinite(xi) && xi > 0.0, "LinkBudget: xi must be > 0");
    detail::require(epsilon > 0.0 && epsilon < 1.0, "LinkBudget: epsilon must lie in (0,1)");
}

LinkBudget LinkBudget::from_db(double gamma_u_db, double gamma_r_db, double xi_db, double epsilon)
{
    LinkBudget b{db_to_linear(gamma_u_db), db_to_linear(gamma_r_db), db_to_linear(xi_db), epsilon};
    b.validate();
    return b;
}

LinkBudget LinkBudget::case_study()
{
    return from_db(75.0, 75.0, 2.5, 0.1);
}

Geometry::Geometry(double r_d_, double h_) : r_d(r_d_), h(h_)
{
    detail::require(std::isfinite(r_d) && r_d >= 0.0, "Geometry: r_d must be >= 0");
    detail::require(std::isfinite(h) && h >= 0.0, "Geometry: h must be >= 0");
    detail::require(r_d > 0.0 || h > 0.0, "Geometry: r_d and h cannot both be zero");
}

double Geometry::theta() const noexcept
{
    return std::atan2(h, r_d);
}

double Geometry::length() const noexcept
{
    return std::hypot(r_d, h);
}

double p_los(double theta, const PropagationModel& model)
{
    require_angle(theta, "p_los");
    return logistic_los(theta, model.a2(), model.b2());
}

double rician_factor(double theta, const PropagationModel& model)
{
    require_angle(theta, "rician_factor");
    if (theta == half_pi)
        return model.kappa_half_pi();
    return model.a3() * std::exp(model.b3() * theta);
}

double path_loss_exponent(double theta, const PropagationModel& model)
{
    require_angle(theta, "path_loss_exponent");
    return model.a1() * logistic_los(theta, model.a2(), model.b2()) + model.b1();
}

ChannelDerivatives derivatives(double theta, const PropagationModel& model)
{
    require_angle(theta, "derivatives");
    const double k = rician_factor(theta, model);
    const double k_prime = model.b3() * k;
    const double e = model.a2() * std::exp(-model.b2() * theta);
    const double alpha_prime = model.a1() * model.b2() * e / ((1.0 + e) * (1.0 + e));
    return {k_prime, alpha_prime, k_prime / std::sqrt(2.0 * k)};
}

double rician_fading_cdf(double omega, double k)
{
    detail::require_finite_nonnegative(omega, "rician_fading_cdf: omega");
    detail::require_finite_nonnegative(k, "rician_fading_cdf: k");
    return marcum_q_complement(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * omega));
}

double rician_fading_pdf(double omega, double k)
{
    detail::require_finite_nonnegative(omega, "rician_fading_pdf: omega");
    detail::require_finite_nonnegative(k, "rician_fading_pdf: k");
    const double z = 2.0 * std::sqrt(k * (k + 1.0) * omega);
    // (K+1) e^{-K} e^{-(K+1) w} I0(z) with I0(z) = e^{z} * scaled
    return (k + 1.0) * std::exp(-k - (k + 1.0) * omega + z) * detail::bessel_i0_scaled(z);
}

MarcumArguments a2g_marcum_arguments(double r, double h, const PropagationModel& model, double gamma, double xi)
{
    const double theta = std::atan2(h, r);
    const double ell = std::hypot(r, h);
    const double k = rician_factor(theta, model);
    const double alpha = path_loss_exponent(theta, model);
    return {std::sqrt(2.0 * k), std::sqrt(2.0 * xi * (1.0 + k) * std::pow(ell, alpha) / gamma)};
}

double link_success_probability(double k, double alpha, double ell, double gamma, double xi)
{
    return marcum_q(std::sqrt(2.0 * k), std::sqrt(2.0 * xi * (1.0 + k) * std::pow(ell, alpha) / gamma));
}

double link_outage_probability(double k, double alpha, double ell, double gamma, double xi)
{
    return marcum_q_complement(std::sqrt(2.0 * k), std::sqrt(2.0 * xi * (1.0 + k) * std::pow(ell, alpha) / gamma));
}

double budget_from_physical(double a_db, double p_tx_dbm, double n0_dbm)
{
    return db_to_linear(a_db + p_tx_dbm - n0_dbm);
}

AlphaFit fit_alpha_from_pl_model(double freq_hz, double sigma_los_db, double sigma_nlos_db, double a_db,
                                 std::span<const double> distances)
{
    detail::require(std::isfinite(freq_hz) && freq_hz > 0.0, "fit_alpha_from_pl_model: frequency must be > 0");
    detail::require(!distances.empty(), "fit_alpha_from_pl_model: need at least one distance");
    const double n = static_cast<double>(distances.size());
    AlphaFit fit{0.0, 0.0};
    for (double ell : distances) {
        detail::require(std::isfinite(ell) && ell > 1.0, "fit_alpha_from_pl_model: distances must exceed 1 m");
        const double free_space = 20.0 * std::log10(4.0 * std::numbers::pi * freq_hz * ell / speed_of_light);
        const double pl_los = free_space + sigma_los_db;
        const double pl_nlos = free_space + sigma_nlos_db;
        const double denom = 10.0 * n * std::log10(ell);
        fit.a1 += (pl_los - pl_nlos) / denom;
        fit.offset += (pl_nlos - a_db) / denom;
    }
    return fit;
}

}  // namespace a2g
