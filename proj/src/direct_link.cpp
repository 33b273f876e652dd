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

#include "a2g/direct_link.hpp"

#include "a2g/errors.hpp"
#include "a2g/numerics.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <vector>

namespace a2g {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;
constexpr double theta_lo = 1e-4;
constexpr double theta_hi = half_pi - 1e-4;
constexpr int scan_points = 512;

// First sub-interval of [theta_lo, theta_hi] on which f goes from negative
// to positive. NaN samples are skipped.
std::optional<std::pair<double, double>> rising_crossing(const numerics::ScalarFn& f)
{
    double prev_t = std::numeric_limits<double>::quiet_NaN();
    double prev_f = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < scan_points; ++i) {
        const double t = theta_lo + (theta_hi - theta_lo) * i / (scan_points - 1);
        const double ft = f(t);
        if (std::isnan(ft))
            continue;
        if (!std::isnan(prev_f) && prev_f < 0.0 && ft >= 0.0)
            return std::pair{prev_t, t};
        prev_t = t;
        prev_f = ft;
    }
    return std::nullopt;
}

double lambda_radius(double gamma, double xi, double x, double y, double alpha)
{
    return std::pow(gamma * y * y / (xi * (2.0 + x * x)), 1.0 / alpha);
}

}  // namespace

double outage_dc(const Geometry& geom, const PropagationModel& model, const LinkBudget& budget)
{
    budget.validate();
    const auto [x, y] = a2g_marcum_arguments(geom.r_d, geom.h, model, budget.gamma_u, budget.xi);
    return marcum_q_complement(x, y);
}

double altitude_residual(double theta, double r_d, const PropagationModel& model, const LinkBudget& budget)
{
    const double ell = r_d / std::cos(theta);
    const double k = rician_factor(theta, model);
    const double alpha = path_loss_exponent(theta, model);
    const ChannelDerivatives d = derivatives(theta, model);
    const double kk = d.k_prime / k;
    const double s = std::sqrt(budget.xi / budget.gamma_u * std::pow(ell, alpha));
    return s * (kk + d.alpha_prime * std::log(ell) + alpha * std::tan(theta)) - kk;
}

OptimumAltitude optimal_theta_dc(double r_d, const PropagationModel& model, const LinkBudget& budget)
{
    detail::require(std::isfinite(r_d) && r_d > 0.0, "optimal_theta_dc: r_d must be > 0");
    budget.validate();
    auto f = [&](double t) { return altitude_residual(t, r_d, model, budget); };
    const auto bracket = rising_crossing(f);
    if (!bracket)
        throw convergence_error("optimal_theta_dc: altitude residual has no sign change");
    const auto root = numerics::find_root(f, bracket->first, bracket->second, {1e-15, 1e-11, 200});

    OptimumAltitude out;
    out.theta_opt = root.x;
    out.h_opt = r_d * std::tan(root.x);
    out.outage_at_opt = outage_dc(Geometry(r_d, out.h_opt), model, budget);
    out.residual = root.residual;
    const auto [x, y] = a2g_marcum_arguments(r_d, out.h_opt, model, budget.gamma_u, budget.xi);
    out.k_at_opt = rician_factor(root.x, model);
    out.xy_at_opt = x * y;
    return out;
}

OptimumAltitude optimal_theta_numeric(double r_d, const std::function<double(double)>& outage_of_h)
{
    detail::require(std::isfinite(r_d) && r_d > 0.0, "optimal_theta_numeric: r_d must be > 0");
    const std::vector<double> grid = numerics::log_space(1.0, 50.0 * r_d, 64);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = outage_of_h(grid[i]);
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

    OptimumAltitude out;
    if (numerics::count_local_minima(values) > 1) {
        out.status = SearchStatus::non_unimodal;
        out.h_opt = grid[best];
        out.outage_at_opt = values[best];
    } else {
        const double lo = grid[best == 0 ? 0 : best - 1];
        const double hi = grid[std::min(best + 1, grid.size() - 1)];
        const auto m = numerics::golden_section_minimize(outage_of_h, lo, hi, 1e-5);
        out.h_opt = m.x;
        out.outage_at_opt = m.value;
        if (values[best] < m.value) {
            out.h_opt = grid[best];
            out.outage_at_opt = values[best];
        }
    }
    out.theta_opt = std::atan2(out.h_opt, r_d);
    return out;
}

ConfigSpacePoint config_space_point(double theta_c, const PropagationModel& model, const LinkBudget& budget,
                                    bool use_approx_inverse)
{
    budget.validate();
    const double k = rician_factor(theta_c, model);
    const double alpha = path_loss_exponent(theta_c, model);
    const double x = std::sqrt(2.0 * k);
    const double y = use_approx_inverse ? inv_marcum_q_approx(x, budget.epsilon)
                                        : inv_marcum_q_exact(x, 1.0 - budget.epsilon);
    const double lam = lambda_radius(budget.gamma_u, budget.xi, x, y, alpha);
    const double r = theta_c == half_pi ? 0.0 : lam * std::cos(theta_c);
    return {theta_c, lam, lam * std::sin(theta_c), r, x, y};
}

double coverage_residual(double theta, const PropagationModel& model, const LinkBudget& budget)
{
    const double q = inv_gaussian_q(budget.epsilon);
    const double k = rician_factor(theta, model);
    const double x = std::sqrt(2.0 * k);
    if (x <= q)
        return std::numeric_limits<double>::quiet_NaN();
    const double alpha = path_loss_exponent(theta, model);
    const ChannelDerivatives d = derivatives(theta, model);
    const double ratio = (x - q) / x;
    const double ln_lambda = std::log(budget.gamma_u * ratio * ratio / budget.xi) / alpha;
    return alpha * std::tan(theta) + d.alpha_prime * ln_lambda - 2.0 * d.x_prime * q / (x * (x - q));
}

CoverageOptimum optimal_theta_coverage(const PropagationModel& model, const LinkBudget& budget)
{
    budget.validate();
    auto f = [&](double t) { return coverage_residual(t, model, budget); };
    if (const auto bracket = rising_crossing(f)) {
        const auto root = numerics::find_root(f, bracket->first, bracket->second, {1e-15, 1e-11, 200});
        const ConfigSpacePoint p = config_space_point(root.x, model, budget);
        return {root.x, p.h, p.r_c, SearchStatus::ok, root.residual};
    }

    // Dense search of the exact curve, polished by golden section.
    auto neg_r = [&](double t) { return -config_space_point(t, model, budget).r_c; };
    const std::vector<double> grid = numerics::lin_space(0.0, half_pi, scan_points);
    std::size_t best = 0;
    double best_v = neg_r(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (const double v = neg_r(grid[i]); v < best_v) {
            best_v = v;
            best = i;
        }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const auto m = numerics::golden_section_minimize(neg_r, lo, hi, 0.0, 1e-10);
    const ConfigSpacePoint p = config_space_point(m.x, model, budget);
    return {m.x, p.h, p.r_c, SearchStatus::grid_fallback, std::numeric_limits<double>::quiet_NaN()};
}

double coverage_radius_dc(double h, const PropagationModel& model, const LinkBudget& budget)
{
    detail::require_finite_nonnegative(h, "coverage_radius_dc: h");
    budget.validate();
    auto f = [&](double r) { return outage_dc(Geometry(r, h), model, budget) - budget.epsilon; };
    const double lo = h > 0.0 ? 0.0 : 1e-9;
    if (f(lo) > 0.0)
        return 0.0;
    double hi = std::max(h, 1.0);
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e9)
            throw convergence_error("coverage_radius_dc: outage never reaches epsilon");
    }
    return numerics::find_root(f, lo, hi, {1e-10 * hi, 1e-13, 300}).x;
}

ScalingReport scaling_check(const PropagationModel& model, const LinkBudget& a, const LinkBudget& b)
{
    detail::require(a.epsilon == b.epsilon, "scaling_check: budgets must share epsilon");
    ScalingReport rep;
    rep.a = optimal_theta_coverage(model, a);
    rep.b = optimal_theta_coverage(model, b);
    const double snr_ratio = (b.gamma_u / b.xi) / (a.gamma_u / a.xi);
    rep.h_ratio = rep.b.h_opt / rep.a.h_opt;
    rep.r_ratio = rep.b.r_c_max / rep.a.r_c_max;
    rep.inverse_alpha = 1.0 / path_loss_exponent(rep.a.theta_opt, model);
    rep.predicted_ratio = std::pow(snr_ratio, rep.inverse_alpha);
    const double ls = std::log(snr_ratio);
    rep.exponent_h = ls == 0.0 ? 0.0 : std::log(rep.h_ratio) / ls;
    rep.exponent_r = ls == 0.0 ? 0.0 : std::log(rep.r_ratio) / ls;
    return rep;
}

double scaling_exponent(const PropagationModel& model, const LinkBudget& base, std::span<const double> factors)
{
    detail::require(factors.size() >= 2, "scaling_exponent: need at least two factors");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double f : factors) {
        LinkBudget b = base;
        b.gamma_u *= f;
        const double lx = std::log(b.gamma_u / b.xi);
        const double ly = std::log(optimal_theta_coverage(model, b).h_opt);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(factors.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace a2g
