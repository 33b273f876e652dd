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

#include "a2g/commands.hpp"

#include "a2g/direct_link.hpp"
#include "a2g/errors.hpp"
#include "a2g/monte_carlo.hpp"
#include "a2g/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace a2g {

namespace {

void require_variable(const Scenario& sc, const char* expected, const char* command)
{
    if (sc.sweep.variable != expected)
        throw ScenarioError(std::string(command) + ": sweep.variable must be '" + expected + "', got '" +
                            sc.sweep.variable + "'");
}

class Row {
public:
    explicit Row(std::ostream& out) : out_(out) {}
    Row& operator<<(double v) { return put(csv_number(v)); }
    Row& operator<<(const std::string& s) { return put(s); }
    Row& operator<<(const char* s) { return put(s); }
    ~Row() { out_ << '\n'; }

private:
    Row& put(const std::string& s)
    {
        if (!first_)
            out_ << ',';
        first_ = false;
        out_ << s;
        return *this;
    }
    std::ostream& out_;
    bool first_ = true;
};

double nan()
{
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

std::string csv_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double resolve_disk(const Scenario& sc, Strategy s, double h)
{
    if (sc.disk)
        return *sc.disk;
    const Strategy relay = s == Strategy::rc ? Strategy::rc : Strategy::cc;
    return std::max(coverage_radius(relay, h, sc.lambda, sc.propagation, sc.budget).radius, 1.0);
}

void cmd_outage_curve(const Scenario& sc, const CommandOptions& opt, std::ostream& out)
{
    require_variable(sc, "h", "outage-curve");
    Row(out) << "h" << "outage_dc" << "outage_rc" << "outage_rc_lb" << "outage_cc";
    for (double h : sc.sweep.values()) {
        const RelayField field{sc.lambda, resolve_disk(sc, opt.strategy, h)};
        const double dc = outage_dc(Geometry(sc.r_d, h), sc.propagation, sc.budget);
        const double rc = outage_rc(sc.r_d, h, field, sc.propagation, sc.budget);
        const double lb = outage_rc_lower_bound(sc.r_d, field, sc.propagation, sc.budget);
        Row(out) << h << dc << rc << lb << dc * rc;
    }
}

void cmd_optimal_altitude(const Scenario& sc, const CommandOptions& opt, std::ostream& out)
{
    require_variable(sc, "r_d", "optimal-altitude");
    Row(out) << "r_d" << "theta_opt_analytic" << "theta_opt_numeric" << "h_opt";
    for (double r_d : sc.sweep.values()) {
        double analytic = nan();
        try {
            analytic = optimal_theta_dc(r_d, sc.propagation, sc.budget).theta_opt;
        } catch (const convergence_error&) {
        }
        auto f = [&](double h) {
            if (opt.strategy == Strategy::dc)
                return outage_dc(Geometry(r_d, h), sc.propagation, sc.budget);
            const RelayField field{sc.lambda, resolve_disk(sc, opt.strategy, h)};
            QuadratureOptions q;
            q.verify = false;
            return outage(opt.strategy, r_d, h, field, sc.propagation, sc.budget, q);
        };
        const OptimumAltitude num = optimal_theta_numeric(r_d, f);
        Row(out) << r_d << analytic << num.theta_opt << num.h_opt;
    }
}

void cmd_config_space(const Scenario& sc, const CommandOptions& opt, std::ostream& out)
{
    require_variable(sc, "theta", "config-space");
    const std::vector<double> xis = sc.config_xi.empty() ? std::vector<double>{sc.budget.xi} : sc.config_xi;
    Row(out) << "xi" << "theta_c" << "r_c" << "h";
    for (double xi : xis) {
        LinkBudget b = sc.budget;
        b.xi = xi;
        for (double theta : sc.sweep.values()) {
            const ConfigSpacePoint p =
                config_space_point(opt.strategy, theta, sc.lambda, sc.disk, sc.propagation, b, opt.approx_inverse);
            Row(out) << xi << theta << p.r_c << p.h;
        }
    }
}

void cmd_power_sweep(const Scenario& sc, const CommandOptions& opt, std::ostream& out)
{
    require_variable(sc, "h", "power-sweep");
    Row(out) << "h" << "rho" << "r_c" << "is_optimum";
    const auto rhos = numerics::lin_space(rho_floor, rho_ceiling, sc.rho_points);
    for (double h : sc.sweep.values())
        for (double rho : rhos)
            Row(out) << h << rho
                     << coverage_at_split(opt.strategy, h, rho, sc.total_gamma, sc.lambda, sc.disk, sc.propagation,
                                          sc.budget)
                     << "0";
    const JointOptimum j = joint_optimum(opt.strategy, sc.total_gamma, sc.lambda, sc.disk, sc.propagation, sc.budget,
                                         std::max(sc.sweep.min, 1.0), sc.sweep.max);
    Row(out) << j.h_opt << j.rho_opt << j.r_c_max << "1";
}

ValidationSummary cmd_validate(const Scenario& sc, std::ostream& out)
{
    struct Point {
        double r_d, h;
        double analytic[3];
        MonteCarloEstimate mc[3];
    };
    std::vector<Point> points;
    const SimulationOptions so{sc.mc.trials, sc.mc.seed, sc.mc.threads};
    for (double r_d : sc.validate_r_d)
        for (double h : sc.validate_h) {
            const RelayField field{sc.lambda, resolve_disk(sc, Strategy::cc, h)};
            Point p{r_d, h, {}, {}};
            const double dc = outage_dc(Geometry(r_d, h), sc.propagation, sc.budget);
            const double rc = outage_rc(r_d, h, field, sc.propagation, sc.budget);
            p.analytic[0] = dc;
            p.analytic[1] = rc;
            p.analytic[2] = dc * rc;
            const SharedOutcome o = simulate_shared(r_d, h, field, sc.propagation, sc.budget, so);
            p.mc[0] = o.dc;
            p.mc[1] = o.rc;
            p.mc[2] = o.cc;
            points.push_back(p);
        }

    ValidationSummary sum;
    Row(out) << "strategy" << "r_d" << "h" << "analytic" << "mc" << "std_err" << "z_score";
    const Strategy order[3] = {Strategy::dc, Strategy::rc, Strategy::cc};
    for (int k = 0; k < 3; ++k)
        for (const Point& p : points) {
            const double a = p.analytic[k];
            const double m = p.mc[k].p_hat;
            // Standard error under the analytic value: defined even when the
            // estimate itself sits at 0 or 1.
            const double se = std::sqrt(a * (1.0 - a) / static_cast<double>(sc.mc.trials));
            double z = 0.0;
            if (se > 0.0)
                z = (m - a) / se;
            else if (m != a)
                z = std::copysign(std::numeric_limits<double>::infinity(), m - a);
            ++sum.rows;
            sum.max_abs_z = std::max(sum.max_abs_z, std::abs(z));
            if (std::abs(z) > 5.0)
                ++sum.hard_failures;
            Row(out) << to_string(order[k]) << p.r_d << p.h << a << m << p.mc[k].std_err << z;
        }
    return sum;
}

AlphaFit cmd_fit_alpha(const FitAlphaInput& in, std::ostream& out)
{
    detail::require(in.points >= 1, "fit-alpha: need at least one distance");
    detail::require(in.d_min > 1.0 && in.d_max >= in.d_min, "fit-alpha: need 1 < d_min <= d_max");
    const auto d = in.points == 1 ? std::vector<double>{in.d_min} : numerics::log_space(in.d_min, in.d_max, in.points);
    const AlphaFit fit = fit_alpha_from_pl_model(in.freq_hz, in.sigma_los_db, in.sigma_nlos_db, in.a_db, d);
    Row(out) << "a1" << "offset";
    Row(out) << fit.a1 << fit.offset;
    return fit;
}

}  // namespace a2g
