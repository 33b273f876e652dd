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

#include "a2g/relay_network.hpp"

#include "a2g/errors.hpp"
#include "a2g/numerics.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

namespace a2g {

namespace {

constexpr double pi = std::numbers::pi;

// Second-hop success beyond this distance from D is below reach_probability
// and treated as zero.
constexpr double reach_probability = 1e-17;

// Second-hop success Q_RD(l) depends on the relay-destination distance
// only, so it is tabulated once per budget as a cubic Hermite interpolant
// on a uniform grid over [0, reach]; the 2-D integrals then cost a table
// lookup per node instead of a Marcum evaluation. The interpolation error
// is below 1e-12 (checked in the unit tests against direct evaluation).
class SecondHop {
public:
    static constexpr int intervals = 4096;

    SecondHop(const PropagationModel& model, const LinkBudget& budget)
        : x_(std::sqrt(2.0 * model.kappa0())),
          scale_(std::sqrt(2.0 * budget.xi * (1.0 + model.kappa0()) / budget.gamma_r)),
          half_alpha_(0.5 * model.alpha0())
    {
        const double y = inv_marcum_q_exact(x_, reach_probability);
        reach_ = std::pow(y / scale_, 1.0 / half_alpha_);
        step_ = reach_ / intervals;
        value_.resize(intervals + 1);
        slope_.resize(intervals + 1);
        for (int i = 0; i <= intervals; ++i) {
            const double ell = i * step_;
            value_[i] = direct(ell);
            slope_[i] = derivative(ell) * step_;
        }
    }

    double reach() const noexcept { return reach_; }

    double direct(double ell) const { return marcum_q(x_, scale_ * std::pow(ell, half_alpha_)); }

    double success(double ell) const
    {
        if (ell >= reach_)
            return 0.0;
        const double u = ell / step_;
        const int i = std::min(static_cast<int>(u), intervals - 1);
        const double t = u - i;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * value_[i] + (t3 - 2 * t2 + t) * slope_[i] + (-2 * t3 + 3 * t2) * value_[i + 1] +
               (t3 - t2) * slope_[i + 1];
    }

    bool matches(const PropagationModel& model, const LinkBudget& budget) const
    {
        return x_ == std::sqrt(2.0 * model.kappa0()) && half_alpha_ == 0.5 * model.alpha0() &&
               scale_ == std::sqrt(2.0 * budget.xi * (1.0 + model.kappa0()) / budget.gamma_r);
    }

private:
    // dQ1(x, y)/dy = -y exp(-(x - y)^2 / 2) [e^{-xy} I0(xy)], chained with dy/dl.
    double derivative(double ell) const
    {
        if (ell == 0.0)
            return 0.0;
        const double y = scale_ * std::pow(ell, half_alpha_);
        const double dq_dy = -y * std::exp(-0.5 * (x_ - y) * (x_ - y)) * detail::bessel_i0_scaled(x_ * y);
        return dq_dy * scale_ * half_alpha_ * std::pow(ell, half_alpha_ - 1.0);
    }

    double x_;
    double scale_;
    double half_alpha_;
    double reach_ = 0.0;
    double step_ = 0.0;
    std::vector<double> value_;
    std::vector<double> slope_;
};

// Most callers sweep r_d or h at a fixed budget, so the last table per
// thread is reused.
const SecondHop& second_hop_table(const PropagationModel& model, const LinkBudget& budget)
{
    thread_local std::unique_ptr<SecondHop> cached;
    if (!cached || !cached->matches(model, budget))
        cached = std::make_unique<SecondHop>(model, budget);
    return *cached;
}

double first_hop_success(double r, double h, const PropagationModel& model, const LinkBudget& budget)
{
    if (r == 0.0 && h == 0.0)
        return 1.0;
    const auto [x, y] = a2g_marcum_arguments(r, h, model, budget.gamma_u, budget.xi);
    return marcum_q(x, y);
}

template <typename F>
double composite_gl(F&& f, double a, double b, int panels, int order)
{
    double sum = 0.0;
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p)
        sum += numerics::integrate_gl(f, a + p * w, a + (p + 1) * w, order);
    return sum;
}

bool rules_agree(double v, double c, double rel_tol, double abs_floor)
{
    return std::abs(v - c) <= rel_tol * std::abs(c) + abs_floor;
}

// Upper polar-angle limit of the set {phi in [0, pi] : l_RD(r, phi) < reach}.
double phi_limit(double r, double r_d, double reach)
{
    if (r + r_d <= reach)
        return pi;
    if (r == 0.0 || r_d == 0.0)
        return 0.0;
    const double c = (r * r + r_d * r_d - reach * reach) / (2.0 * r * r_d);
    if (c >= 1.0)
        return 0.0;
    if (c <= -1.0)
        return pi;
    return std::acos(c);
}

// int_0^{2 pi} int_0^R r w(r) Q_RD(l_RD) dr dphi with w = Q_UR or w = 1,
// restricted to the neighbourhood of D where Q_RD is not negligible. The
// radial range is split at r_d where the integrand has its ridge.
double near_destination_integral(double r_d, double h, const RelayField& field, const PropagationModel& model,
                                 const LinkBudget& budget, const SecondHop& hop, bool first_hop, int panels,
                                 int order)
{
    const double ra = std::max(0.0, r_d - hop.reach());
    const double rb = std::min(field.disk_radius, r_d + hop.reach());
    if (!(rb > ra))
        return 0.0;
    std::vector<double> cuts{ra};
    if (r_d > ra && r_d < rb)
        cuts.push_back(r_d);
    cuts.push_back(rb);

    auto radial = [&](double r) {
        const double phi_max = phi_limit(r, r_d, hop.reach());
        if (phi_max <= 0.0)
            return 0.0;
        const double w = first_hop ? first_hop_success(r, h, model, budget) : 1.0;
        if (w == 0.0)
            return 0.0;
        auto angular = [&](double phi) {
            const double l2 = r * r + r_d * r_d - 2.0 * r * r_d * std::cos(phi);
            return hop.success(std::sqrt(std::max(l2, 0.0)));
        };
        return r * w * numerics::integrate_gl(angular, 0.0, phi_max, order);
    };
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        sum += composite_gl(radial, cuts[i], cuts[i + 1], panels, order);
    return 2.0 * sum;
}

template <typename Eval>
QuadratureReport verified(Eval&& eval, const QuadratureOptions& opts, bool always_verify, double abs_floor)
{
    QuadratureReport rep;
    if (!(opts.verify || always_verify)) {
        rep.value = eval(1, opts.order);
        rep.check_value = rep.value;
        return rep;
    }
    rep.verified = true;
    for (int panels = 1;; panels *= 2) {
        rep.panels = panels;
        rep.value = eval(panels, opts.order);
        rep.check_value = eval(panels, opts.check_order);
        if (rules_agree(rep.value, rep.check_value, opts.rel_tol, abs_floor))
            return rep;
        if (panels >= opts.max_panels) {
            rep.warned = true;
            return rep;
        }
    }
}

void validate_inputs(double r_d, double h, const RelayField& field, const LinkBudget& budget)
{
    detail::require_finite_nonnegative(r_d, "relay_network: r_d");
    detail::require_finite_nonnegative(h, "relay_network: h");
    field.validate();
    budget.validate();
}

}  // namespace

void RelayField::validate() const
{
    detail::require(std::isfinite(lambda) && lambda >= 0.0, "RelayField: lambda must be >= 0");
    detail::require(std::isfinite(disk_radius) && disk_radius > 0.0, "RelayField: disk_radius must be > 0");
}

void PowerAllocation::validate() const
{
    detail::require(rho > 0.0 && rho <= 1.0, "PowerAllocation: rho must lie in (0, 1]");
    detail::require(std::isfinite(total_budget_gamma) && total_budget_gamma > 0.0,
                    "PowerAllocation: total budget must be > 0");
}

LinkBudget PowerAllocation::apply(const LinkBudget& base) const
{
    validate();
    LinkBudget b = base;
    b.gamma_u = gamma_u();
    b.gamma_r = gamma_r();
    return b;
}

const char* to_string(Strategy s) noexcept
{
    switch (s) {
    case Strategy::dc: return "dc";
    case Strategy::rc: return "rc";
    case Strategy::cc: return "cc";
    }
    return "?";
}

Strategy parse_strategy(const std::string& s)
{
    if (s == "dc")
        return Strategy::dc;
    if (s == "rc")
        return Strategy::rc;
    if (s == "cc")
        return Strategy::cc;
    throw std::domain_error("unknown strategy '" + s + "' (expected dc, rc or cc)");
}

QuadratureReport psi1_report(double h, const RelayField& field, const PropagationModel& model,
                             const LinkBudget& budget, const QuadratureOptions& opts)
{
    validate_inputs(0.0, h, field, budget);
    auto integrand = [&](double r) { return r * first_hop_success(r, h, model, budget); };
    auto eval = [&](int panels, int order) {
        return 2.0 * pi * composite_gl(integrand, 0.0, field.disk_radius, panels, order);
    };
    return verified(eval, opts, true, 1e-12 * field.disk_radius * field.disk_radius);
}

double psi1(double h, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
            const QuadratureOptions& opts)
{
    return psi1_report(h, field, model, budget, opts).value;
}

QuadratureReport relay_success_area_report(double r_d, double h, const RelayField& field,
                                           const PropagationModel& model, const LinkBudget& budget,
                                           const QuadratureOptions& opts)
{
    validate_inputs(r_d, h, field, budget);
    const SecondHop& hop = second_hop_table(model, budget);
    auto eval = [&](int panels, int order) {
        return near_destination_integral(r_d, h, field, model, budget, hop, true, panels, order);
    };
    return verified(eval, opts, false, 1e-9);
}

double relay_success_area(double r_d, double h, const RelayField& field, const PropagationModel& model,
                          const LinkBudget& budget, const QuadratureOptions& opts)
{
    return relay_success_area_report(r_d, h, field, model, budget, opts).value;
}

double psi2(double r_d, double h, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
            const QuadratureOptions& opts)
{
    const double p1 = psi1(h, field, model, budget, opts);
    return std::clamp(p1 - relay_success_area(r_d, h, field, model, budget, opts), 0.0, p1);
}

double second_hop_area(double r_d, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
                       const QuadratureOptions& opts)
{
    validate_inputs(r_d, 0.0, field, budget);
    const SecondHop& hop = second_hop_table(model, budget);
    auto eval = [&](int panels, int order) {
        return near_destination_integral(r_d, 0.0, field, model, budget, hop, false, panels, order);
    };
    return verified(eval, opts, false, 1e-9).value;
}

double psi02(double r_d, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
             const QuadratureOptions& opts)
{
    const double area = pi * field.disk_radius * field.disk_radius;
    return std::clamp(area - second_hop_area(r_d, field, model, budget, opts), 0.0, area);
}

double outage_rc(double r_d, double h, const RelayField& field, const PropagationModel& model,
                 const LinkBudget& budget, const QuadratureOptions& opts)
{
    validate_inputs(r_d, h, field, budget);
    if (field.lambda == 0.0)
        return 1.0;
    return std::exp(-field.lambda * relay_success_area(r_d, h, field, model, budget, opts));
}

double outage_rc_lower_bound(double r_d, const RelayField& field, const PropagationModel& model,
                             const LinkBudget& budget, const QuadratureOptions& opts)
{
    validate_inputs(r_d, 0.0, field, budget);
    if (field.lambda == 0.0)
        return 1.0;
    return std::exp(-field.lambda * second_hop_area(r_d, field, model, budget, opts));
}

double outage_cc(double r_d, double h, const RelayField& field, const PropagationModel& model,
                 const LinkBudget& budget, const QuadratureOptions& opts)
{
    return outage_dc(Geometry(r_d, h), model, budget) * outage_rc(r_d, h, field, model, budget, opts);
}

double outage(Strategy s, double r_d, double h, const RelayField& field, const PropagationModel& model,
              const LinkBudget& budget, const QuadratureOptions& opts)
{
    switch (s) {
    case Strategy::dc: return outage_dc(Geometry(r_d, h), model, budget);
    case Strategy::rc: return outage_rc(r_d, h, field, model, budget, opts);
    case Strategy::cc: return outage_cc(r_d, h, field, model, budget, opts);
    }
    return 1.0;
}

double coverage_radius_fixed_disk(Strategy s, double h, const RelayField& field, const PropagationModel& model,
                                  const LinkBudget& budget, const QuadratureOptions& opts)
{
    if (s == Strategy::dc)
        return coverage_radius_dc(h, model, budget);
    validate_inputs(0.0, h, field, budget);
    if (s == Strategy::rc && field.lambda == 0.0)
        return 0.0;

    // Work with log outage: the relaying factor is exp(-lambda area).
    const double log_eps = std::log(budget.epsilon);
    auto g = [&](double r) {
        double lo = -field.lambda * relay_success_area(r, h, field, model, budget, opts);
        if (s == Strategy::cc) {
            const double dc = outage_dc(Geometry(r, h), model, budget);
            lo += dc > 0.0 ? std::log(dc) : -std::numeric_limits<double>::infinity();
        }
        return lo - log_eps;
    };
    const double lo = h > 0.0 ? 0.0 : 1e-6;
    if (g(lo) > 0.0)
        return 0.0;
    double hi = std::max({field.disk_radius, h, 100.0});
    while (g(hi) <= 0.0) {
        hi *= 1.5;
        if (hi > 1e8)
            throw convergence_error("coverage_radius_fixed_disk: outage never reaches epsilon");
    }
    return numerics::find_root(g, lo, hi, {1e-4, 1e-10, 300}).x;
}

namespace {

// Nearest root of G to r0 on the side where G(r0) points: outwards while
// G < 0, inwards while G >= 0. nullopt when the inward search drops below
// 1 m. Roots are polished to 1e-4 m.
std::optional<double> nearest_root(const numerics::ScalarFn& G, double r0)
{
    constexpr double grow = 1.25;
    double lo, hi;
    if (G(r0) < 0.0) {
        lo = r0;
        hi = r0 * grow;
        while (G(hi) < 0.0) {
            lo = hi;
            hi *= grow;
            if (hi > 1e8)
                throw convergence_error("outage never reaches epsilon within 1e8 m");
        }
    } else {
        hi = r0;
        lo = r0 / grow;
        while (G(lo) >= 0.0) {
            hi = lo;
            lo /= grow;
            if (lo < 1.0)
                return std::nullopt;
        }
    }
    return numerics::find_root(G, lo, hi, {1e-4, 1e-10, 300}).x;
}

}  // namespace

CoverageResult coverage_radius(Strategy s, double h, double lambda, const PropagationModel& model,
                               const LinkBudget& budget, const QuadratureOptions& opts)
{
    CoverageResult res;
    const double r_dc = coverage_radius_dc(h, model, budget);
    if (s == Strategy::dc) {
        res.radius = r_dc;
        return res;
    }
    if (s == Strategy::rc && lambda == 0.0) {
        res.radius = 0.0;
        return res;
    }

    // The map T(r) = root_r'[outage(r', h; disk = r) = eps] is increasing, so
    // iterating it from r0 converges monotonically to the nearest fixed point
    // in the direction of T(r0) - r0. Its slope approaches one near that
    // point (relays just inside the disk edge matter as much as D's own
    // position), which makes plain iteration crawl. The same limit is the
    // nearest root of G(r) = ln outage(r, h; disk = r) - ln eps on that side
    // of r0, found here by bracketing outwards and a bracketed solve.
    const double log_eps = std::log(budget.epsilon);
    int evaluations = 0;
    auto G = [&](double r) {
        ++evaluations;
        const RelayField f{lambda, r};
        double lo = -lambda * relay_success_area(r, h, f, model, budget, opts);
        if (s == Strategy::cc) {
            const double dc = outage_dc(Geometry(r, h), model, budget);
            lo += dc > 0.0 ? std::log(dc) : -std::numeric_limits<double>::infinity();
        }
        return lo - log_eps;
    };

    const double r0 = r_dc > 1.0 ? r_dc : std::max(h, 100.0);
    const auto root = nearest_root(G, r0);
    if (!root) {
        res.radius = 0.0;
        res.iterations = evaluations;
        return res;
    }
    res.radius = *root;

    // One step of the original map confirms the fixed point.
    const double next = coverage_radius_fixed_disk(s, h, RelayField{lambda, res.radius}, model, budget, opts);
    res.iterations = evaluations;
    res.converged = std::abs(next - res.radius) < 0.5;
    res.oscillating = false;
    return res;
}

CoverageResult coverage(Strategy s, double h, double lambda, DiskMode disk, const PropagationModel& model,
                        const LinkBudget& budget, const QuadratureOptions& opts)
{
    if (!disk)
        return coverage_radius(s, h, lambda, model, budget, opts);
    CoverageResult res;
    res.radius = coverage_radius_fixed_disk(s, h, RelayField{lambda, *disk}, model, budget, opts);
    res.iterations = 1;
    return res;
}

ConfigSpacePoint config_space_point(Strategy s, double theta_c, double lambda, DiskMode disk,
                                    const PropagationModel& model, const LinkBudget& budget, bool use_approx_inverse,
                                    const QuadratureOptions& opts)
{
    const ConfigSpacePoint direct = config_space_point(theta_c, model, budget, use_approx_inverse);
    if (s == Strategy::dc)
        return direct;
    const double c = theta_c == std::numbers::pi / 2 ? 0.0 : std::cos(theta_c);
    const double sn = std::sin(theta_c);
    const double log_eps = std::log(budget.epsilon);
    auto G = [&](double lam) {
        const double r = lam * c, h = lam * sn;
        const RelayField f{lambda, disk ? *disk : std::max(r, 1.0)};
        const double o = outage(s, r, h, f, model, budget, opts);
        return (o > 0.0 ? std::log(o) : -std::numeric_limits<double>::infinity()) - log_eps;
    };
    ConfigSpacePoint p = direct;
    const auto root = nearest_root(G, std::max(direct.lambda_radius, 1.0));
    p.lambda_radius = root.value_or(0.0);
    p.h = p.lambda_radius * sn;
    p.r_c = p.lambda_radius * c;
    return p;
}

namespace {

QuadratureOptions search_options()
{
    QuadratureOptions o;
    o.verify = false;
    return o;
}

}  // namespace

double coverage_at_split(Strategy s, double h, double rho, double total, double lambda, DiskMode disk,
                         const PropagationModel& model, const LinkBudget& base)
{
    const LinkBudget b = PowerAllocation{rho, total}.apply(base);
    return coverage(s, h, lambda, disk, model, b, search_options()).radius;
}

PowerOptimum optimize_power_allocation(Strategy s, double h, double total, double lambda, DiskMode disk,
                                       const PropagationModel& model, const LinkBudget& base)
{
    auto neg = [&](double rho) { return -coverage_at_split(s, h, rho, total, lambda, disk, model, base); };
    const std::vector<double> grid = numerics::lin_space(rho_floor, rho_ceiling, 8);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = neg(grid[i]);
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());

    PowerOptimum out;
    if (numerics::count_local_minima(values) > 1) {
        out.status = SearchStatus::non_unimodal;
        out.rho_opt = grid[best];
        out.r_c = -values[best];
        return out;
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    const auto m = numerics::golden_section_minimize(neg, lo, hi, 0.0, 1e-3);
    out.rho_opt = m.x;
    out.r_c = -m.value;
    if (values[best] < m.value) {
        out.rho_opt = grid[best];
        out.r_c = -values[best];
    }
    return out;
}

JointOptimum joint_optimum(Strategy s, double total, double lambda, DiskMode disk, const PropagationModel& model,
                           const LinkBudget& base, double h_lo, double h_hi)
{
    detail::require(h_lo > 0.0 && h_hi > h_lo, "joint_optimum: need 0 < h_lo < h_hi");
    auto inner = [&](double h) {
        if (s == Strategy::dc) {
            LinkBudget b = base;
            b.gamma_u = total;
            return PowerOptimum{1.0, coverage_radius_dc(h, model, b), SearchStatus::ok};
        }
        return optimize_power_allocation(s, h, total, lambda, disk, model, base);
    };

    const std::vector<double> grid = numerics::log_space(h_lo, h_hi, 10);
    std::vector<double> values(grid.size());
    std::vector<PowerOptimum> opt(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        opt[i] = inner(grid[i]);
        values[i] = -opt[i].r_c;
    }
    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    JointOptimum out{grid[best], opt[best].rho_opt, opt[best].r_c, opt[best].status};
    if (numerics::count_local_minima(values) > 1) {
        out.status = SearchStatus::non_unimodal;
        return out;
    }

    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    PowerOptimum last{};
    double last_h = -1.0;
    auto neg = [&](double h) {
        last = inner(h);
        last_h = h;
        return -last.r_c;
    };
    const auto m = numerics::golden_section_minimize(neg, lo, hi, 1e-3);
    if (-m.value > out.r_c_max) {
        const PowerOptimum at = (last_h == m.x) ? last : inner(m.x);
        out = {m.x, at.rho_opt, at.r_c, at.status};
    }
    return out;
}

namespace detail {

double second_hop_success_tabulated(double ell, const PropagationModel& model, const LinkBudget& budget)
{
    return second_hop_table(model, budget).success(ell);
}

double second_hop_success_direct(double ell, const PropagationModel& model, const LinkBudget& budget)
{
    return second_hop_table(model, budget).direct(ell);
}

double second_hop_reach(const PropagationModel& model, const LinkBudget& budget)
{
    return second_hop_table(model, budget).reach();
}

}  // namespace detail
}  // namespace a2g
