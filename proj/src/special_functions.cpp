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

#include "a2g/special_functions.hpp"

#include "a2g/errors.hpp"
#include "a2g/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace a2g {

namespace {

constexpr double series_rel_tol = 1e-17;
constexpr double linear_domain_limit = 600.0;  // exp(-600) is still a normal double
constexpr double quadrature_xy_threshold = 1e4;

// Sum_k Pois(k; outer) * P(Pois(inner) <= k - shift), shift in {0, 1}.
//
// The outer Poisson weights decay super-exponentially past the mode, so
// the remainder after index k is bounded by w_{k+1} / (1 - outer / (k + 2))
// (the inner CDF factor never exceeds one).
double poisson_pair_series_linear(double outer, double inner, int shift)
{
    const int k_max = static_cast<int>(outer + 40.0 * std::sqrt(outer) + 400.0);
    double w = std::exp(-outer);
    double pm = std::exp(-inner);
    double cdf = (shift == 0) ? pm : 0.0;
    double sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        sum += w * cdf;
        w *= outer / (k + 1);
        // inner index newly covered at k+1 is m = k + 1 - shift
        const int m = k + 1 - shift;
        if (m == 0)
            cdf = pm;
        else {
            pm *= inner / m;
            cdf += pm;
        }
        if (k + 2 > outer) {
            const double ratio = outer / (k + 2);
            const double tail = w / (1.0 - ratio);
            if (tail <= series_rel_tol * sum || w == 0.0)
                break;
        }
    }
    return std::min(sum, 1.0);
}

double log_add(double a, double b)
{
    if (a == -std::numeric_limits<double>::infinity())
        return b;
    if (b == -std::numeric_limits<double>::infinity())
        return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// Same sum with weights carried in log space; used when either mean is
// large enough for exp(-mean) to underflow.
double poisson_pair_series_log(double outer, double inner, int shift)
{
    const double ninf = -std::numeric_limits<double>::infinity();
    const double log_outer = (outer > 0.0) ? std::log(outer) : ninf;
    const double log_inner = (inner > 0.0) ? std::log(inner) : ninf;
    const int k_max = static_cast<int>(outer + 40.0 * std::sqrt(outer) + 400.0);
    double log_w = -outer;
    double log_pm = -inner;
    double log_cdf = (shift == 0) ? log_pm : ninf;
    double sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        sum += std::exp(log_w + log_cdf);
        log_w += log_outer - std::log(k + 1.0);
        const int m = k + 1 - shift;
        if (m == 0)
            log_cdf = log_pm;
        else {
            log_pm += log_inner - std::log(static_cast<double>(m));
            log_cdf = log_add(log_cdf, log_pm);
        }
        if (k + 2 > outer) {
            const double ratio = outer / (k + 2);
            const double tail = std::exp(log_w) / (1.0 - ratio);
            if (tail <= series_rel_tol * sum || log_w < -745.0)
                break;
        }
    }
    return std::min(sum, 1.0);
}

double poisson_pair_series(double outer, double inner, int shift)
{
    if (outer == 0.0)
        return (shift == 0) ? std::exp(-inner) : 0.0;
    if (outer < linear_domain_limit && inner < linear_domain_limit)
        return poisson_pair_series_linear(outer, inner, shift);
    return poisson_pair_series_log(outer, inner, shift);
}

detail::MarcumPair marcum_pair(double x, double y)
{
    detail::require_finite_nonnegative(x, "marcum_q: x");
    detail::require_finite_nonnegative(y, "marcum_q: y");
    if (y == 0.0)
        return {1.0, 0.0};
    if (x * y > quadrature_xy_threshold)
        return detail::marcum_q_quadrature(x, y);
    const double a = 0.5 * x * x;
    const double b = 0.5 * y * y;
    // Q1 = P(N_b <= N_a). Sum whichever tail is the smaller one directly.
    if (b >= a) {
        const double q = poisson_pair_series(a, b, 0);
        return {q, 1.0 - q};
    }
    const double c = poisson_pair_series(b, a, 1);
    return {1.0 - c, c};
}

}  // namespace

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double inv_gaussian_q(double p)
{
    detail::require_open_unit(p, "inv_gaussian_q: p");
    // Acklam's rational approximation of the normal quantile at 1-p,
    // followed by one Halley step against erfc.
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    // Quantile z of the lower tail probability u; Q^{-1}(p) = -z(p).
    const double u = p;
    double z;
    if (u < p_low) {
        const double q = std::sqrt(-2.0 * std::log(u));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (u <= 1.0 - p_low) {
        const double q = u - 0.5;
        const double r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-u));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    for (int i = 0; i < 2; ++i) {
        const double e = 0.5 * std::erfc(-z / std::numbers::sqrt2) - u;
        const double g = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * z * z);
        z -= g / (1.0 + 0.5 * z * g);
    }
    return -z;
}

namespace detail {

double bessel_i0_scaled(double z)
{
    require_finite_nonnegative(z, "bessel_i0_scaled: z");
    if (z <= 20.0) {
        const double q = 0.25 * z * z;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum * std::exp(-z);
    }
    // Hankel asymptotic series, truncated at the smallest term.
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double f = (2.0 * k - 1.0);
        const double next = term * f * f / (k * 8.0 * z);
        if (next > term)
            break;
        term = next;
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

double bessel_i1_scaled(double z)
{
    require_finite_nonnegative(z, "bessel_i1_scaled: z");
    if (z <= 20.0) {
        const double q = 0.25 * z * z;
        double term = 0.5 * z, sum = term;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * (k + 1));
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return sum * std::exp(-z);
    }
    // mu = 4 nu^2 = 4; term_k = term_{k-1} * -(mu - (2k-1)^2) / (k 8 z)
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double f = 2.0 * k - 1.0;
        const double next = -term * (4.0 - f * f) / (k * 8.0 * z);
        if (std::abs(next) > std::abs(term))
            break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * z);
}

MarcumPair marcum_q_quadrature(double x, double y)
{
    // t exp(-(t^2+x^2)/2) I0(xt) = t exp(-(t-x)^2/2) [e^{-xt} I0(xt)]
    const auto integrand = [x](double t) {
        const double d = t - x;
        return t * std::exp(-0.5 * d * d) * bessel_i0_scaled(x * t);
    };
    constexpr double width = 40.0;
    if (y >= x) {
        const auto r = numerics::integrate_adaptive(integrand, y, y + width, 1e-300, 1e-13);
        const double q = std::clamp(r.value, 0.0, 1.0);
        return {q, 1.0 - q};
    }
    const auto r = numerics::integrate_adaptive(integrand, std::max(0.0, x - width), y, 1e-300, 1e-13);
    const double c = std::clamp(r.value, 0.0, 1.0);
    return {1.0 - c, c};
}

double inv_marcum_small_x_branch(double x, double epsilon)
{
    return std::sqrt(-2.0 * std::log1p(-epsilon)) * std::exp(0.25 * x * x);
}

double inv_marcum_large_x_branch(double x, double epsilon)
{
    const double q = inv_gaussian_q(epsilon);
    if (std::abs(q) < 1e-12)
        return x + 1.0 / (2.0 * x);
    return x + std::log(x / (x - q)) / (2.0 * q) - q;
}

}  // namespace detail

double marcum_q(double x, double y)
{
    return marcum_pair(x, y).q;
}

double marcum_q_complement(double x, double y)
{
    return marcum_pair(x, y).complement;
}

double inv_marcum_q_exact(double x, double p)
{
    detail::require_finite_nonnegative(x, "inv_marcum_q_exact: x");
    detail::require_open_unit(p, "inv_marcum_q_exact: p");

    const double cap = x + 50.0;
    double hi = std::min(cap, std::max(std::sqrt(-2.0 * std::log(p)) * std::exp(0.25 * std::min(x * x, 400.0)),
                                       x + 10.0));
    while (marcum_q(x, hi) > p) {
        if (hi >= cap)
            throw convergence_error("inv_marcum_q_exact: no bracket within [0, x + 50]");
        hi = std::min(cap, hi * 2.0);
    }

    // Solve on whichever tail is smaller so the residual stays relative.
    numerics::ScalarFn f;
    if (p > 0.5) {
        const double target = 1.0 - p;
        f = [x, target](double y) { return target - marcum_q_complement(x, y); };
    } else {
        f = [x, p](double y) { return marcum_q(x, y) - p; };
    }
    numerics::RootOptions opts;
    opts.x_tol = 1e-15;
    opts.f_tol = 1e-13 * std::min(p, 1.0 - p);
    opts.max_iterations = 400;
    return numerics::find_root(f, 0.0, hi, opts).x;
}

double find_branch_intersection(double epsilon)
{
    detail::require_open_unit(epsilon, "find_branch_intersection: epsilon");
    const double q = inv_gaussian_q(epsilon);
    const double lo = std::max(0.0, q) + 1e-6;
    const double hi = 20.0;
    const auto diff = [epsilon](double x) {
        return detail::inv_marcum_small_x_branch(x, epsilon) - detail::inv_marcum_large_x_branch(x, epsilon);
    };
    if (!(diff(lo) < 0.0 && diff(hi) > 0.0))
        throw convergence_error("find_branch_intersection: no sign change on (max(0,q)+1e-6, 20]");
    numerics::RootOptions opts;
    opts.x_tol = 1e-15;
    opts.f_tol = 1e-12;
    opts.max_iterations = 400;
    return numerics::find_root(diff, lo, hi, opts).x;
}

double inv_marcum_q_approx(double x, double epsilon)
{
    detail::require_finite_nonnegative(x, "inv_marcum_q_approx: x");
    detail::require_open_unit(epsilon, "inv_marcum_q_approx: epsilon");
    if (x == 0.0)
        return detail::inv_marcum_small_x_branch(0.0, epsilon);
    const double x0 = find_branch_intersection(epsilon);
    if (x <= x0)
        return detail::inv_marcum_small_x_branch(x, epsilon);
    return detail::inv_marcum_large_x_branch(x, epsilon);
}

double inv_marcum_q_asymptotic(double x, double epsilon)
{
    detail::require_open_unit(epsilon, "inv_marcum_q_asymptotic: epsilon");
    return x - inv_gaussian_q(epsilon);
}

}  // namespace a2g
