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

#include "a2g/numerics.hpp"

#include "a2g/errors.hpp"

#include <array>
#include <map>
#include <mutex>
#include <numbers>

namespace a2g::numerics {

RootResult find_root(const ScalarFn& f, double lo, double hi, const RootOptions& opts)
{
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0)
        return {a, 0.0, 0};
    if (fb == 0.0)
        return {b, 0.0, 0};
    if (!(std::signbit(fa) != std::signbit(fb)))
        throw convergence_error("find_root: no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "]");

    // Illinois variant of regula falsi; every third step is a plain bisection
    // so the bracket always shrinks geometrically.
    int side = 0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        double c;
        if (it % 3 == 0)
            c = 0.5 * (a + b);
        else {
            c = (a * fb - b * fa) / (fb - fa);
            if (!(c > std::min(a, b) && c < std::max(a, b)))
                c = 0.5 * (a + b);
        }
        const double fc = f(c);
        if (std::abs(fc) <= opts.f_tol || std::abs(b - a) <= opts.x_tol)
            return {c, fc, it};
        if (std::signbit(fc) == std::signbit(fb)) {
            b = c;
            fb = fc;
            if (side == -1)
                fa *= 0.5;
            side = -1;
        } else {
            a = c;
            fa = fc;
            if (side == +1)
                fb *= 0.5;
            side = +1;
        }
    }
    const double c = 0.5 * (a + b);
    const double fc = f(c);
    if (std::abs(b - a) <= std::max(opts.x_tol, 1e-15 * std::abs(c)) * 16.0)
        return {c, fc, opts.max_iterations};
    throw convergence_error("find_root: iteration budget exhausted");
}

std::optional<std::pair<double, double>> scan_for_bracket(const ScalarFn& f, double lo, double hi, int n)
{
    double prev_x = lo;
    double prev_f = f(lo);
    for (int i = 1; i < n; ++i) {
        const double x = lo + (hi - lo) * i / (n - 1);
        const double fx = f(x);
        if (prev_f == 0.0)
            return std::pair{prev_x, prev_x};
        if (std::signbit(fx) != std::signbit(prev_f) || fx == 0.0)
            return std::pair{prev_x, x};
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

MinimizeResult golden_section_minimize(const ScalarFn& f, double lo, double hi, double rel_tol, double abs_tol,
                                       int max_iterations)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    for (; it < max_iterations; ++it) {
        const double mid = 0.5 * (a + b);
        if (std::abs(b - a) <= rel_tol * std::abs(mid) + abs_tol)
            break;
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if (fc < fd)
        return {c, fc, it};
    return {d, fd, it};
}

namespace {

GaussLegendreRule build_gauss_legendre(int n)
{
    GaussLegendreRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

// Kronrod 15-point extension of the 7-point Gauss rule.
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss7_w = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double value;
    double error;
};

Segment gk15(const ScalarFn& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double k = kronrod_w[7] * fc;
    double g = gauss7_w[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kronrod_x[i];
        const double f1 = f(mid - dx), f2 = f(mid + dx);
        k += kronrod_w[i] * (f1 + f2);
        if (i % 2 == 1)
            g += gauss7_w[i / 2] * (f1 + f2);
    }
    return {k * half, std::abs((k - g) * half)};
}

void adapt(const ScalarFn& f, double a, double b, double tol, int depth, AdaptiveResult& acc)
{
    const Segment s = gk15(f, a, b);
    if (s.error <= tol || depth <= 0 || (b - a) < 1e-14 * std::max(1.0, std::abs(a))) {
        acc.value += s.value;
        acc.error_estimate += s.error;
        if (s.error > tol)
            acc.converged = false;
        return;
    }
    const double m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1, acc);
    adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order)
{
    static std::mutex mutex;
    static std::map<int, GaussLegendreRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, build_gauss_legendre(order)).first;
    return it->second;
}

AdaptiveResult integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol, int max_depth)
{
    const Segment coarse = gk15(f, a, b);
    const double tol = std::max(abs_tol, rel_tol * std::abs(coarse.value));
    AdaptiveResult acc;
    acc.converged = true;
    adapt(f, a, b, tol, max_depth, acc);
    return acc;
}

std::vector<double> log_space(double lo, double hi, int n)
{
    std::vector<double> out(n);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < n; ++i)
        out[i] = (n == 1) ? lo : std::exp(l0 + (l1 - l0) * i / (n - 1));
    if (n > 1) {
        out.front() = lo;
        out.back() = hi;
    }
    return out;
}

std::vector<double> lin_space(double lo, double hi, int n)
{
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
        out[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1);
    return out;
}

int count_local_minima(std::span<const double> values)
{
    int count = 0;
    // Plateaus are collapsed so a flat-bottomed valley counts once.
    std::vector<double> v;
    for (double x : values)
        if (v.empty() || x != v.back())
            v.push_back(x);
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] < v[i - 1] && v[i] < v[i + 1])
            ++count;
    return count;
}

}  // namespace a2g::numerics
