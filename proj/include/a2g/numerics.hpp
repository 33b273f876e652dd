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

// Scalar solvers and quadrature rules shared by the analytic modules.

#ifndef A2G_NUMERICS_HPP
#define A2G_NUMERICS_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace a2g::numerics {

using ScalarFn = std::function<double(double)>;

struct RootOptions {
    double x_tol = 1e-12;
    double f_tol = 1e-12;
    int max_iterations = 200;
};

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

/// Root of f on [lo, hi] where f(lo) and f(hi) differ in sign.
/// Safeguarded secant (Illinois) steps with bisection fallback; stops when
/// |f| <= f_tol or the bracket is narrower than x_tol. Throws
/// convergence_error without a sign change.
RootResult find_root(const ScalarFn& f, double lo, double hi, const RootOptions& opts = {});

/// Scans n equally spaced points on [lo, hi] and returns the first
/// sub-interval with a sign change of f.
std::optional<std::pair<double, double>> scan_for_bracket(const ScalarFn& f, double lo, double hi, int n);

struct MinimizeResult {
    double x = 0.0;
    double value = 0.0;
    int iterations = 0;
};

/// Golden-section minimisation on [lo, hi]; stops when the bracket width is
/// below rel_tol * |x| + abs_tol.
MinimizeResult golden_section_minimize(const ScalarFn& f, double lo, double hi, double rel_tol, double abs_tol = 0.0,
                                       int max_iterations = 200);

/// Gauss-Legendre nodes and weights on [-1, 1]. Cached per order, thread safe.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// Gauss-Legendre estimate of int_a^b f using the cached n-point rule.
template <typename F>
double integrate_gl(F&& f, double a, double b, int order)
{
    const auto& rule = gauss_legendre(order);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with interval bisection.
AdaptiveResult integrate_adaptive(const ScalarFn& f, double a, double b, double abs_tol, double rel_tol,
                                  int max_depth = 40);

/// Logarithmically spaced grid of n points on [lo, hi], lo > 0.
std::vector<double> log_space(double lo, double hi, int n);

/// Linearly spaced grid of n points on [lo, hi].
std::vector<double> lin_space(double lo, double hi, int n);

/// Number of strict interior local minima of a sampled profile.
int count_local_minima(std::span<const double> values);

}  // namespace a2g::numerics

#endif
