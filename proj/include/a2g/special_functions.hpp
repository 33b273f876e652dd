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

#ifndef A2G_SPECIAL_FUNCTIONS_HPP
#define A2G_SPECIAL_FUNCTIONS_HPP

#include <stdexcept>
#include <string>

namespace a2g {

/// A value in [0,1]. Construction outside the unit interval throws.
class Probability {
public:
    constexpr Probability() = default;
    explicit Probability(double v) : value_(v)
    {
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("probability out of [0,1]: " + std::to_string(v));
    }
    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }

private:
    double value_ = 0.0;
};

// ----- Gaussian tail ------------------------------------------------------

/// Q(x) = 0.5 erfc(x / sqrt 2).
double gaussian_q(double x);

/// Inverse of gaussian_q on (0,1). Throws std::domain_error outside.
double inv_gaussian_q(double p);

// ----- First-order Marcum Q -----------------------------------------------

/// Q1(x,y) = int_y^inf t exp(-(t^2+x^2)/2) I0(x t) dt for x, y >= 0.
///
/// Evaluated as P(N_b <= N_a) for independent Poisson variables with means
/// a = x^2/2 and b = y^2/2 (the Poisson-mixture form of the noncentral
/// chi-square CDF with two degrees of freedom). The smaller of Q and 1-Q is
/// always summed directly so both tails keep full relative precision. For
/// x*y > 1e4 the defining integral is used instead.
double marcum_q(double x, double y);

/// 1 - Q1(x,y) with full relative accuracy when Q1 is close to one.
/// This is the Rician outage probability kernel.
double marcum_q_complement(double x, double y);

/// y such that Q1(x, y) = p, by bracketing and safeguarded secant steps on
/// the exact function. |Q1(x, y) - p| <= 1e-10 on return.
double inv_marcum_q_exact(double x, double p);

/// Closed-form piecewise approximation of y = Q1^{-1}(x, 1 - epsilon):
///
///   sqrt(-2 ln(1-eps)) exp(x^2/4)                 x <= x0
///   x + ln[x / (x - q)] / (2 q) - q               x >  x0, q != 0
///   x + 1 / (2x)                                  x >  x0, q == 0
///
/// with q = inv_gaussian_q(eps) and x0 = find_branch_intersection(eps).
double inv_marcum_q_approx(double x, double epsilon);

/// Large-x asymptote of the inverse, y ~ x - inv_gaussian_q(epsilon).
double inv_marcum_q_asymptotic(double x, double epsilon);

/// Switch point x0 of inv_marcum_q_approx: the unique crossing of the
/// small-x branch with the applicable large-x branch on x > max(0, q).
double find_branch_intersection(double epsilon);

namespace detail {

/// Individual branches of the approximate inverse, exposed for tests.
double inv_marcum_small_x_branch(double x, double epsilon);
double inv_marcum_large_x_branch(double x, double epsilon);

/// Exponentially scaled modified Bessel functions e^{-z} I_n(z), z >= 0.
double bessel_i0_scaled(double z);
double bessel_i1_scaled(double z);

/// Marcum Q by adaptive quadrature of the defining integral. Used for the
/// x*y > 1e4 regime; returns {Q, 1-Q}.
struct MarcumPair {
    double q;
    double complement;
};
MarcumPair marcum_q_quadrature(double x, double y);

}  // namespace detail
}  // namespace a2g

#endif
