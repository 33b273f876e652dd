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

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <doctest.h>

#include <cmath>
#include <random>

using namespace a2g;

namespace {

// Marcum Q from the noncentral chi-square(2, x^2) survival function at y^2.
double chi2_oracle(double x, double y)
{
    if (y == 0.0)
        return 1.0;
    if (x == 0.0)
        return std::exp(-0.5 * y * y);
    boost::math::non_central_chi_squared_distribution<double> d(2.0, x * x);
    return boost::math::cdf(boost::math::complement(d, y * y));
}

// Defining integral, split at the peak of the integrand.
double quadrature_oracle(double x, double y)
{
    auto f = [x](double t) {
        const double z = x * t;
        const double i0s = boost::math::cyl_bessel_i(0, z) * std::exp(-z);
        return t * std::exp(-0.5 * (t - x) * (t - x)) * i0s;
    };
    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double m = std::max(y, x);
    double q = gk::integrate(f, m, m + 40.0, 15, 1e-15);
    if (m > y)
        q += gk::integrate(f, y, m, 15, 1e-15);
    return q;
}

}  // namespace

TEST_CASE("marcum_q closed forms")
{
    CHECK(marcum_q(0.0, 1.0) == doctest::Approx(0.60653065971263342).epsilon(1e-14));
    for (double x : {0.0, 0.5, 3.0, 9.0})
        CHECK(marcum_q(x, 0.0) == 1.0);
    CHECK(marcum_q(1.0, 1.0) == doctest::Approx(quadrature_oracle(1.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("marcum_q agrees with both oracles")
{
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const double x = i, y = j;
            const double q = marcum_q(x, y);
            CHECK(std::abs(q - quadrature_oracle(x, y)) <= 1e-9);
            CHECK(std::abs(q - chi2_oracle(x, y)) <= 1e-9);
        }
}

TEST_CASE("marcum_q complement keeps relative precision in the far tail")
{
    // 1 - Q at (6, 0.5) is ~1e-8; the complement must not be rounded to 0.
    boost::math::non_central_chi_squared_distribution<double> d(2.0, 36.0);
    const double ref = boost::math::cdf(d, 0.25);
    CHECK(marcum_q_complement(6.0, 0.5) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(marcum_q(3.0, 14.0) == doctest::Approx(chi2_oracle(3.0, 14.0)).epsilon(1e-8));
}

TEST_CASE("marcum_q large-argument quadrature branch")
{
    // x*y > 1e4 switches algorithm; both sides of the switch must agree.
    const double x = 100.0;
    for (double y : {99.0, 100.0, 101.0, 102.5}) {
        CHECK(std::abs(marcum_q(x, y) - chi2_oracle(x, y)) <= 1e-9);
        const auto pair = detail::marcum_q_quadrature(x, y);
        CHECK(pair.q + pair.complement == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(std::abs(marcum_q(100.0, 99.99) - marcum_q(100.0, 100.01)) < 0.01);
}

TEST_CASE("marcum_q monotone on random grids")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int n = 0; n < 400; ++n) {
        const double x = u(rng), y1 = u(rng), y2 = u(rng);
        CHECK(marcum_q(x, std::min(y1, y2)) >= marcum_q(x, std::max(y1, y2)));
        CHECK(marcum_q(std::min(y1, y2), x) <= marcum_q(std::max(y1, y2), x));
    }
}

TEST_CASE("marcum_q rejects invalid arguments")
{
    CHECK_THROWS_AS(marcum_q(-1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(marcum_q(NAN, 1.0), std::domain_error);
    CHECK_THROWS_AS(marcum_q(1.0, INFINITY), std::domain_error);
}

TEST_CASE("gaussian_q pair")
{
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(inv_gaussian_q(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(inv_gaussian_q(0.1) == doctest::Approx(1.2815515655446004).epsilon(1e-12));
    for (double x : {-3.0, -1.0, 0.3, 2.0, 5.0}) {
        CHECK(gaussian_q(-x) == doctest::Approx(1.0 - gaussian_q(x)).epsilon(1e-14));
        CHECK(std::abs(gaussian_q(x) - 0.5 * std::erfc(x / std::sqrt(2.0))) <= 1e-12);
    }
    for (double p : {1e-12, 1e-4, 0.05, 0.3, 0.7, 0.999})
        CHECK(std::abs(gaussian_q(inv_gaussian_q(p)) - p) <= 1e-9);
    CHECK_THROWS_AS(inv_gaussian_q(0.0), std::domain_error);
    CHECK_THROWS_AS(inv_gaussian_q(1.0), std::domain_error);
}

TEST_CASE("inv_marcum_q_exact")
{
    CHECK(inv_marcum_q_exact(0.0, 0.9) == doctest::Approx(std::sqrt(-2.0 * std::log(0.9))).epsilon(1e-9));
    for (double x : {0.0, 0.7, 2.0, 5.5, 9.0})
        for (double p : {0.01, 0.5, 0.9, 0.999})
            CHECK(std::abs(marcum_q(x, inv_marcum_q_exact(x, p)) - p) <= 1e-9);

    // Independent bisection on the chi-square oracle.
    double lo = 0.0, hi = 20.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi2_oracle(3.0, mid) > 0.99 ? lo : hi) = mid;
    }
    CHECK(inv_marcum_q_exact(3.0, 0.99) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-8));
    CHECK_THROWS_AS(inv_marcum_q_exact(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(inv_marcum_q_exact(1.0, 1.0), std::domain_error);
}

TEST_CASE("approximate inverse branches")
{
    const double eps = 0.1;
    CHECK(inv_marcum_q_approx(0.0, eps) == doctest::Approx(std::sqrt(-2.0 * std::log(1.0 - eps))));
    CHECK(inv_marcum_q_approx(5.0, 0.5) == doctest::Approx(5.1).epsilon(1e-12));

    const double y = inv_marcum_q_approx(4.0, 0.1);
    const double ref = inv_marcum_q_exact(4.0, 0.9);
    CHECK(std::abs(y - ref) / ref <= 0.05);
    CHECK_THROWS_AS(inv_marcum_q_approx(1.0, 1.0), std::domain_error);
}

TEST_CASE("branch intersection is a continuity point")
{
    for (double eps : {0.01, 0.05, 0.1, 0.3, 0.5, 0.7}) {
        const double x0 = find_branch_intersection(eps);
        CHECK(x0 > std::max(0.0, inv_gaussian_q(eps)));
        CHECK(std::abs(detail::inv_marcum_small_x_branch(x0, eps) - detail::inv_marcum_large_x_branch(x0, eps)) <=
              1e-9);
    }
    // eps = 0.5 goes through the 1/(2x) branch.
    const double x0 = find_branch_intersection(0.5);
    CHECK(std::sqrt(-2.0 * std::log(0.5)) * std::exp(x0 * x0 / 4.0) ==
          doctest::Approx(x0 + 1.0 / (2.0 * x0)).epsilon(1e-9));
}

TEST_CASE("large-x asymptote")
{
    for (double eps : {0.05, 0.1, 0.5})
        for (double x = 8.0; x <= 30.0; x += 0.5)
            CHECK(std::abs(inv_marcum_q_approx(x, eps) - (x - inv_gaussian_q(eps))) <= 0.1);
    CHECK(inv_marcum_q_asymptotic(10.0, 0.1) == doctest::Approx(10.0 - inv_gaussian_q(0.1)));
}

TEST_CASE("scaled Bessel helpers")
{
    for (double z : {0.0, 1e-3, 0.5, 3.0, 14.0, 40.0, 600.0}) {
        CHECK(detail::bessel_i0_scaled(z) ==
              doctest::Approx(boost::math::cyl_bessel_i(0, z) * std::exp(-z)).epsilon(1e-13));
        CHECK(detail::bessel_i1_scaled(z) ==
              doctest::Approx(boost::math::cyl_bessel_i(1, z) * std::exp(-z)).epsilon(1e-13));
    }
}

TEST_CASE("Probability wrapper")
{
    CHECK(Probability(0.25).value() == 0.25);
    CHECK_THROWS_AS(Probability(1.5), std::domain_error);
    CHECK_THROWS_AS(Probability(-0.1), std::domain_error);
}
