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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <doctest.h>

#include <numbers>
#include <random>
#include <vector>

using namespace a2g;

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

PropagationModel urban(AlphaCoefficients c = AlphaCoefficients::exact)
{
    return PropagationModel(db_to_linear(5.0), db_to_linear(15.0), 3.5, 2.0, 10.0, 3.0, c);
}

}  // namespace

TEST_CASE("logistic LoS probability")
{
    const auto m = urban();
    CHECK(p_los(0.0, m) == doctest::Approx(1.0 / 11.0).epsilon(1e-15));
    CHECK(p_los(half_pi, m) == doctest::Approx(1.0 / (1.0 + 10.0 * std::exp(-1.5 * std::numbers::pi))).epsilon(1e-14));
    CHECK(p_los(half_pi, m) == doctest::Approx(0.917572).epsilon(1e-6));
    double prev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double p = p_los(half_pi * i / 100.0, m);
        CHECK(p > prev);
        prev = p;
    }
    CHECK_THROWS_AS(p_los(-0.01, m), std::domain_error);
    CHECK_THROWS_AS(p_los(half_pi + 0.01, m), std::domain_error);
}

TEST_CASE("Rician factor endpoints and midpoint")
{
    const auto m = PropagationModel::case_study();
    CHECK(rician_factor(0.0, m) == m.kappa0());
    CHECK(rician_factor(half_pi, m) == m.kappa_half_pi());
    CHECK(rician_factor(0.0, m) == doctest::Approx(3.16227766).epsilon(1e-8));
    CHECK(rician_factor(half_pi, m) == doctest::Approx(31.6227766).epsilon(1e-8));
    CHECK(rician_factor(std::numbers::pi / 4.0, m) ==
          doctest::Approx(std::sqrt(m.kappa0() * m.kappa_half_pi())).epsilon(1e-13));
}

TEST_CASE("path-loss exponent endpoints")
{
    const auto exact = urban();
    CHECK(path_loss_exponent(0.0, exact) == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(path_loss_exponent(half_pi, exact) == doctest::Approx(2.0).epsilon(1e-14));

    // The approximate coefficients miss the endpoints by at most
    // |a1| max(P_LoS(0), 1 - P_LoS(pi/2)).
    const auto approx = urban(AlphaCoefficients::approximate);
    const double slack = std::abs(approx.a1()) * std::max(p_los(0.0, approx), 1.0 - p_los(half_pi, approx));
    CHECK(std::abs(path_loss_exponent(0.0, approx) - 3.5) <= slack + 1e-14);
    CHECK(std::abs(path_loss_exponent(half_pi, approx) - 2.0) <= slack + 1e-14);
    CHECK(approx.a1() == -1.5);
    CHECK(approx.b1() == 3.5);
}

TEST_CASE("monotone K and alpha over random models")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 200; ++n) {
        const double k0 = 0.1 + 10.0 * u(rng);
        const double a_half = 2.0 + u(rng);
        const PropagationModel m(k0, k0 * (1.0 + 50.0 * u(rng)), a_half + 2.0 * u(rng), a_half, 0.5 + 40.0 * u(rng),
                                 0.5 + 30.0 * u(rng));
        const double t1 = half_pi * u(rng), t2 = half_pi * u(rng);
        const double lo = std::min(t1, t2), hi = std::max(t1, t2);
        CHECK(rician_factor(lo, m) <= rician_factor(hi, m));
        CHECK(path_loss_exponent(lo, m) >= path_loss_exponent(hi, m));
    }
}

TEST_CASE("model invariants are enforced")
{
    CHECK_THROWS_AS(PropagationModel(0.0, 1.0, 3.0, 2.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PropagationModel(2.0, 1.0, 3.0, 2.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PropagationModel(1.0, 2.0, 3.0, 1.9, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PropagationModel(1.0, 2.0, 2.0, 2.5, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PropagationModel(1.0, 2.0, 3.0, 2.0, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(PropagationModel(1.0, 2.0, 3.0, 2.0, 1.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(LinkBudget::from_db(75, 75, 2, 1.5), std::domain_error);
    CHECK_THROWS_AS(Geometry(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(Geometry(-1.0, 10.0), std::domain_error);
}

TEST_CASE("analytic derivatives")
{
    for (const auto& m : {urban(), PropagationModel::case_study()}) {
        for (double t : {0.05, 0.3, 0.7, 1.1, 1.5}) {
            const auto d = derivatives(t, m);
            const double h = 1e-6;
            CHECK(d.k_prime / rician_factor(t, m) == doctest::Approx(m.b3()).epsilon(1e-13));
            const double fd_alpha = (path_loss_exponent(t + h, m) - path_loss_exponent(t - h, m)) / (2 * h);
            CHECK(d.alpha_prime == doctest::Approx(fd_alpha).epsilon(1e-6));
            const double fd_x =
                (std::sqrt(2 * rician_factor(t + h, m)) - std::sqrt(2 * rician_factor(t - h, m))) / (2 * h);
            CHECK(d.x_prime == doctest::Approx(fd_x).epsilon(1e-6));
        }
    }
}

TEST_CASE("Rician fading distribution")
{
    for (double w : {0.0, 0.1, 1.0, 3.0})
        CHECK(rician_fading_cdf(w, 0.0) == doctest::Approx(1.0 - std::exp(-w)).epsilon(1e-13));
    CHECK(rician_fading_cdf(0.0, 3.1623) == 0.0);

    using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (double k : {0.0, 1.0, 3.1623, 31.6, 100.0}) {
        auto pdf = [k](double w) { return rician_fading_pdf(w, k); };
        CHECK(rician_fading_cdf(1.0, k) == doctest::Approx(gk::integrate(pdf, 0.0, 1.0, 15, 1e-14)).epsilon(1e-10));
        auto mean = [k](double w) { return w * rician_fading_pdf(w, k); };
        CHECK(std::abs(gk::integrate(mean, 0.0, 1.0, 15, 1e-14) + gk::integrate(mean, 1.0, 60.0, 15, 1e-14) - 1.0) <=
              1e-8);

        double prev = 0.0;
        for (double w = 0.05; w < 6.0; w += 0.05) {
            const double c = rician_fading_cdf(w, k);
            CHECK(c >= prev);
            prev = c;
            const double dw = 1e-5;
            const double fd = (rician_fading_cdf(w + dw, k) - rician_fading_cdf(w - dw, k)) / (2 * dw);
            CHECK(std::abs(fd - rician_fading_pdf(w, k)) <= 1e-6 * std::max(1.0, rician_fading_pdf(w, k)));
        }
        CHECK(rician_fading_cdf(80.0, k) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(rician_fading_cdf(-1.0, 1.0), std::domain_error);
}

TEST_CASE("budgets and geometry")
{
    CHECK(budget_from_physical(30.0, 20.0, -25.0) == doctest::Approx(std::pow(10.0, 7.5)).epsilon(1e-14));
    CHECK(budget_from_physical(10.0, -10.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(budget_from_physical(5.0, 5.0, 0.0) == doctest::Approx(10.0).epsilon(1e-15));
    const Geometry g(1000.0, 1000.0);
    CHECK(g.theta() == doctest::Approx(std::numbers::pi / 4));
    CHECK(g.length() == doctest::Approx(1000.0 * std::sqrt(2.0)));
}

TEST_CASE("path-loss exponent fit")
{
    const std::vector<double> one{1000.0};
    const double f = 2e9;
    const double fs = 20.0 * std::log10(4.0 * std::numbers::pi * f * 1000.0 / speed_of_light);
    const auto fit = fit_alpha_from_pl_model(f, 1.0, 20.0, 0.0, one);
    CHECK(fit.a1 == doctest::Approx((1.0 - 20.0) / 30.0).epsilon(1e-14));
    CHECK(fit.offset == doctest::Approx((fs + 20.0) / 30.0).epsilon(1e-14));

    const std::vector<double> many{10.0, 100.0, 500.0, 2000.0};
    CHECK(fit_alpha_from_pl_model(f, 6.0, 6.0, 0.0, many).a1 == 0.0);
    CHECK(fit_alpha_from_pl_model(f, 1.0, 20.0, 0.0, many).a1 < 0.0);
    const std::vector<double> bad{1.0, 100.0};
    CHECK_THROWS_AS(fit_alpha_from_pl_model(f, 1.0, 20.0, 0.0, bad), std::domain_error);
}
