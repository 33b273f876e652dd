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

#include "a2g/monte_carlo.hpp"

#include "a2g/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace a2g {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k)
{
    return (x << k) | (x >> (64 - k));
}

enum StreamId : std::uint64_t { stream_dc = 1, stream_rc = 2, stream_cc = 3, stream_shared = 4, stream_decoding = 5 };

// Generator plus the normal sampler whose cached second variate belongs to
// the same trial.
struct TrialRng {
    Xoshiro256 gen;
    std::normal_distribution<double> normal{0.0, 1.0};

    TrialRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial)
        : gen(Xoshiro256::for_trial(seed, stream, trial))
    {
    }
    double gauss() { return normal(gen); }
    double uniform() { return gen.uniform(); }
    std::int64_t poisson(double mean)
    {
        if (mean <= 0.0)
            return 0;
        return std::poisson_distribution<std::int64_t>(mean)(gen);
    }
};

double rician_power(double k, TrialRng& rng)
{
    const double mu = std::sqrt(k / (k + 1.0));
    const double sigma = std::sqrt(0.5 / (k + 1.0));
    const double a = mu + sigma * rng.gauss();
    const double b = sigma * rng.gauss();
    return a * a + b * b;
}

// Fixed per-(r_d, h) quantities of one simulated scenario.
class Scene {
public:
    Scene(double r_d, double h, const RelayField& field, const PropagationModel& model, const LinkBudget& budget)
        : r_d_(r_d), h_(h), field_(field), model_(model), budget_(budget)
    {
        detail::require_finite_nonnegative(r_d, "simulate: r_d");
        detail::require_finite_nonnegative(h, "simulate: h");
        field.validate();
        budget.validate();
        if (r_d > 0.0 || h > 0.0) {
            const double theta = std::atan2(h, r_d);
            k_ud_ = rician_factor(theta, model);
            dc_threshold_ = budget.xi * std::pow(std::hypot(r_d, h), path_loss_exponent(theta, model)) / budget.gamma_u;
        }
        // Relays within near_ of D are visited first; most successful relays
        // sit there, so the search usually stops before the far field.
        const double x0 = std::sqrt(2.0 * model.kappa0());
        const double y = inv_marcum_q_exact(x0, 1e-3);
        const double scale = std::sqrt(2.0 * budget.xi * (1.0 + model.kappa0()) / budget.gamma_r);
        near_ = std::min(std::pow(y / scale, 2.0 / model.alpha0()), field.disk_radius + r_d);
    }

    bool dc_outage(TrialRng& rng) const
    {
        if (dc_threshold_ == 0.0)
            return false;
        return rician_power(k_ud_, rng) <= dc_threshold_;
    }

    bool first_hop_decodes(double x, double y, TrialRng& rng) const
    {
        const double r = std::hypot(x, y);
        if (r == 0.0 && h_ == 0.0)
            return true;
        const double theta = std::atan2(h_, r);
        const double k = rician_factor(theta, model_);
        const double alpha = path_loss_exponent(theta, model_);
        const double omega = rician_power(k, rng);
        return budget_.gamma_u * omega > budget_.xi * std::pow(std::hypot(r, h_), alpha);
    }

    // The two hops fade independently, so the cheap fixed-K second hop is
    // drawn first and the elevation-dependent first hop only when needed.
    bool relay_succeeds(double x, double y, TrialRng& rng) const
    {
        const double l2 = (x - r_d_) * (x - r_d_) + y * y;
        const double omega = rician_power(model_.kappa0(), rng);
        if (!(budget_.gamma_r * omega > budget_.xi * std::pow(l2, 0.5 * model_.alpha0())))
            return false;
        return first_hop_decodes(x, y, rng);
    }

    // The disk PPP is the superposition of independent PPPs on the part
    // within near_ of D and on the rest, each obtained by thinning a uniform
    // process on a covering disk.
    bool rc_outage(TrialRng& rng) const
    {
        const double lambda = field_.lambda;
        const double R = field_.disk_radius;
        const double R2 = R * R;
        const double near2 = near_ * near_;
        if (lambda == 0.0)
            return true;
        if (near_ > 0.0) {
            const std::int64_t n = rng.poisson(lambda * std::numbers::pi * near2);
            for (std::int64_t i = 0; i < n; ++i) {
                const double rr = near_ * std::sqrt(rng.uniform());
                const double ph = two_pi * rng.uniform();
                const double x = r_d_ + rr * std::cos(ph), y = rr * std::sin(ph);
                if (x * x + y * y > R2)
                    continue;
                if (relay_succeeds(x, y, rng))
                    return false;
            }
        }
        const std::int64_t n = rng.poisson(lambda * std::numbers::pi * R2);
        for (std::int64_t i = 0; i < n; ++i) {
            const double rr = R * std::sqrt(rng.uniform());
            const double ph = two_pi * rng.uniform();
            const double x = rr * std::cos(ph), y = rr * std::sin(ph);
            if ((x - r_d_) * (x - r_d_) + y * y < near2)
                continue;
            if (relay_succeeds(x, y, rng))
                return false;
        }
        return true;
    }

private:
    double r_d_;
    double h_;
    RelayField field_;
    PropagationModel model_;
    LinkBudget budget_;
    double k_ud_ = 0.0;
    double dc_threshold_ = 0.0;
    double near_ = 0.0;
};

// Runs body(trial) for each trial in [0, n) over contiguous chunks and sums
// the per-chunk results in chunk order.
template <typename T, typename Body>
std::vector<T> parallel_chunks(std::uint64_t n, unsigned threads, Body&& body)
{
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::uint64_t>(1, n))));
    std::vector<T> partial(threads);
    auto run = [&](unsigned t) {
        const std::uint64_t lo = n * t / threads, hi = n * (t + 1) / threads;
        for (std::uint64_t i = lo; i < hi; ++i)
            body(i, partial[t]);
    };
    if (threads == 1) {
        run(0);
        return partial;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(run, t);
    for (auto& th : pool)
        th.join();
    return partial;
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed)
{
    std::uint64_t st = seed;
    for (auto& w : s_)
        w = splitmix64(st);
}

Xoshiro256 Xoshiro256::for_trial(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial)
{
    std::uint64_t st = seed;
    std::uint64_t key = splitmix64(st);
    st = key ^ (stream * 0xD1B54A32D192ED03ULL);
    key = splitmix64(st);
    return Xoshiro256(key ^ (trial * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL));
}

Xoshiro256::result_type Xoshiro256::operator()()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform()
{
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

MonteCarloEstimate make_estimate(std::uint64_t events, std::uint64_t n_trials, std::uint64_t seed)
{
    detail::require(n_trials >= 1, "Monte Carlo: n_trials must be >= 1");
    MonteCarloEstimate e;
    e.events = events;
    e.n_trials = n_trials;
    e.seed = seed;
    e.p_hat = static_cast<double>(events) / static_cast<double>(n_trials);
    e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_trials));
    e.degenerate = events == 0 || events == n_trials;
    return e;
}

FadingSample sample_rician_power(double k, Xoshiro256& rng)
{
    detail::require_finite_nonnegative(k, "sample_rician_power: k");
    std::normal_distribution<double> normal;
    const double mu = std::sqrt(k / (k + 1.0));
    const double sigma = std::sqrt(0.5 / (k + 1.0));
    const double a = mu + sigma * normal(rng);
    const double b = sigma * normal(rng);
    return {a * a + b * b};
}

std::vector<PolarPoint> sample_ppp_disk(double lambda, double radius, Xoshiro256& rng)
{
    detail::require_finite_nonnegative(lambda, "sample_ppp_disk: lambda");
    detail::require(std::isfinite(radius) && radius > 0.0, "sample_ppp_disk: radius must be > 0");
    std::vector<PolarPoint> pts;
    if (lambda == 0.0)
        return pts;
    const auto n = std::poisson_distribution<std::int64_t>(lambda * std::numbers::pi * radius * radius)(rng);
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        const double r = radius * std::sqrt(rng.uniform());
        pts.push_back({r, two_pi * rng.uniform()});
    }
    return pts;
}

MonteCarloEstimate simulate_outage(Strategy s, double r_d, double h, const RelayField& field,
                                   const PropagationModel& model, const LinkBudget& budget,
                                   const SimulationOptions& opts)
{
    detail::require(opts.n_trials >= 1, "simulate_outage: n_trials must be >= 1");
    const Scene scene(r_d, h, field, model, budget);
    const std::uint64_t stream = s == Strategy::dc ? stream_dc : s == Strategy::rc ? stream_rc : stream_cc;
    const auto partial = parallel_chunks<std::uint64_t>(opts.n_trials, opts.threads,
                                                        [&](std::uint64_t i, std::uint64_t& events) {
        TrialRng rng(opts.seed, stream, i);
        bool out = false;
        switch (s) {
        case Strategy::dc: out = scene.dc_outage(rng); break;
        case Strategy::rc: out = scene.rc_outage(rng); break;
        case Strategy::cc: out = scene.dc_outage(rng) && scene.rc_outage(rng); break;
        }
        events += out ? 1 : 0;
    });
    std::uint64_t events = 0;
    for (auto e : partial)
        events += e;
    return make_estimate(events, opts.n_trials, opts.seed);
}

namespace {

struct SharedCounts {
    std::uint64_t dc = 0, rc = 0, cc = 0, mismatch = 0;
};

TrialIndicators shared_trial(const Scene& scene, std::uint64_t seed, std::uint64_t i)
{
    TrialRng rng(seed, stream_shared, i);
    const bool dc = scene.dc_outage(rng);
    const bool rc = scene.rc_outage(rng);
    return {dc, rc, dc && rc};
}

}  // namespace

std::vector<TrialIndicators> simulate_shared_indicators(double r_d, double h, const RelayField& field,
                                                        const PropagationModel& model, const LinkBudget& budget,
                                                        const SimulationOptions& opts)
{
    const Scene scene(r_d, h, field, model, budget);
    std::vector<TrialIndicators> out(opts.n_trials);
    for (std::uint64_t i = 0; i < opts.n_trials; ++i)
        out[i] = shared_trial(scene, opts.seed, i);
    return out;
}

SharedOutcome simulate_shared(double r_d, double h, const RelayField& field, const PropagationModel& model,
                              const LinkBudget& budget, const SimulationOptions& opts)
{
    detail::require(opts.n_trials >= 1, "simulate_shared: n_trials must be >= 1");
    const Scene scene(r_d, h, field, model, budget);
    const auto partial = parallel_chunks<SharedCounts>(opts.n_trials, opts.threads,
                                                       [&](std::uint64_t i, SharedCounts& c) {
        const TrialIndicators t = shared_trial(scene, opts.seed, i);
        c.dc += t.dc;
        c.rc += t.rc;
        c.cc += t.cc;
        c.mismatch += t.cc != (t.dc && t.rc);
    });
    SharedCounts total;
    for (const auto& c : partial) {
        total.dc += c.dc;
        total.rc += c.rc;
        total.cc += c.cc;
        total.mismatch += c.mismatch;
    }
    return {make_estimate(total.dc, opts.n_trials, opts.seed), make_estimate(total.rc, opts.n_trials, opts.seed),
            make_estimate(total.cc, opts.n_trials, opts.seed), total.mismatch};
}

MeanEstimate simulate_decoding_set_size(double h, const RelayField& field, const PropagationModel& model,
                                        const LinkBudget& budget, const SimulationOptions& opts)
{
    detail::require(opts.n_trials >= 2, "simulate_decoding_set_size: n_trials must be >= 2");
    const Scene scene(0.0, std::max(h, 1e-9), field, model, budget);
    struct Moments {
        std::uint64_t sum = 0, sum_sq = 0;  // integer sums keep the reduction exact
    };
    const auto partial = parallel_chunks<Moments>(opts.n_trials, opts.threads, [&](std::uint64_t i, Moments& m) {
        TrialRng rng(opts.seed, stream_decoding, i);
        const auto pts = sample_ppp_disk(field.lambda, field.disk_radius, rng.gen);
        std::uint64_t count = 0;
        for (const auto& p : pts)
            count += scene.first_hop_decodes(p.r * std::cos(p.phi), p.r * std::sin(p.phi), rng) ? 1 : 0;
        m.sum += count;
        m.sum_sq += count * count;
    });
    Moments t;
    for (const auto& m : partial) {
        t.sum += m.sum;
        t.sum_sq += m.sum_sq;
    }
    const double n = static_cast<double>(opts.n_trials);
    const double mean = static_cast<double>(t.sum) / n;
    const double var = std::max(0.0, (static_cast<double>(t.sum_sq) - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

}  // namespace a2g
