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

// Stochastic oracle for the analytic outage expressions.
//
// Every trial owns a generator seeded from (seed, stream, trial), so results
// do not depend on how trials are split across threads.

#ifndef A2G_MONTE_CARLO_HPP
#define A2G_MONTE_CARLO_HPP

#include "a2g/channel_model.hpp"
#include "a2g/relay_network.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace a2g {

/// xoshiro256** seeded through SplitMix64; satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed);
    /// Independent stream for trial index within a named stream.
    static Xoshiro256 for_trial(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();
    /// Uniform double on [0, 1).
    double uniform();

private:
    std::array<std::uint64_t, 4> s_;
};

struct FadingSample {
    double omega;
};

struct PolarPoint {
    double r;
    double phi;
};

struct MonteCarloEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t n_trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t events = 0;
    bool degenerate = false;  ///< p_hat is 0 or 1, so std_err carries no information
};

MonteCarloEstimate make_estimate(std::uint64_t events, std::uint64_t n_trials, std::uint64_t seed);

/// Unit-mean Rician power (mu + sigma g1)^2 + (sigma g2)^2.
FadingSample sample_rician_power(double k, Xoshiro256& rng);

/// N ~ Poisson(lambda pi R^2) points uniform in the disk of radius R.
std::vector<PolarPoint> sample_ppp_disk(double lambda, double radius, Xoshiro256& rng);

struct SimulationOptions {
    std::uint64_t n_trials = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

MonteCarloEstimate simulate_outage(Strategy s, double r_d, double h, const RelayField& field,
                                   const PropagationModel& model, const LinkBudget& budget,
                                   const SimulationOptions& opts);

/// One pass with shared randomness: every trial yields the dc and rc
/// indicators and cc is their conjunction.
struct SharedOutcome {
    MonteCarloEstimate dc;
    MonteCarloEstimate rc;
    MonteCarloEstimate cc;
    std::uint64_t cc_mismatches = 0;  ///< trials where cc != (dc && rc); always 0
};
SharedOutcome simulate_shared(double r_d, double h, const RelayField& field, const PropagationModel& model,
                              const LinkBudget& budget, const SimulationOptions& opts);

/// Per-trial indicators of the shared pass, for tests of the coupling.
struct TrialIndicators {
    bool dc;
    bool rc;
    bool cc;
};
std::vector<TrialIndicators> simulate_shared_indicators(double r_d, double h, const RelayField& field,
                                                        const PropagationModel& model, const LinkBudget& budget,
                                                        const SimulationOptions& opts);

struct MeanEstimate {
    double mean;
    double std_err;
};

/// Mean size of the decoding set {relays with first-hop SNR above xi}.
MeanEstimate simulate_decoding_set_size(double h, const RelayField& field, const PropagationModel& model,
                                        const LinkBudget& budget, const SimulationOptions& opts);

}  // namespace a2g

#endif
