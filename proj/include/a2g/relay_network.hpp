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

// Opportunistic decode-and-forward relaying over a Poisson relay field and
// selection combining with the direct link.
//
// Relays form a PPP of density lambda on a disk of radius R centred at the
// UAV ground projection. The relaying outage is exp(-lambda (psi1 - psi2))
// where psi1 integrates the first-hop success probability over the disk and
// psi1 - psi2 additionally weights by second-hop success towards D. The
// difference is integrated directly: psi2 alone is close to psi1 whenever
// the destination is far from most relays, so subtracting two large
// integrals would lose most significant digits of the exponent.

#ifndef A2G_RELAY_NETWORK_HPP
#define A2G_RELAY_NETWORK_HPP

#include "a2g/channel_model.hpp"
#include "a2g/direct_link.hpp"

#include <optional>

namespace a2g {

struct RelayField {
    double lambda;       ///< relays per m^2
    double disk_radius;  ///< m

    void validate() const;
    bool operator==(const RelayField&) const = default;
};

/// Split of a total SNR budget: gamma_u = rho total, gamma_r = (1 - rho) total.
struct PowerAllocation {
    double rho;
    double total_budget_gamma;

    void validate() const;
    double gamma_u() const noexcept { return rho * total_budget_gamma; }
    double gamma_r() const noexcept { return (1.0 - rho) * total_budget_gamma; }
    /// base with gamma_u and gamma_r replaced by the split.
    LinkBudget apply(const LinkBudget& base) const;
};

enum class Strategy { dc, rc, cc };

const char* to_string(Strategy s) noexcept;
/// Parses "dc", "rc" or "cc"; throws std::domain_error otherwise.
Strategy parse_strategy(const std::string& s);

struct QuadratureOptions {
    int order = 96;        ///< Gauss-Legendre nodes per dimension and panel
    int check_order = 128; ///< verification rule
    bool verify = true;    ///< 2-D integrals only; 1-D integrals are always verified
    double rel_tol = 1e-6;
    int max_panels = 32;
};

struct QuadratureReport {
    double value = 0.0;
    double check_value = 0.0;
    int panels = 1;
    bool verified = false;
    bool warned = false;  ///< tolerance not met at max_panels
};

/// 2 pi int_0^R r Q_UR(r) dr.
QuadratureReport psi1_report(double h, const RelayField& field, const PropagationModel& model,
                             const LinkBudget& budget, const QuadratureOptions& opts = {});
double psi1(double h, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
            const QuadratureOptions& opts = {});

/// psi1 - psi2: int int r Q_UR(r) Q_RD(l_RD) over the disk.
QuadratureReport relay_success_area_report(double r_d, double h, const RelayField& field,
                                           const PropagationModel& model, const LinkBudget& budget,
                                           const QuadratureOptions& opts = {});
double relay_success_area(double r_d, double h, const RelayField& field, const PropagationModel& model,
                          const LinkBudget& budget, const QuadratureOptions& opts = {});

double psi2(double r_d, double h, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
            const QuadratureOptions& opts = {});

/// pi R^2 - psi02: int int r Q_RD(l_RD) over the disk (first hop always decodes).
double second_hop_area(double r_d, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
                       const QuadratureOptions& opts = {});
double psi02(double r_d, const RelayField& field, const PropagationModel& model, const LinkBudget& budget,
             const QuadratureOptions& opts = {});

double outage_rc(double r_d, double h, const RelayField& field, const PropagationModel& model,
                 const LinkBudget& budget, const QuadratureOptions& opts = {});
/// Altitude-independent bound exp(-lambda (pi R^2 - psi02)) <= outage_rc.
double outage_rc_lower_bound(double r_d, const RelayField& field, const PropagationModel& model,
                             const LinkBudget& budget, const QuadratureOptions& opts = {});
double outage_cc(double r_d, double h, const RelayField& field, const PropagationModel& model,
                 const LinkBudget& budget, const QuadratureOptions& opts = {});
double outage(Strategy s, double r_d, double h, const RelayField& field, const PropagationModel& model,
              const LinkBudget& budget, const QuadratureOptions& opts = {});

/// Relay disk used by coverage and power operations: a fixed radius, or
/// nullopt for the self-consistent radius (disk = coverage radius).
using DiskMode = std::optional<double>;

struct CoverageResult {
    double radius = 0.0;
    int iterations = 0;
    bool converged = true;
    bool oscillating = false;
};

/// Largest r_d with outage_strategy(r_d, h) <= epsilon at a fixed disk.
double coverage_radius_fixed_disk(Strategy s, double h, const RelayField& field, const PropagationModel& model,
                                  const LinkBudget& budget, const QuadratureOptions& opts = {});

/// Self-consistent radius r* with outage(r*, h; disk = r*) = epsilon: the
/// limit of r_{k+1} = root_r[outage(r, h; disk = r_k) = epsilon] started at
/// the direct-link radius. converged reports whether one further step of the
/// map moves r* by less than 0.5 m.
CoverageResult coverage_radius(Strategy s, double h, double lambda, const PropagationModel& model,
                               const LinkBudget& budget, const QuadratureOptions& opts = {});

/// Dispatches on the disk mode. Strategy dc ignores the relay field.
CoverageResult coverage(Strategy s, double h, double lambda, DiskMode disk, const PropagationModel& model,
                        const LinkBudget& budget, const QuadratureOptions& opts = {});

/// Configuration-curve point along elevation theta_c for any strategy: the
/// polar radius at which outage equals epsilon. Strategy dc returns the
/// closed form; rc and cc solve along the ray (x_c, y_c keep the direct-link
/// values).
ConfigSpacePoint config_space_point(Strategy s, double theta_c, double lambda, DiskMode disk,
                                    const PropagationModel& model, const LinkBudget& budget,
                                    bool use_approx_inverse = false, const QuadratureOptions& opts = {});

struct PowerOptimum {
    double rho_opt = 0.0;
    double r_c = 0.0;
    SearchStatus status = SearchStatus::ok;
};

inline constexpr double rho_floor = 0.05;
inline constexpr double rho_ceiling = 0.999;

/// Coverage radius of strategy s at altitude h for split rho of total.
double coverage_at_split(Strategy s, double h, double rho, double total, double lambda, DiskMode disk,
                         const PropagationModel& model, const LinkBudget& base);

/// Golden-section maximisation of the coverage radius over rho in
/// [0.05, 0.999] to width 1e-3, after an 8-point unimodality screen.
PowerOptimum optimize_power_allocation(Strategy s, double h, double total, double lambda, DiskMode disk,
                                       const PropagationModel& model, const LinkBudget& base);

struct JointOptimum {
    double h_opt = 0.0;
    double rho_opt = 0.0;
    double r_c_max = 0.0;
    SearchStatus status = SearchStatus::ok;
};

/// Maximises over h in [h_lo, h_hi] (coarse log grid, then golden section)
/// the power-optimised coverage radius.
JointOptimum joint_optimum(Strategy s, double total, double lambda, DiskMode disk, const PropagationModel& model,
                           const LinkBudget& base, double h_lo = 20.0, double h_hi = 5000.0);

namespace detail {

/// Relay-to-destination success probability through the interpolation table
/// used by the integrals, and by direct Marcum evaluation.
double second_hop_success_tabulated(double ell, const PropagationModel& model, const LinkBudget& budget);
double second_hop_success_direct(double ell, const PropagationModel& model, const LinkBudget& budget);
/// Distance beyond which the second hop succeeds with probability < 1e-17.
double second_hop_reach(const PropagationModel& model, const LinkBudget& budget);

}  // namespace detail
}  // namespace a2g

#endif
