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

// a2g_cli: scenario-driven front end.
//
// Exit codes: 0 success, 2 parse or input error, 3 numeric non-convergence,
// 4 validation gate failure.

#include "a2g/commands.hpp"
#include "a2g/errors.hpp"
#include "a2g/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace {

constexpr int exit_parse = 2;
constexpr int exit_convergence = 3;
constexpr int exit_gate = 4;

struct Common {
    std::string scenario;
    std::string strategy = "cc";
    std::string out;
    std::string disk;
    std::string sweep;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    bool approx_inverse = false;
};

void add_common(CLI::App* cmd, Common& c)
{
    cmd->add_option("--scenario", c.scenario, "Scenario file")->required();
    cmd->add_option("--strategy", c.strategy, "dc, rc or cc")->check(CLI::IsMember({"dc", "rc", "cc"}));
    cmd->add_option("--out", c.out, "CSV output path (default: scenario output.path, else stdout)");
    cmd->add_option("--disk-radius", c.disk, "Relay disk radius in m, or auto for the self-consistent radius");
    cmd->add_option("--sweep", c.sweep, "Override the sweep axis: min:max:points[:log]");
    cmd->add_option("--trials", c.trials, "Monte Carlo trials");
    cmd->add_option("--seed", c.seed, "Monte Carlo seed");
    cmd->add_option("--threads", c.threads, "Monte Carlo worker threads");
    cmd->add_flag("--approx-inverse", c.approx_inverse, "Closed-form inverse Marcum Q in config-space");
}

a2g::SweepSpec parse_sweep(const std::string& text, const std::string& variable)
{
    a2g::SweepSpec spec;
    spec.variable = variable;
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');)
        parts.push_back(part);
    const auto bad = [&] { return a2g::ScenarioError("--sweep: expected min:max:points[:log], got '" + text + "'"); };
    if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log" && parts[3] != "linear"))
        throw bad();
    try {
        std::size_t used = 0;
        spec.min = std::stod(parts[0], &used);
        if (used != parts[0].size())
            throw bad();
        spec.max = std::stod(parts[1], &used);
        if (used != parts[1].size())
            throw bad();
        spec.points = std::stoi(parts[2], &used);
        if (used != parts[2].size())
            throw bad();
    } catch (const std::logic_error&) {
        throw bad();
    }
    spec.log_spacing = parts.size() == 4 && parts[3] == "log";
    if (!(spec.points >= 2 && std::isfinite(spec.min) && std::isfinite(spec.max) && spec.min < spec.max) ||
        (spec.log_spacing && !(spec.min > 0.0)))
        throw bad();
    return spec;
}

a2g::Scenario load(const Common& c, const std::string& variable)
{
    a2g::Scenario sc = a2g::parse_scenario(c.scenario);
    if (!c.sweep.empty())
        sc.sweep = parse_sweep(c.sweep, variable);
    if (!c.disk.empty()) {
        if (c.disk == "auto")
            sc.disk = std::nullopt;
        else {
            double r = 0.0;
            std::istringstream in(c.disk);
            if (!(in >> r) || !in.eof() || !(r > 0.0))
                throw a2g::ScenarioError("--disk-radius: expected a positive number or auto, got '" + c.disk + "'");
            sc.disk = r;
        }
    }
    if (c.trials)
        sc.mc.trials = *c.trials;
    if (c.seed)
        sc.mc.seed = *c.seed;
    if (c.threads)
        sc.mc.threads = *c.threads;
    if (!c.out.empty())
        sc.output = c.out;
    return sc;
}

// Binary mode keeps LF line endings on every platform.
std::unique_ptr<std::ostream> open_output(const std::string& path)
{
    if (path.empty() || path == "-")
        return nullptr;
    auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*f)
        throw a2g::ScenarioError("cannot open output file '" + path + "'");
    return f;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Air-to-ground link reliability: outage, optimal altitude, coverage and relaying"};
    app.require_subcommand(1);

    Common common;
    struct Sub {
        const char* name;
        const char* variable;
        const char* help;
    };
    const Sub subs[] = {
        {"outage-curve", "h", "Outage of every strategy over an altitude sweep at fixed r_d"},
        {"optimal-altitude", "r_d", "Analytic and numeric optimal elevation over an r_d sweep"},
        {"config-space", "theta", "Fixed-outage (r_c, h) curves over an elevation sweep"},
        {"power-sweep", "h", "Coverage radius over altitude and power split, with the joint optimum"},
        {"validate", "h", "Analytic outage against Monte Carlo; exits 4 when any |z| > 5"},
    };
    std::vector<CLI::App*> cmds;
    for (const auto& s : subs) {
        auto* cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, common);
        cmds.push_back(cmd);
    }

    a2g::FitAlphaInput fit{2e9, 1.0, 20.0, 0.0, 10.0, 1000.0, 32};
    std::string fit_out, fit_scenario;
    auto* fit_cmd = app.add_subcommand("fit-alpha", "Fit the path-loss exponent slope to a LoS/NLoS excess-loss model");
    fit_cmd->add_option("--freq", fit.freq_hz, "Carrier frequency in Hz");
    fit_cmd->add_option("--sigma-los", fit.sigma_los_db, "LoS excess loss in dB");
    fit_cmd->add_option("--sigma-nlos", fit.sigma_nlos_db, "NLoS excess loss in dB");
    fit_cmd->add_option("--a-db", fit.a_db, "Reference gain A in dB");
    fit_cmd->add_option("--d-min", fit.d_min, "Smallest distance in m (> 1)");
    fit_cmd->add_option("--d-max", fit.d_max, "Largest distance in m");
    fit_cmd->add_option("--points", fit.points, "Number of log-spaced distances");
    fit_cmd->add_option("--out", fit_out, "CSV output path");
    fit_cmd->add_option("--write-scenario", fit_scenario, "Store the fit in the [alpha_fit] section of this scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_parse;
    }

    try {
        if (fit_cmd->parsed()) {
            auto file = open_output(fit_out);
            std::ostream& out = file ? *file : std::cout;
            const a2g::AlphaFit f = a2g::cmd_fit_alpha(fit, out);
            if (!fit_scenario.empty()) {
                a2g::Scenario sc = a2g::parse_scenario(fit_scenario);
                sc.alpha_fit = f;
                std::ofstream(fit_scenario, std::ios::binary | std::ios::trunc) << a2g::serialize_scenario(sc);
            }
            return 0;
        }

        std::string variable;
        for (std::size_t i = 0; i < cmds.size(); ++i)
            if (cmds[i]->parsed())
                variable = subs[i].variable;
        const a2g::Scenario sc = load(common, variable);
        a2g::CommandOptions opt;
        opt.strategy = a2g::parse_strategy(common.strategy);
        opt.approx_inverse = common.approx_inverse;
        auto file = open_output(sc.output);
        std::ostream& out = file ? *file : std::cout;

        if (cmds[0]->parsed())
            a2g::cmd_outage_curve(sc, opt, out);
        else if (cmds[1]->parsed())
            a2g::cmd_optimal_altitude(sc, opt, out);
        else if (cmds[2]->parsed())
            a2g::cmd_config_space(sc, opt, out);
        else if (cmds[3]->parsed())
            a2g::cmd_power_sweep(sc, opt, out);
        else if (cmds[4]->parsed()) {
            const auto sum = a2g::cmd_validate(sc, out);
            std::cerr << "validate: " << sum.rows << " rows, max |z| = " << sum.max_abs_z << ", " << sum.hard_failures
                      << " above 5\n";
            if (sum.hard_failures > 0)
                return exit_gate;
        }
        out.flush();
        return 0;
    } catch (const a2g::convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_convergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
}
