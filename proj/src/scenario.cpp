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

#include "a2g/scenario.hpp"

#include "a2g/numerics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace a2g {

namespace {

struct Entry {
    std::string value;
    int line;
    bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what)
{
    throw ScenarioError("line " + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail_key(const std::string& section, const std::string& key, const std::string& what)
{
    throw ScenarioError(section + "." + key + ": " + what);
}

double to_number(const std::string& section, const std::string& key, const Entry& e)
{
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        fail_line(e.line, section + "." + key + ": not a number: '" + e.value + "'");
    return v;
}

std::vector<double> to_list(const std::string& section, const std::string& key, const Entry& e)
{
    std::vector<double> out;
    std::stringstream ss(e.value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Entry piece{trim(item), e.line};
        out.push_back(to_number(section, key, piece));
    }
    if (out.empty())
        fail_line(e.line, section + "." + key + ": empty list");
    return out;
}

class Reader {
public:
    explicit Reader(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        int line = 0;
        Section* current = nullptr;
        std::string current_name;
        while (std::getline(in, raw)) {
            ++line;
            const auto hash = raw.find('#');
            const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (s.empty())
                continue;
            if (s.front() == '[') {
                if (s.back() != ']' || s.size() < 3)
                    fail_line(line, "malformed section header '" + s + "'");
                current_name = trim(s.substr(1, s.size() - 2));
                if (!known_sections().count(current_name))
                    fail_line(line, "unknown section [" + current_name + "]");
                if (sections_.count(current_name))
                    fail_line(line, "duplicate section [" + current_name + "]");
                current = &sections_[current_name];
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos)
                fail_line(line, "expected 'key = value', got '" + s + "'");
            if (!current)
                fail_line(line, "key outside of any section");
            std::string key = trim(s.substr(0, eq));
            for (auto& c : key)
                c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            const std::string value = trim(s.substr(eq + 1));
            if (key.empty() || value.empty())
                fail_line(line, "empty key or value");
            if (current->count(key))
                fail_line(line, "duplicate key '" + key + "' in [" + current_name + "]");
            (*current)[key] = Entry{value, line};
        }
    }

    bool has_section(const std::string& name) const { return sections_.count(name) != 0; }

    void require_section(const std::string& name) const
    {
        if (!has_section(name))
            throw ScenarioError("missing section [" + name + "]");
    }

    Entry* find(const std::string& section, const std::string& key)
    {
        auto s = sections_.find(section);
        if (s == sections_.end())
            return nullptr;
        auto k = s->second.find(key);
        if (k == s->second.end())
            return nullptr;
        k->second.used = true;
        return &k->second;
    }

    /// Linear value of key, or of key_db converted; nullopt when absent.
    std::optional<double> quantity(const std::string& section, const std::string& key, bool db_allowed)
    {
        Entry* lin = find(section, key);
        Entry* db = db_allowed ? find(section, key + "_db") : nullptr;
        if (lin && db)
            fail_line(db->line, section + "." + key + ": given both linear and _db forms");
        if (lin)
            return to_number(section, key, *lin);
        if (db)
            return db_to_linear(to_number(section, key + "_db", *db));
        return std::nullopt;
    }

    double required(const std::string& section, const std::string& key, bool db_allowed)
    {
        const auto v = quantity(section, key, db_allowed);
        if (!v)
            throw ScenarioError(section + "." + key + ": missing");
        return *v;
    }

    void reject_unused() const
    {
        for (const auto& [name, sec] : sections_)
            for (const auto& [key, e] : sec)
                if (!e.used)
                    fail_line(e.line, "unknown key '" + key + "' in [" + name + "]");
    }

private:
    static const std::set<std::string>& known_sections()
    {
        static const std::set<std::string> names{"propagation", "budget",       "relays", "geometry", "sweep",
                                                 "mc",          "validate",     "config_space", "power",
                                                 "alpha_fit",   "output"};
        return names;
    }

    std::map<std::string, Section> sections_;
};

void check(bool ok, const std::string& section, const std::string& key, const std::string& what)
{
    if (!ok)
        fail_key(section, key, what);
}

std::uint64_t to_count(const std::string& section, const std::string& key, const Entry& e, std::uint64_t lo)
{
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        fail_line(e.line, section + "." + key + ": not a non-negative integer: '" + e.value + "'");
    check(v >= lo, section, key, "must be >= " + std::to_string(lo));
    return v;
}

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + fmt(v[i]);
    return s;
}

}  // namespace

std::vector<double> SweepSpec::values() const
{
    return log_spacing ? numerics::log_space(min, max, points) : numerics::lin_space(min, max, points);
}

bool Scenario::operator==(const Scenario& o) const
{
    const bool fits_equal = alpha_fit.has_value() == o.alpha_fit.has_value() &&
                            (!alpha_fit || (alpha_fit->a1 == o.alpha_fit->a1 && alpha_fit->offset == o.alpha_fit->offset));
    return propagation == o.propagation && budget == o.budget && total_gamma == o.total_gamma &&
           lambda == o.lambda && disk == o.disk && r_d == o.r_d && sweep == o.sweep && mc == o.mc &&
           validate_r_d == o.validate_r_d && validate_h == o.validate_h && config_xi == o.config_xi &&
           rho_points == o.rho_points && fits_equal && output == o.output;
}

Scenario parse_scenario_text(const std::string& text)
{
    Reader rd(text);
    Scenario sc;
    rd.require_section("propagation");
    rd.require_section("budget");

    {
        const std::string s = "propagation";
        const double k0 = rd.required(s, "kappa0", true);
        const double k90 = rd.required(s, "kappa_half_pi", true);
        const double a0 = rd.required(s, "alpha0", false);
        const double a90 = rd.required(s, "alpha_half_pi", false);
        const double a2 = rd.required(s, "a2", false);
        const double b2 = rd.required(s, "b2", false);
        AlphaCoefficients coeffs = AlphaCoefficients::exact;
        if (Entry* e = rd.find(s, "alpha_coefficients")) {
            if (e->value == "approximate")
                coeffs = AlphaCoefficients::approximate;
            else if (e->value != "exact")
                fail_line(e->line, "propagation.alpha_coefficients: expected exact or approximate");
        }
        check(k0 > 0.0, s, "kappa0", "must be > 0");
        check(k90 >= k0, s, "kappa_half_pi", "must be >= kappa0");
        check(a90 >= 2.0, s, "alpha_half_pi", "must be >= 2");
        check(a0 >= a90, s, "alpha0", "must be >= alpha_half_pi");
        check(a2 > 0.0, s, "a2", "must be > 0");
        check(b2 > 0.0, s, "b2", "must be > 0");
        sc.propagation = PropagationModel(k0, k90, a0, a90, a2, b2, coeffs);
    }
    {
        const std::string s = "budget";
        sc.budget.gamma_u = rd.required(s, "gamma_u", true);
        sc.budget.gamma_r = rd.required(s, "gamma_r", true);
        sc.budget.xi = rd.required(s, "xi", true);
        sc.budget.epsilon = rd.required(s, "epsilon", false);
        check(sc.budget.gamma_u > 0.0, s, "gamma_u", "must be > 0");
        check(sc.budget.gamma_r > 0.0, s, "gamma_r", "must be > 0");
        check(sc.budget.xi > 0.0, s, "xi", "must be > 0");
        check(sc.budget.epsilon > 0.0 && sc.budget.epsilon < 1.0, s, "epsilon", "must lie in (0, 1)");
        sc.total_gamma = rd.quantity(s, "total_gamma", true).value_or(sc.budget.gamma_u);
        check(sc.total_gamma > 0.0, s, "total_gamma", "must be > 0");
    }
    if (rd.has_section("relays")) {
        const std::string s = "relays";
        sc.lambda = rd.quantity(s, "lambda", false).value_or(0.0);
        check(sc.lambda >= 0.0, s, "lambda", "must be >= 0");
        if (Entry* e = rd.find(s, "disk_radius")) {
            if (e->value == "auto")
                sc.disk = std::nullopt;
            else {
                sc.disk = to_number(s, "disk_radius", *e);
                check(*sc.disk > 0.0, s, "disk_radius", "must be > 0 or auto");
            }
        }
    }
    if (rd.has_section("geometry")) {
        sc.r_d = rd.quantity("geometry", "r_d", false).value_or(sc.r_d);
        check(sc.r_d > 0.0, "geometry", "r_d", "must be > 0");
    }
    if (rd.has_section("sweep")) {
        const std::string s = "sweep";
        if (Entry* e = rd.find(s, "variable")) {
            sc.sweep.variable = e->value;
            check(e->value == "h" || e->value == "r_d" || e->value == "theta" || e->value == "rho", s, "variable",
                  "expected h, r_d, theta or rho");
        }
        sc.sweep.min = rd.quantity(s, "min", false).value_or(sc.sweep.min);
        sc.sweep.max = rd.quantity(s, "max", false).value_or(sc.sweep.max);
        if (Entry* e = rd.find(s, "points"))
            sc.sweep.points = static_cast<int>(std::min<std::uint64_t>(to_count(s, "points", *e, 2), 1u << 20));
        if (Entry* e = rd.find(s, "spacing")) {
            check(e->value == "linear" || e->value == "log", s, "spacing", "expected linear or log");
            sc.sweep.log_spacing = e->value == "log";
        }
        check(sc.sweep.points >= 2, s, "points", "must be >= 2");
        check(sc.sweep.max > sc.sweep.min, s, "max", "must exceed min");
        check(sc.sweep.min >= 0.0, s, "min", "must be >= 0");
        check(!sc.sweep.log_spacing || sc.sweep.min > 0.0, s, "min", "must be > 0 for log spacing");
    }
    if (rd.has_section("mc")) {
        const std::string s = "mc";
        if (Entry* e = rd.find(s, "trials"))
            sc.mc.trials = to_count(s, "trials", *e, 1);
        if (Entry* e = rd.find(s, "seed"))
            sc.mc.seed = to_count(s, "seed", *e, 0);
        if (Entry* e = rd.find(s, "threads"))
            sc.mc.threads = static_cast<unsigned>(std::min<std::uint64_t>(to_count(s, "threads", *e, 1), 1024));
    }
    if (rd.has_section("validate")) {
        const std::string s = "validate";
        if (Entry* e = rd.find(s, "r_d"))
            sc.validate_r_d = to_list(s, "r_d", *e);
        if (Entry* e = rd.find(s, "h"))
            sc.validate_h = to_list(s, "h", *e);
        for (double v : sc.validate_r_d)
            check(v >= 0.0, s, "r_d", "entries must be >= 0");
        for (double v : sc.validate_h)
            check(v > 0.0, s, "h", "entries must be > 0");
    }
    if (rd.has_section("config_space")) {
        const std::string s = "config_space";
        Entry* lin = rd.find(s, "xi");
        Entry* db = rd.find(s, "xi_db");
        if (lin && db)
            fail_line(db->line, "config_space.xi: given both linear and _db forms");
        if (lin)
            sc.config_xi = to_list(s, "xi", *lin);
        if (db)
            for (double v : to_list(s, "xi_db", *db))
                sc.config_xi.push_back(db_to_linear(v));
        for (double v : sc.config_xi)
            check(v > 0.0, s, "xi", "entries must be > 0");
    }
    if (rd.has_section("power")) {
        if (Entry* e = rd.find("power", "rho_points"))
            sc.rho_points = static_cast<int>(std::min<std::uint64_t>(to_count("power", "rho_points", *e, 2), 4096));
    }
    if (rd.has_section("alpha_fit")) {
        AlphaFit f{};
        f.a1 = rd.required("alpha_fit", "a1", false);
        f.offset = rd.required("alpha_fit", "offset", false);
        sc.alpha_fit = f;
    }
    if (rd.has_section("output")) {
        if (Entry* e = rd.find("output", "path"))
            sc.output = e->value;
    }
    rd.reject_unused();
    return sc;
}

Scenario parse_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str());
}

std::string serialize_scenario(const Scenario& sc)
{
    std::ostringstream o;
    const auto& p = sc.propagation;
    o << "[propagation]\n"
      << "kappa0 = " << fmt(p.kappa0()) << "\n"
      << "kappa_half_pi = " << fmt(p.kappa_half_pi()) << "\n"
      << "alpha0 = " << fmt(p.alpha0()) << "\n"
      << "alpha_half_pi = " << fmt(p.alpha_half_pi()) << "\n"
      << "a2 = " << fmt(p.a2()) << "\n"
      << "b2 = " << fmt(p.b2()) << "\n"
      << "alpha_coefficients = " << (p.coefficients() == AlphaCoefficients::exact ? "exact" : "approximate") << "\n\n";
    o << "[budget]\n"
      << "gamma_u = " << fmt(sc.budget.gamma_u) << "\n"
      << "gamma_r = " << fmt(sc.budget.gamma_r) << "\n"
      << "xi = " << fmt(sc.budget.xi) << "\n"
      << "epsilon = " << fmt(sc.budget.epsilon) << "\n"
      << "total_gamma = " << fmt(sc.total_gamma) << "\n\n";
    o << "[relays]\n"
      << "lambda = " << fmt(sc.lambda) << "\n"
      << "disk_radius = " << (sc.disk ? fmt(*sc.disk) : std::string("auto")) << "\n\n";
    o << "[geometry]\nr_d = " << fmt(sc.r_d) << "\n\n";
    o << "[sweep]\n"
      << "variable = " << sc.sweep.variable << "\n"
      << "min = " << fmt(sc.sweep.min) << "\n"
      << "max = " << fmt(sc.sweep.max) << "\n"
      << "points = " << sc.sweep.points << "\n"
      << "spacing = " << (sc.sweep.log_spacing ? "log" : "linear") << "\n\n";
    o << "[mc]\ntrials = " << sc.mc.trials << "\nseed = " << sc.mc.seed << "\nthreads = " << sc.mc.threads << "\n\n";
    o << "[validate]\nr_d = " << fmt_list(sc.validate_r_d) << "\nh = " << fmt_list(sc.validate_h) << "\n\n";
    if (!sc.config_xi.empty())
        o << "[config_space]\nxi = " << fmt_list(sc.config_xi) << "\n\n";
    o << "[power]\nrho_points = " << sc.rho_points << "\n";
    if (sc.alpha_fit)
        o << "\n[alpha_fit]\na1 = " << fmt(sc.alpha_fit->a1) << "\noffset = " << fmt(sc.alpha_fit->offset) << "\n";
    if (!sc.output.empty())
        o << "\n[output]\npath = " << sc.output << "\n";
    return o.str();
}

}  // namespace a2g
