// SPDX-License-Identifier: Apache-2.0
//
// era-beam: beampattern synthesis for electromagnetically reconfigurable antenna arrays
// Copyright (C) 2026 era-beam developers
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

#include "erabeam/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace era::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
    std::size_t consumed = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ParseError("not a number: '" + value + "'", line);
    }
    if (consumed != value.size())
        throw ParseError("trailing characters after number: '" + value + "'", line);
    return parsed;
}

int parse_int(const std::string& value, int line) {
    const double parsed = parse_double(value, line);
    const int as_int = static_cast<int>(parsed);
    if (parsed != static_cast<double>(as_int))
        throw ParseError("expected an integer: '" + value + "'", line);
    return as_int;
}

std::uint64_t parse_seed(const std::string& value, int line) {
    try {
        if (value.find('-') != std::string::npos)
            throw std::invalid_argument("negative");
        std::size_t consumed = 0;
        const std::uint64_t parsed = std::stoull(value, &consumed);
        if (consumed != value.size())
            throw std::invalid_argument("trailing");
        return parsed;
    } catch (const std::exception&) {
        throw ParseError("not a valid seed: '" + value + "'", line);
    }
}

SampleSpec parse_sample_row(const std::string& row, const std::string& regime, int line) {
    std::istringstream stream(row);
    std::string type;
    stream >> type;
    if (type != "focal" && type != "null")
        throw ParseError("sample type must be 'focal' or 'null', got '" + type + "'", line);

    SampleSpec sample;
    sample.type = type;
    const bool far = regime == "far";
    std::set<std::string> seen;
    bool has_desired = false;

    std::string token;
    while (stream >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError("sample fields must be key=value, got '" + token + "'", line);
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (!seen.insert(key).second)
            throw ParseError("duplicate sample field '" + key + "'", line);

        if (far && key == "theta_deg")
            sample.theta_deg = parse_double(value, line);
        else if (far && key == "phi_deg")
            sample.phi_deg = parse_double(value, line);
        else if (!far && key == "x")
            sample.x = parse_double(value, line);
        else if (!far && key == "y")
            sample.y = parse_double(value, line);
        else if (!far && key == "z")
            sample.z = parse_double(value, line);
        else if (key == "desired") {
            sample.desired = parse_double(value, line);
            has_desired = true;
        } else if (key == "weight")
            sample.weight = parse_double(value, line);
        else
            throw ParseError("unknown sample field '" + key + "' for " +
                                 (far ? std::string("far") : std::string("near")) +
                                 "-field samples",
                             line);
    }

    if (far) {
        if (!seen.count("theta_deg") || !seen.count("phi_deg"))
            throw ParseError("far-field sample needs theta_deg and phi_deg", line);
        if (sample.theta_deg < 0.0 || sample.theta_deg > 180.0)
            throw ParseError("theta_deg must lie in [0, 180]", line);
        if (sample.phi_deg < -180.0 || sample.phi_deg > 180.0)
            throw ParseError("phi_deg must lie in [-180, 180]", line);
    } else {
        if (!seen.count("x") || !seen.count("y") || !seen.count("z"))
            throw ParseError("near-field sample needs x, y and z", line);
    }

    if (type == "focal") {
        if (!has_desired || sample.desired <= 0.0)
            throw ParseError("focal sample needs desired > 0", line);
    } else if (has_desired && sample.desired != 0.0) {
        throw ParseError("null sample cannot have desired != 0", line);
    }
    if (sample.weight <= 0.0)
        throw ParseError("sample weight must be positive", line);
    return sample;
}

} // namespace

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

ScenarioFile parse_scenario_text(const std::string& text) {
    ScenarioFile file;
    std::set<std::string> assigned;

    std::istringstream stream(text);
    std::string raw_line;
    std::string section;
    int line_no = 0;
    std::set<std::string> sections_seen;

    while (std::getline(stream, raw_line)) {
        ++line_no;
        const auto comment = raw_line.find('#');
        if (comment != std::string::npos)
            raw_line.erase(comment);
        const std::string line = trim(raw_line);
        if (line.empty())
            continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("malformed section header '" + line + "'", line_no);
            section = line.substr(1, line.size() - 2);
            if (section != "array" && section != "model" && section != "samples" &&
                section != "solver")
                throw ParseError("unknown section [" + section + "]", line_no);
            if (!sections_seen.insert(section).second)
                throw ParseError("duplicate section [" + section + "]", line_no);
            if (section == "samples" && file.regime.empty())
                throw ParseError("[model] regime must appear before [samples]", line_no);
            continue;
        }
        if (section.empty())
            throw ParseError("content before any section header", line_no);

        if (section == "samples") {
            file.samples.push_back(parse_sample_row(line, file.regime, line_no));
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected key = value, got '" + line + "'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("expected key = value, got '" + line + "'", line_no);
        if (!assigned.insert(section + "." + key).second)
            throw ParseError("duplicate key '" + key + "' in [" + section + "]", line_no);

        if (section == "array") {
            if (key == "nx")
                file.nx = parse_int(value, line_no);
            else if (key == "ny")
                file.ny = parse_int(value, line_no);
            else if (key == "spacing_wavelengths")
                file.spacing_wavelengths = parse_double(value, line_no);
            else if (key == "frequency_hz")
                file.frequency_hz = parse_double(value, line_no);
            else
                throw ParseError("unknown key '" + key + "' in [array]", line_no);
        } else if (section == "model") {
            if (key == "regime") {
                if (value != "far" && value != "near")
                    throw ParseError("regime must be 'far' or 'near'", line_no);
                file.regime = value;
            } else if (key == "L")
                file.max_degree = parse_int(value, line_no);
            else if (key == "power")
                file.power = parse_double(value, line_no);
            else if (key == "positivity_mode") {
                if (value != "off" && value != "fixed-b00")
                    throw ParseError("positivity_mode must be 'off' or 'fixed-b00'", line_no);
                file.positivity_mode = value;
            } else if (key == "rho")
                file.rho = parse_double(value, line_no);
            else
                throw ParseError("unknown key '" + key + "' in [model]", line_no);
        } else { // solver
            if (key == "solver") {
                if (value != "cg" && value != "gd")
                    throw ParseError("solver must be 'cg' or 'gd'", line_no);
                file.solver = value;
            } else if (key == "outer_max")
                file.outer_max = parse_int(value, line_no);
            else if (key == "inner_max")
                file.inner_max = parse_int(value, line_no);
            else if (key == "grad_tol")
                file.grad_tol = parse_double(value, line_no);
            else if (key == "obj_tol")
                file.obj_tol = parse_double(value, line_no);
            else if (key == "armijo_step")
                file.armijo_step = parse_double(value, line_no);
            else if (key == "armijo_contraction")
                file.armijo_contraction = parse_double(value, line_no);
            else if (key == "armijo_decrease")
                file.armijo_decrease = parse_double(value, line_no);
            else if (key == "armijo_max_backtracks")
                file.armijo_max_backtracks = parse_int(value, line_no);
            else if (key == "seed")
                file.seed = parse_seed(value, line_no);
            else if (key == "warm_start") {
                if (value != "none" && value != "isotropic")
                    throw ParseError("warm_start must be 'none' or 'isotropic'", line_no);
                file.warm_start = value;
            } else if (key == "restarts")
                file.restarts = parse_int(value, line_no);
            else
                throw ParseError("unknown key '" + key + "' in [solver]", line_no);
        }
    }

    if (!sections_seen.count("array"))
        throw ParseError("missing [array] section");
    if (!sections_seen.count("model"))
        throw ParseError("missing [model] section");
    if (!sections_seen.count("samples") || file.samples.empty())
        throw ParseError("missing [samples] section or no samples given");
    if (file.nx < 1 || file.ny < 1)
        throw ParseError("[array] nx and ny must be >= 1");
    if (file.spacing_wavelengths <= 0.0)
        throw ParseError("[array] spacing_wavelengths must be positive");
    if (file.frequency_hz <= 0.0)
        throw ParseError("[array] frequency_hz must be positive");
    if (file.max_degree < 0)
        throw ParseError("[model] L must be given and nonnegative");
    if (file.power <= 0.0)
        throw ParseError("[model] power must be positive");
    if (!(file.rho > 0.0 && file.rho < 1.0))
        throw ParseError("[model] rho must lie in (0, 1)");
    if (file.positivity_mode == "fixed-b00" && file.max_degree < 1)
        throw ParseError("[model] fixed-b00 positivity needs L >= 1");
    if (file.outer_max < 0 || file.inner_max < 1)
        throw ParseError("[solver] outer_max must be >= 0 and inner_max >= 1");
    if (file.grad_tol <= 0.0 || file.obj_tol <= 0.0)
        throw ParseError("[solver] tolerances must be positive");
    if (file.armijo_step <= 0.0 || file.armijo_contraction <= 0.0 ||
        file.armijo_contraction >= 1.0 || file.armijo_decrease <= 0.0 ||
        file.armijo_decrease >= 1.0 || file.armijo_max_backtracks < 1)
        throw ParseError("[solver] invalid Armijo line-search parameters");
    if (file.restarts < 1)
        throw ParseError("[solver] restarts must be >= 1");
    return file;
}

ScenarioFile parse_scenario_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input)
        throw ParseError("cannot open scenario file '" + path + "'");
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return parse_scenario_text(buffer.str());
}

namespace {

void serialize_model_sections(const ScenarioFile& file, std::ostream& out) {
    out << "[array]\n";
    out << "nx = " << file.nx << "\n";
    out << "ny = " << file.ny << "\n";
    out << "spacing_wavelengths = " << format_double(file.spacing_wavelengths) << "\n";
    out << "frequency_hz = " << format_double(file.frequency_hz) << "\n";
    out << "\n[model]\n";
    out << "regime = " << file.regime << "\n";
    out << "L = " << file.max_degree << "\n";
    out << "power = " << format_double(file.power) << "\n";
    out << "positivity_mode = " << file.positivity_mode << "\n";
    out << "rho = " << format_double(file.rho) << "\n";
    out << "\n[samples]\n";
    for (const SampleSpec& sample : file.samples) {
        out << sample.type;
        if (file.regime == "far")
            out << " theta_deg=" << format_double(sample.theta_deg)
                << " phi_deg=" << format_double(sample.phi_deg);
        else
            out << " x=" << format_double(sample.x) << " y=" << format_double(sample.y)
                << " z=" << format_double(sample.z);
        out << " desired=" << format_double(sample.desired)
            << " weight=" << format_double(sample.weight) << "\n";
    }
}

} // namespace

std::string serialize_scenario(const ScenarioFile& file) {
    std::ostringstream out;
    serialize_model_sections(file, out);
    out << "\n[solver]\n";
    out << "solver = " << file.solver << "\n";
    out << "outer_max = " << file.outer_max << "\n";
    out << "inner_max = " << file.inner_max << "\n";
    out << "grad_tol = " << format_double(file.grad_tol) << "\n";
    out << "obj_tol = " << format_double(file.obj_tol) << "\n";
    out << "armijo_step = " << format_double(file.armijo_step) << "\n";
    out << "armijo_contraction = " << format_double(file.armijo_contraction) << "\n";
    out << "armijo_decrease = " << format_double(file.armijo_decrease) << "\n";
    out << "armijo_max_backtracks = " << file.armijo_max_backtracks << "\n";
    out << "seed = " << file.seed << "\n";
    out << "warm_start = " << file.warm_start << "\n";
    out << "restarts = " << file.restarts << "\n";
    return out.str();
}

synthesis::Scenario to_scenario(const ScenarioFile& file) {
    synthesis::Scenario scn;
    const double wavelength = kSpeedOfLight / file.frequency_hz;
    scn.geometry =
        geometry::make_upa(file.nx, file.ny, file.spacing_wavelengths * wavelength, wavelength);
    scn.truncation = harmonics::TruncationSpec::from_degree(file.max_degree);
    scn.regime = file.regime == "far" ? em::Regime::far : em::Regime::near;
    scn.element_power = file.power;
    for (const SampleSpec& raw : file.samples) {
        synthesis::Sample sample;
        if (scn.regime == em::Regime::far) {
            geometry::Direction dir;
            dir.theta = raw.theta_deg * kPi / 180.0;
            dir.phi = raw.phi_deg * kPi / 180.0;
            sample.target = em::SampleTarget::far_sample(dir);
        } else {
            sample.target = em::SampleTarget::near_sample({raw.x, raw.y, raw.z});
        }
        sample.desired = raw.desired;
        sample.weight = raw.weight;
        scn.samples.push_back(sample);
    }
    return scn;
}

synthesis::SolverConfig to_config(const ScenarioFile& file) {
    synthesis::SolverConfig cfg;
    cfg.outer_max = file.outer_max;
    cfg.inner_max = file.inner_max;
    cfg.grad_tol = file.grad_tol;
    cfg.obj_tol = file.obj_tol;
    cfg.armijo.initial_step = file.armijo_step;
    cfg.armijo.contraction = file.armijo_contraction;
    cfg.armijo.sufficient_decrease = file.armijo_decrease;
    cfg.armijo.max_backtracks = file.armijo_max_backtracks;
    cfg.solver = file.solver == "gd" ? synthesis::SolverKind::gradient_descent
                                     : synthesis::SolverKind::conjugate_gradient;
    cfg.seed = file.seed;
    cfg.positivity = file.positivity_mode == "fixed-b00" ? synthesis::PositivityMode::fixed_b00
                                                         : synthesis::PositivityMode::off;
    cfg.rho = file.rho;
    cfg.warm_start = file.warm_start == "isotropic" ? synthesis::WarmStart::isotropic
                                                    : synthesis::WarmStart::none;
    cfg.restarts = file.restarts;
    return cfg;
}

std::vector<std::string> scenario_advisories(const ScenarioFile& file) {
    std::vector<std::string> notes;
    if (file.regime != "near")
        return notes;
    const synthesis::Scenario scn = to_scenario(file);
    const double boundary = geometry::rayleigh_distance(scn.geometry);
    for (std::size_t s = 0; s < scn.samples.size(); ++s) {
        const double dist = scn.samples[s].target.position.norm();
        if (dist > boundary) {
            std::ostringstream note;
            note << "sample " << (s + 1) << " lies " << format_double(dist)
                 << " m from the array origin, beyond the Rayleigh distance "
                 << format_double(boundary) << " m; the spherical-wave model may not apply";
            notes.push_back(note.str());
        }
    }
    return notes;
}

std::uint64_t scenario_hash(const ScenarioFile& file) {
    std::ostringstream out;
    serialize_model_sections(file, out);
    const std::string text = out.str();
    std::uint64_t hash = 1469598103934665603ULL;
    for (const char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ULL;
    }
    return hash;
}

} // namespace era::cli
