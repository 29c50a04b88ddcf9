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

#ifndef ERABEAM_SCENARIO_IO_HPP
#define ERABEAM_SCENARIO_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "erabeam/synthesis.hpp"

namespace era::cli {

// Parse failure with the offending 1-based line (0 when not line-specific).
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, int line = 0)
        : std::runtime_error(std::move(message)), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// One [samples] row in file units (degrees / meters).
struct SampleSpec {
    std::string type; // "focal" | "null"
    double weight = 1.0;
    double theta_deg = 0.0; // far field
    double phi_deg = 0.0;
    double x = 0.0; // near field, meters
    double y = 0.0;
    double z = 0.0;
    double desired = 0.0;
};

// Raw scenario document. Angles stay in degrees here; to_scenario() converts.
struct ScenarioFile {
    // [array]
    int nx = 0;
    int ny = 0;
    double spacing_wavelengths = 0.0;
    double frequency_hz = 0.0;
    // [model]
    std::string regime; // "far" | "near"
    int max_degree = -1;
    double power = 4.0 * 3.14159265358979323846;
    std::string positivity_mode = "off"; // "off" | "fixed-b00"
    double rho = 0.8;
    // [samples]
    std::vector<SampleSpec> samples;
    // [solver]
    std::string solver = "cg"; // "cg" | "gd"
    int outer_max = 200;
    int inner_max = 100;
    double grad_tol = 1e-8;
    double obj_tol = 1e-10;
    double armijo_step = 1.0;
    double armijo_contraction = 0.5;
    double armijo_decrease = 1e-4;
    int armijo_max_backtracks = 50;
    std::uint64_t seed = 1;
    std::string warm_start = "none"; // "none" | "isotropic"
    int restarts = 1;
};

ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile parse_scenario_file(const std::string& path);

// Canonical text form; parse(serialize(x)) reproduces x exactly (doubles are
// printed with 17 significant digits).
std::string serialize_scenario(const ScenarioFile& file);

synthesis::Scenario to_scenario(const ScenarioFile& file);
synthesis::SolverConfig to_config(const ScenarioFile& file);

// Non-fatal observations, e.g. near-field samples beyond the Rayleigh
// distance.
std::vector<std::string> scenario_advisories(const ScenarioFile& file);

// FNV-1a over the canonical [array]/[model]/[samples] sections.
std::uint64_t scenario_hash(const ScenarioFile& file);

// Shortest exact decimal form (17 significant digits).
std::string format_double(double value);

inline constexpr double kSpeedOfLight = 299792458.0;

} // namespace era::cli

#endif
