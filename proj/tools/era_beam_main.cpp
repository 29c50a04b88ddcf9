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

#include <CLI11.hpp>
#include <iostream>

#include "erabeam/runners.hpp"

int main(int argc, char** argv) {
    CLI::App app{"era-beam: array beampattern synthesis with reconfigurable"
                 " element patterns and analog phase shifts"};
    app.require_subcommand(1);

    era::cli::SynthesizeOptions synth;
    CLI::App* synthesize =
        app.add_subcommand("synthesize", "Solve one scenario and export CSVs");
    synthesize->add_option("scenario", synth.scenario_path, "Scenario file")->required();
    synthesize->add_option("--mode", synth.mode, "era | isotropic")
        ->check(CLI::IsMember({"era", "isotropic"}))
        ->capture_default_str();
    synthesize->add_option("--out", synth.out_dir, "Output directory")
        ->capture_default_str();

    era::cli::SweepOptions sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Residual vs array size for several truncation degrees");
    sweep_cmd->add_option("scenario", sweep.scenario_path, "Base scenario file")->required();
    sweep_cmd->add_option("--n-list", sweep.n_list, "Antenna counts (perfect squares)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--l-list", sweep.l_list, "Truncation degrees")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory")->capture_default_str();

    era::cli::PatternOptions pattern;
    CLI::App* pattern_cmd = app.add_subcommand(
        "pattern", "Export one element's radiation pattern from a result.csv");
    pattern_cmd->add_option("result", pattern.result_path, "result.csv from synthesize")
        ->required();
    pattern_cmd->add_option("--element", pattern.element, "Element index (1-based)")
        ->capture_default_str();
    pattern_cmd->add_option("--plane", pattern.plane, "yoz | grid")
        ->check(CLI::IsMember({"yoz", "grid"}))
        ->capture_default_str();
    pattern_cmd->add_option("--out", pattern.out_path, "Output CSV path")->required();

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "Run the fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return era::cli::kExitUsage;
    }

    try {
        if (synthesize->parsed())
            return era::cli::cmd_synthesize(synth);
        if (sweep_cmd->parsed())
            return era::cli::cmd_sweep(sweep);
        if (pattern_cmd->parsed())
            return era::cli::cmd_pattern(pattern);
        if (validate_cmd->parsed())
            return era::cli::cmd_validate();
    } catch (const era::cli::ParseError& err) {
        std::cerr << "era-beam: " << err.what() << "\n";
        return era::cli::kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "era-beam: " << err.what() << "\n";
        return era::cli::kExitCheckFailure;
    }
    return era::cli::kExitUsage;
}
