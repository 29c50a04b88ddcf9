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

#ifndef ERABEAM_RUNNERS_HPP
#define ERABEAM_RUNNERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "erabeam/scenario_io.hpp"

namespace era::cli {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

// Bookkeeping for one solve inside a sweep or synthesize run. Wall time is
// reported on stdout only; CSV outputs stay byte-reproducible.
struct RunRecord {
    std::uint64_t scenario_hash = 0;
    std::string mode; // "era" | "isotropic"
    int n_elements = 0;
    int max_degree = 0;
    std::uint64_t seed = 0;
    double residual = 0.0;
    double normalized_residual = 0.0;
    double wall_time_s = 0.0;
    int outer_iterations = 0;
    long inner_iterations = 0;
};

struct SynthesizeOptions {
    std::string scenario_path;
    std::string mode = "era"; // "era" | "isotropic"
    std::string out_dir = ".";
};

struct SweepOptions {
    std::string scenario_path;
    std::vector<int> n_list;
    std::vector<int> l_list;
    std::string out_dir = ".";
};

struct PatternOptions {
    std::string result_path;
    int element = 1;           // 1-based
    std::string plane = "yoz"; // "yoz" | "grid"
    std::string out_path;
};

// Write result.csv, convergence.csv and pattern.csv into out_dir.
int cmd_synthesize(const SynthesizeOptions& options);

// Residual-vs-N sweep over isotropic and ERA runs; writes sweep.csv.
int cmd_sweep(const SweepOptions& options);

// Per-element pattern cut plus the raw coefficient block of one element,
// read back from a result.csv.
int cmd_pattern(const PatternOptions& options);

// Fast invariant suite; one PASS/FAIL line per check.
int cmd_validate();

// Thread cap from ERA_BEAM_THREADS (defaults to the hardware count).
int thread_cap();

} // namespace era::cli

#endif
