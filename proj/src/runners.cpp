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

#include "erabeam/runners.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "erabeam/validation.hpp"

namespace era::cli {

namespace {

namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

void write_file_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << content;
    }
    fs::rename(tmp, path);
}

std::string hash_hex(std::uint64_t hash) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

std::string result_csv(const ScenarioFile& file, const std::string& mode,
                       const synthesis::SolveResult& result) {
    std::ostringstream out;
    out << "key,value\n";
    out << "format,era-beam-result-v1\n";
    out << "mode," << mode << "\n";
    out << "scenario_hash," << hash_hex(scenario_hash(file)) << "\n";
    out << "nx," << file.nx << "\n";
    out << "ny," << file.ny << "\n";
    out << "spacing_wavelengths," << format_double(file.spacing_wavelengths) << "\n";
    out << "frequency_hz," << format_double(file.frequency_hz) << "\n";
    out << "regime," << file.regime << "\n";
    out << "L," << file.max_degree << "\n";
    out << "T," << (file.max_degree + 1) * (file.max_degree + 1) << "\n";
    out << "power," << format_double(file.power) << "\n";
    out << "positivity_mode," << file.positivity_mode << "\n";
    out << "rho," << format_double(file.rho) << "\n";
    out << "solver," << file.solver << "\n";
    out << "seed," << file.seed << "\n";
    out << "warm_start," << file.warm_start << "\n";
    out << "restarts," << file.restarts << "\n";
    out << "outer_iterations," << result.outer_iterations << "\n";
    out << "inner_iterations," << result.inner_iterations << "\n";
    out << "hit_outer_limit," << (result.hit_outer_limit ? 1 : 0) << "\n";
    out << "line_search_stalled," << (result.line_search_stalled ? 1 : 0) << "\n";
    out << "residual," << format_double(result.residual) << "\n";
    if (!std::isnan(result.min_element_gain))
        out << "min_element_gain," << format_double(result.min_element_gain) << "\n";
    out << "n_samples," << file.samples.size() << "\n";
    for (std::size_t s = 0; s < file.samples.size(); ++s) {
        const SampleSpec& sample = file.samples[s];
        const std::string tag = "[" + std::to_string(s + 1) + "]";
        out << "sample_type" << tag << "," << sample.type << "\n";
        if (file.regime == "far") {
            out << "sample_theta_deg" << tag << "," << format_double(sample.theta_deg) << "\n";
            out << "sample_phi_deg" << tag << "," << format_double(sample.phi_deg) << "\n";
        } else {
            out << "sample_x" << tag << "," << format_double(sample.x) << "\n";
            out << "sample_y" << tag << "," << format_double(sample.y) << "\n";
            out << "sample_z" << tag << "," << format_double(sample.z) << "\n";
        }
        out << "desired" << tag << "," << format_double(sample.desired) << "\n";
        out << "weight" << tag << "," << format_double(sample.weight) << "\n";
        out << "achieved" << tag << "," << format_double(result.achieved[s]) << "\n";
        out << "psi" << tag << "," << format_double(result.aux_phases[s]) << "\n";
    }
    for (Eigen::Index i = 0; i < result.coeffs.size(); ++i)
        out << "b[" << (i + 1) << "]," << format_double(result.coeffs[i]) << "\n";
    for (Eigen::Index n = 0; n < result.phases.size(); ++n) {
        out << "f_re[" << (n + 1) << "]," << format_double(result.phases[n].real()) << "\n";
        out << "f_im[" << (n + 1) << "]," << format_double(result.phases[n].imag()) << "\n";
    }
    return out.str();
}

std::string convergence_csv(const synthesis::SolveResult& result) {
    std::ostringstream out;
    out << "outer_iteration,residual\n";
    for (std::size_t k = 0; k < result.history.size(); ++k)
        out << k << "," << format_double(result.history[k]) << "\n";
    return out.str();
}

std::string pattern_csv(const synthesis::Scenario& scn,
                        const synthesis::SolveResult& result) {
    std::ostringstream out;
    std::vector<em::SampleTarget> grid;
    if (scn.regime == em::Regime::far) {
        for (int theta_deg = 0; theta_deg <= 180; theta_deg += 2)
            for (int phi_deg = -180; phi_deg < 180; phi_deg += 2) {
                geometry::Direction dir;
                dir.theta = theta_deg * kPi / 180.0;
                dir.phi = phi_deg * kPi / 180.0;
                grid.push_back(em::SampleTarget::far_sample(dir));
            }
        const std::vector<double> values = em::beampattern_grid(
            result.coeffs, result.phases, scn.geometry, scn.truncation, grid);
        out << "theta_deg,phi_deg,magnitude\n";
        std::size_t slot = 0;
        for (int theta_deg = 0; theta_deg <= 180; theta_deg += 2)
            for (int phi_deg = -180; phi_deg < 180; phi_deg += 2)
                out << theta_deg << "," << phi_deg << ","
                    << format_double(values[slot++]) << "\n";
        return out.str();
    }

    // Near field: an 81 x 81 slice through the sample cloud, parallel to the
    // YZ plane.
    Eigen::Vector3d lo = scn.samples.front().target.position;
    Eigen::Vector3d hi = lo;
    for (const synthesis::Sample& sample : scn.samples) {
        lo = lo.cwiseMin(sample.target.position);
        hi = hi.cwiseMax(sample.target.position);
    }
    const double aperture = std::hypot((scn.geometry.nx - 1) * scn.geometry.spacing,
                                       (scn.geometry.ny - 1) * scn.geometry.spacing);
    const double x_plane = (lo.x() + hi.x()) / 2.0;
    const double pad_y = 0.5 * (hi.y() - lo.y()) + aperture + scn.geometry.wavelength;
    const double pad_z = 0.5 * (hi.z() - lo.z()) + aperture + scn.geometry.wavelength;
    const double y0 = lo.y() - pad_y, y1 = hi.y() + pad_y;
    const double z0 = lo.z() - pad_z, z1 = hi.z() + pad_z;

    constexpr int kGrid = 81;
    for (int i = 0; i < kGrid; ++i) {
        const double y = y0 + (y1 - y0) * i / (kGrid - 1);
        for (int j = 0; j < kGrid; ++j) {
            const double z = z0 + (z1 - z0) * j / (kGrid - 1);
            grid.push_back(em::SampleTarget::near_sample({x_plane, y, z}));
        }
    }
    const std::vector<double> values = em::beampattern_grid(
        result.coeffs, result.phases, scn.geometry, scn.truncation, grid);
    out << "x_m,y_m,z_m,magnitude\n";
    for (std::size_t slot = 0; slot < grid.size(); ++slot)
        out << format_double(grid[slot].position.x()) << ","
            << format_double(grid[slot].position.y()) << ","
            << format_double(grid[slot].position.z()) << ","
            << format_double(values[slot]) << "\n";
    return out.str();
}

} // namespace

int thread_cap() {
    if (const char* env = std::getenv("ERA_BEAM_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1)
                return cap;
        } catch (const std::exception&) {
            // fall through to the default
        }
        std::cerr << "era-beam: ignoring invalid ERA_BEAM_THREADS='" << env << "'\n";
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int cmd_synthesize(const SynthesizeOptions& options) {
    if (options.mode != "era" && options.mode != "isotropic") {
        std::cerr << "era-beam: --mode must be era or isotropic\n";
        return kExitUsage;
    }

    ScenarioFile file;
    try {
        file = parse_scenario_file(options.scenario_path);
    } catch (const ParseError& err) {
        std::cerr << "era-beam: " << options.scenario_path;
        if (err.line() > 0)
            std::cerr << ":" << err.line();
        std::cerr << ": " << err.what() << "\n";
        return kExitUsage;
    }
    for (const std::string& note : scenario_advisories(file))
        std::cerr << "era-beam: warning: " << note << "\n";

    const synthesis::Scenario scn = to_scenario(file);
    const synthesis::SolverConfig cfg = to_config(file);

    const auto start = std::chrono::steady_clock::now();
    const synthesis::SolveResult result = options.mode == "era"
                                              ? synthesis::synthesize(scn, cfg)
                                              : synthesis::synthesize_isotropic(scn, cfg);

    RunRecord record;
    record.scenario_hash = scenario_hash(file);
    record.mode = options.mode;
    record.n_elements = scn.geometry.size();
    record.max_degree = file.max_degree;
    record.seed = file.seed;
    record.residual = result.residual;
    record.normalized_residual = 1.0;
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record.outer_iterations = result.outer_iterations;
    record.inner_iterations = result.inner_iterations;

    fs::create_directories(options.out_dir);
    const fs::path out_dir(options.out_dir);
    write_file_atomic(out_dir / "result.csv", result_csv(file, options.mode, result));
    write_file_atomic(out_dir / "convergence.csv", convergence_csv(result));
    write_file_atomic(out_dir / "pattern.csv", pattern_csv(scn, result));

    std::cout << "era-beam synthesize: mode=" << record.mode << " solver=" << file.solver
              << " N=" << record.n_elements << " L=" << record.max_degree
              << " S=" << scn.samples.size() << " seed=" << record.seed
              << " scenario=" << hash_hex(record.scenario_hash)
              << " residual=" << format_double(record.residual)
              << " outer=" << record.outer_iterations << " inner=" << record.inner_iterations
              << " wall=" << record.wall_time_s << "s\n";
    if (!std::isnan(result.min_element_gain))
        std::cout << "era-beam synthesize: min element gain over 1-degree grid = "
                  << format_double(result.min_element_gain) << "\n";
    std::cout << "era-beam synthesize: wrote " << (out_dir / "result.csv").string() << ", "
              << (out_dir / "convergence.csv").string() << ", "
              << (out_dir / "pattern.csv").string() << "\n";
    return kExitOk;
}

namespace {

// One sweep column: the isotropic baseline then the ERA ladder at one N.
// With warm starts enabled (and positivity off) each ERA run continues from
// the previous truncation's solution, so residuals are non-increasing in L by
// construction.
struct SweepCell {
    int n_elements = 0;
    std::vector<RunRecord> runs; // isotropic first, then one per L
};

SweepCell run_sweep_cell(const ScenarioFile& base, int side, const std::vector<int>& l_list) {
    ScenarioFile file = base;
    file.nx = side;
    file.ny = side;

    SweepCell cell;
    cell.n_elements = side * side;

    const synthesis::SolverConfig cfg = to_config(file);
    synthesis::Scenario scn = to_scenario(file);

    auto record_run = [&](const std::string& mode, int max_degree,
                          const synthesis::SolveResult& result, double wall) {
        RunRecord record;
        record.scenario_hash = scenario_hash(file);
        record.mode = mode;
        record.n_elements = cell.n_elements;
        record.max_degree = max_degree;
        record.seed = file.seed;
        record.residual = result.residual;
        record.wall_time_s = wall;
        record.outer_iterations = result.outer_iterations;
        record.inner_iterations = result.inner_iterations;
        cell.runs.push_back(record);
    };

    auto now = [] { return std::chrono::steady_clock::now(); };
    auto start = now();
    const synthesis::SolveResult iso = synthesis::synthesize_isotropic(scn, cfg);
    record_run("isotropic", 0, iso, std::chrono::duration<double>(now() - start).count());

    const bool chain = file.warm_start == "isotropic" && file.positivity_mode == "off";
    Eigen::VectorXd prev_coeffs;
    Eigen::VectorXcd prev_phases = iso.phases;
    int prev_t = 0;

    for (const int max_degree : l_list) {
        scn.truncation = harmonics::TruncationSpec::from_degree(max_degree);
        start = now();
        if (!chain) {
            ScenarioFile point = file;
            point.max_degree = max_degree;
            const synthesis::SolveResult result =
                synthesis::synthesize(to_scenario(point), cfg);
            record_run("era", max_degree, result,
                       std::chrono::duration<double>(now() - start).count());
            continue;
        }

        synthesis::SolverConfig run_cfg = cfg;
        run_cfg.warm_start = synthesis::WarmStart::none;
        const synthesis::SynthesisProblem problem(scn, run_cfg);

        manifold::ProductPoint x0;
        x0.coeffs = Eigen::MatrixXd::Zero(scn.truncation.length, scn.geometry.size());
        if (prev_t == 0) {
            x0.coeffs.row(0).setOnes(); // the isotropic block
        } else {
            const double sqrt_p = std::sqrt(scn.element_power);
            const Eigen::Map<const Eigen::MatrixXd> prev_blocks(
                prev_coeffs.data(), prev_t, scn.geometry.size());
            x0.coeffs.topRows(prev_t) = prev_blocks / sqrt_p;
        }
        x0.phases = prev_phases;

        const synthesis::SolveResult result = problem.solve_from(x0);
        record_run("era", max_degree, result,
                   std::chrono::duration<double>(now() - start).count());
        prev_coeffs = result.coeffs;
        prev_phases = result.phases;
        prev_t = scn.truncation.length;
    }
    return cell;
}

} // namespace

int cmd_sweep(const SweepOptions& options) {
    ScenarioFile base;
    try {
        base = parse_scenario_file(options.scenario_path);
    } catch (const ParseError& err) {
        std::cerr << "era-beam: " << options.scenario_path;
        if (err.line() > 0)
            std::cerr << ":" << err.line();
        std::cerr << ": " << err.what() << "\n";
        return kExitUsage;
    }
    if (base.regime != "far") {
        std::cerr << "era-beam: sweep requires a far-field scenario\n";
        return kExitUsage;
    }
    if (options.n_list.empty() || options.l_list.empty()) {
        std::cerr << "era-beam: sweep needs nonempty --n-list and --l-list\n";
        return kExitUsage;
    }

    std::vector<int> n_list = options.n_list;
    std::sort(n_list.begin(), n_list.end());
    n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
    std::vector<int> sides;
    for (const int n : n_list) {
        const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
        if (n < 1 || side * side != n) {
            std::cerr << "era-beam: N=" << n << " is not a perfect square\n";
            return kExitUsage;
        }
        sides.push_back(side);
    }
    std::vector<int> l_list = options.l_list;
    std::sort(l_list.begin(), l_list.end());
    l_list.erase(std::unique(l_list.begin(), l_list.end()), l_list.end());
    if (l_list.front() < 0) {
        std::cerr << "era-beam: truncation degrees must be nonnegative\n";
        return kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    std::vector<SweepCell> cells(sides.size());
    std::vector<std::string> worker_errors(sides.size());
    {
        std::atomic<std::size_t> next{0};
        const int workers =
            std::min<int>(thread_cap(), static_cast<int>(sides.size()));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < sides.size();
                     i = next.fetch_add(1)) {
                    try {
                        cells[i] = run_sweep_cell(base, sides[i], l_list);
                    } catch (const std::exception& err) {
                        worker_errors[i] = err.what();
                    }
                }
            });
        for (std::thread& worker : pool)
            worker.join();
    }
    for (std::size_t i = 0; i < worker_errors.size(); ++i)
        if (!worker_errors[i].empty()) {
            std::cerr << "era-beam: sweep point N=" << sides[i] * sides[i]
                      << " failed: " << worker_errors[i] << "\n";
            return kExitCheckFailure;
        }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // Normalize every curve by the isotropic residual at the smallest N.
    std::size_t min_index = 0;
    for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i].n_elements < cells[min_index].n_elements)
            min_index = i;
    const double normalizer = cells[min_index].runs.front().residual;
    if (normalizer <= 0.0)
        std::cerr << "era-beam: warning: isotropic baseline residual at N="
                  << cells[min_index].n_elements
                  << " is zero; normalized residuals are not meaningful\n";

    std::vector<std::size_t> order(cells.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return cells[a].n_elements < cells[b].n_elements;
    });

    std::ostringstream out;
    out << "N,mode,L,residual,normalized_residual\n";
    for (const std::size_t i : order) {
        for (RunRecord& record : cells[i].runs) {
            record.normalized_residual =
                normalizer > 0.0 ? record.residual / normalizer : 0.0;
            out << record.n_elements << "," << record.mode << "," << record.max_degree
                << "," << format_double(record.residual) << ","
                << format_double(record.normalized_residual) << "\n";
            std::cout << "era-beam sweep: N=" << record.n_elements << " mode=" << record.mode
                      << " L=" << record.max_degree
                      << " residual=" << format_double(record.residual)
                      << " normalized=" << format_double(record.normalized_residual)
                      << " outer=" << record.outer_iterations
                      << " inner=" << record.inner_iterations
                      << " wall=" << record.wall_time_s << "s\n";
        }
    }

    fs::create_directories(options.out_dir);
    write_file_atomic(fs::path(options.out_dir) / "sweep.csv", out.str());
    std::cout << "era-beam sweep: " << sides.size() << " array sizes x " << l_list.size()
              << " truncation degrees, wall=" << wall << "s, wrote "
              << (fs::path(options.out_dir) / "sweep.csv").string() << "\n";
    return kExitOk;
}

namespace {

std::map<std::string, std::string> read_result_csv(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input)
        throw ParseError("cannot open result file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ParseError("expected key,value", line_no);
        if (line_no == 1)
            continue; // header row
        values[line.substr(0, comma)] = line.substr(comma + 1);
    }
    if (values["format"] != "era-beam-result-v1")
        throw ParseError("'" + path + "' is not an era-beam result file");
    return values;
}

const std::string& require(const std::map<std::string, std::string>& values,
                           const std::string& key) {
    const auto it = values.find(key);
    if (it == values.end())
        throw ParseError("result file is missing key '" + key + "'");
    return it->second;
}

} // namespace

int cmd_pattern(const PatternOptions& options) {
    if (options.plane != "yoz" && options.plane != "grid") {
        std::cerr << "era-beam: --plane must be yoz or grid\n";
        return kExitUsage;
    }

    std::map<std::string, std::string> values;
    int n_elements = 0, max_degree = 0;
    Eigen::VectorXd block;
    try {
        values = read_result_csv(options.result_path);
        n_elements = std::stoi(require(values, "nx")) * std::stoi(require(values, "ny"));
        max_degree = std::stoi(require(values, "L"));
        const int t_len = (max_degree + 1) * (max_degree + 1);
        if (options.element < 1 || options.element > n_elements) {
            std::cerr << "era-beam: --element must lie in 1.." << n_elements << "\n";
            return kExitUsage;
        }
        block.resize(t_len);
        const int offset = (options.element - 1) * t_len;
        for (int t = 0; t < t_len; ++t)
            block[t] = std::stod(require(values, "b[" + std::to_string(offset + t + 1) + "]"));
    } catch (const ParseError& err) {
        std::cerr << "era-beam: " << err.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& err) {
        std::cerr << "era-beam: malformed result file: " << err.what() << "\n";
        return kExitUsage;
    }

    const harmonics::TruncationSpec spec = harmonics::TruncationSpec::from_degree(max_degree);
    std::ostringstream out;
    out << "kind,t,l,m,theta_deg,phi_deg,value\n";
    for (int t = 1; t <= spec.length; ++t) {
        const harmonics::HarmonicIndex idx = harmonics::unflatten(t, max_degree);
        out << "coeff," << t << "," << idx.degree << "," << idx.order << ",,,"
            << format_double(block[t - 1]) << "\n";
    }

    auto emit = [&](double theta_deg, double phi_deg) {
        const double gain = harmonics::pattern_eval(block, spec, theta_deg * kPi / 180.0,
                                                    phi_deg * kPi / 180.0);
        out << "sample,,,," << format_double(theta_deg) << "," << format_double(phi_deg)
            << "," << format_double(gain) << "\n";
    };
    if (options.plane == "yoz") {
        for (int theta_deg = 0; theta_deg <= 180; ++theta_deg)
            emit(theta_deg, 90.0);
        for (int theta_deg = 0; theta_deg <= 180; ++theta_deg)
            emit(theta_deg, -90.0);
    } else {
        for (int theta_deg = 0; theta_deg <= 180; theta_deg += 2)
            for (int phi_deg = -180; phi_deg < 180; phi_deg += 2)
                emit(theta_deg, phi_deg);
    }

    write_file_atomic(options.out_path, out.str());
    std::cout << "era-beam pattern: element " << options.element << " (" << options.plane
              << ") -> " << options.out_path << "\n";
    return kExitOk;
}

int cmd_validate() {
    bool all_passed = true;
    for (const validation::CheckResult& check : validation::run_all_checks()) {
        std::cout << (check.passed ? "PASS" : "FAIL") << " " << check.name << " value="
                  << format_double(check.value) << " threshold="
                  << format_double(check.threshold) << " (" << check.detail << ")\n";
        all_passed = all_passed && check.passed;
    }
    return all_passed ? kExitOk : kExitCheckFailure;
}

} // namespace era::cli
