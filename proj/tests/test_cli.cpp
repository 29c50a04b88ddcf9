#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "erabeam/runners.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("ERA_BEAM_CLI");
    REQUIRE_MESSAGE(env != nullptr, "ERA_BEAM_CLI must point at the era-beam binary");
    return env;
}

int run_cli(const std::string& args) {
    const std::string command = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
    std::ifstream input(path, std::ios::binary);
    REQUIRE(input.good());
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

const char* kQuickScenario = R"([array]
nx = 2
ny = 2
spacing_wavelengths = 0.5
frequency_hz = 30e9

[model]
regime = far
L = 1

[samples]
focal theta_deg=25 phi_deg=70 desired=4
null theta_deg=80 phi_deg=-40

[solver]
outer_max = 8
inner_max = 25
seed = 3
)";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::current_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("synthesize writes the three CSVs and reruns byte-identically") {
    TempDir tmp("cli_synth_tmp");
    const fs::path scenario = tmp.path / "quick.scn";
    std::ofstream(scenario) << kQuickScenario;

    const fs::path out_a = tmp.path / "a";
    const fs::path out_b = tmp.path / "b";
    CHECK(run_cli("synthesize " + scenario.string() + " --mode era --out " + out_a.string()) ==
          0);
    CHECK(run_cli("synthesize " + scenario.string() + " --mode era --out " + out_b.string()) ==
          0);

    for (const char* name : {"result.csv", "convergence.csv", "pattern.csv"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(out_a / name));
        CHECK(slurp(out_a / name) == slurp(out_b / name));
    }

    // First line of each CSV is a header.
    CHECK(slurp(out_a / "result.csv").rfind("key,value\n", 0) == 0);
    CHECK(slurp(out_a / "convergence.csv").rfind("outer_iteration,residual\n", 0) == 0);
    CHECK(slurp(out_a / "pattern.csv").rfind("theta_deg,phi_deg,magnitude\n", 0) == 0);
}

TEST_CASE("isotropic mode runs") {
    TempDir tmp("cli_iso_tmp");
    const fs::path scenario = tmp.path / "quick.scn";
    std::ofstream(scenario) << kQuickScenario;
    const fs::path out = tmp.path / "iso";
    CHECK(run_cli("synthesize " + scenario.string() + " --mode isotropic --out " +
                  out.string()) == 0);
    CHECK(slurp(out / "result.csv").find("mode,isotropic") != std::string::npos);
}

TEST_CASE("malformed scenario exits with code 2") {
    TempDir tmp("cli_bad_tmp");
    const fs::path scenario = tmp.path / "broken.scn";
    std::ofstream(scenario) << "[array]\nnx = 2\nunknown_key = 1\n";
    CHECK(run_cli("synthesize " + scenario.string() + " --out " + tmp.path.string()) == 2);
    CHECK(run_cli("synthesize " + (tmp.path / "missing.scn").string()) == 2);
    CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("pattern export from a result file") {
    TempDir tmp("cli_pattern_tmp");
    const fs::path scenario = tmp.path / "quick.scn";
    std::ofstream(scenario) << kQuickScenario;
    const fs::path out = tmp.path / "run";
    REQUIRE(run_cli("synthesize " + scenario.string() + " --out " + out.string()) == 0);

    const fs::path cut = tmp.path / "element1.csv";
    CHECK(run_cli("pattern " + (out / "result.csv").string() + " --element 1 --plane yoz" +
                  " --out " + cut.string()) == 0);
    const std::string text = slurp(cut);
    CHECK(text.rfind("kind,t,l,m,theta_deg,phi_deg,value\n", 0) == 0);
    // L = 1: four coefficient rows present.
    CHECK(text.find("coeff,1,0,0") != std::string::npos);
    CHECK(text.find("coeff,4,1,1") != std::string::npos);

    CHECK(run_cli("pattern " + (out / "result.csv").string() + " --element 9 --out " +
                  cut.string()) == 2);
    CHECK(run_cli("pattern " + scenario.string() + " --out " + cut.string()) == 2);
}

TEST_CASE("sweep emits one row per (N, mode, L)") {
    TempDir tmp("cli_sweep_tmp");
    const fs::path scenario = tmp.path / "quick.scn";
    std::ofstream(scenario) << kQuickScenario;
    const fs::path out = tmp.path / "sweep";
    CHECK(run_cli("sweep " + scenario.string() + " --n-list 1,4 --l-list 0,1 --out " +
                  out.string()) == 0);

    const std::string text = slurp(out / "sweep.csv");
    CHECK(text.rfind("N,mode,L,residual,normalized_residual\n", 0) == 0);
    int rows = 0;
    for (const char c : text)
        rows += c == '\n';
    CHECK(rows == 1 + 2 * 3); // header + 2 N values x (isotropic + 2 ERA degrees)
    CHECK(text.find("1,isotropic,0,") != std::string::npos);
    CHECK(text.find("4,era,1,") != std::string::npos);

    CHECK(run_cli("sweep " + scenario.string() + " --n-list 3 --l-list 1 --out " +
                  out.string()) == 2);
}

TEST_CASE("near-field synthesize exports a position grid") {
    TempDir tmp("cli_near_tmp");
    const fs::path scenario = tmp.path / "near.scn";
    std::ofstream(scenario) << R"([array]
nx = 1
ny = 8
spacing_wavelengths = 0.5
frequency_hz = 30e9

[model]
regime = near
L = 2

[samples]
focal x=0 y=0.01 z=0.3 desired=8
null  x=0 y=-0.02 z=0.4

[solver]
outer_max = 6
inner_max = 20
)";
    const fs::path out = tmp.path / "run";
    CHECK(run_cli("synthesize " + scenario.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out / "pattern.csv").rfind("x_m,y_m,z_m,magnitude\n", 0) == 0);

    const fs::path grid = tmp.path / "element_grid.csv";
    CHECK(run_cli("pattern " + (out / "result.csv").string() + " --element 8 --plane grid" +
                  " --out " + grid.string()) == 0);
    CHECK(slurp(grid).find("coeff,9,2,2") != std::string::npos);
}

TEST_CASE("positivity mode reports the scanned minimum gain") {
    TempDir tmp("cli_pos_tmp");
    const fs::path scenario = tmp.path / "pos.scn";
    std::ofstream(scenario) << R"([array]
nx = 2
ny = 1
spacing_wavelengths = 0.5
frequency_hz = 30e9

[model]
regime = far
L = 1
positivity_mode = fixed-b00
rho = 0.8

[samples]
focal theta_deg=40 phi_deg=10 desired=3

[solver]
outer_max = 5
inner_max = 20
)";
    const fs::path out = tmp.path / "run";
    CHECK(run_cli("synthesize " + scenario.string() + " --out " + out.string()) == 0);
    CHECK(slurp(out / "result.csv").find("min_element_gain,") != std::string::npos);
}

TEST_CASE("bundled scenario: L=4 coefficient export, constant isotropic pattern") {
    const char* scenarios = std::getenv("ERA_BEAM_SCENARIOS");
    REQUIRE_MESSAGE(scenarios != nullptr, "ERA_BEAM_SCENARIOS must point at scenarios/");
    const std::string bundled = std::string(scenarios) + "/farfield_4x4.scn";

    TempDir tmp("cli_bundled_tmp");
    const fs::path out = tmp.path / "iso";
    REQUIRE(run_cli("synthesize " + bundled + " --mode isotropic --out " + out.string()) ==
            0);

    const fs::path cut = tmp.path / "element1.csv";
    REQUIRE(run_cli("pattern " + (out / "result.csv").string() + " --element 1 --out " +
                    cut.string()) == 0);

    int coeff_rows = 0;
    std::vector<double> samples;
    std::istringstream csv(slurp(cut));
    std::string line;
    std::getline(csv, line); // header
    while (std::getline(csv, line)) {
        if (line.rfind("coeff,", 0) == 0)
            ++coeff_rows;
        else
            samples.push_back(std::stod(line.substr(line.rfind(',') + 1)));
    }
    CHECK(coeff_rows == 25); // T = 25 at L = 4
    REQUIRE(!samples.empty());
    for (const double value : samples)
        CHECK(value == doctest::Approx(samples.front()).epsilon(1e-12));
}

TEST_CASE("validate passes on a pristine build") {
    CHECK(run_cli("validate") == 0);
}
