#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "spdc/cli/commands.hpp"
#include "spdc/cli/csv.hpp"
#include "spdc/cli/svg.hpp"

using namespace spdc;
using namespace spdc::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("spdc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    return rows;
}

const char* kSshConfig =
    "geometry = ssh\n"
    "n_guides = 13\n"
    "coupling = 2.5\n"
    "dimerization = 0.5\n"
    "pump_ratio = 0.2\n"
    "length = 2.0\n"
    "disorder = 0.4\n"
    "realizations = 4\n"
    "master_seed = 1\n";

} // namespace

TEST_CASE("config parsing: defaults, comments, and overrides") {
    const RunConfig cfg = parse_config_text(
        "# comment line\n"
        "geometry = ssh   # trailing comment\n"
        "dimerization = 0.5\n"
        "\n"
        "master_seed = 42\n");
    CHECK(cfg.spec.geometry == Geometry::SSH);
    CHECK(cfg.spec.n_guides == 13);
    CHECK(cfg.spec.mean_coupling == 2.5);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.realizations == 300);
    CHECK(cfg.solver == SolverKind::ClosedForm);
    // default grid follows the coupling
    const SpectrumGrid g = cfg.grid();
    CHECK(g.size() == 481);
    CHECK(g.points.front() == doctest::Approx(-15.0));
}

TEST_CASE("config parsing rejects unknown keys and bad values") {
    CHECK_THROWS_AS(parse_config_text("geomtry = ssh\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("geometry = hexagonal\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("coupling = fast\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("n_guides = 12\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("disorder = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid_min = -3\n"), ConfigError); // needs grid_max
    CHECK_THROWS_AS(parse_config_text("disorder_list = 0.4,0.2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("threads = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("geometry = ssh\ngeometry = ssh\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("solver = magic\n"), ConfigError);
}

TEST_CASE("canonical config text round-trips through the parser") {
    RunConfig cfg = parse_config_text(kSshConfig);
    cfg.disorder_list = {0.1, 0.2};
    cfg.geometries = {Geometry::Homogeneous, Geometry::SSH};
    const std::string echo = canonical_config_text(cfg);
    const RunConfig back = parse_config_text(echo);
    CHECK(canonical_config_text(back) == echo);
    CHECK(back.spec.geometry == Geometry::SSH);
    CHECK(back.disorder_list == cfg.disorder_list);
    CHECK(back.master_seed == cfg.master_seed);
}

TEST_CASE("cmd_spectrum writes one block per realization plus the reference") {
    TempDir tmp;
    RunConfig cfg = parse_config_text(kSshConfig);
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    REQUIRE(cmd_spectrum(cfg, err) == kExitOk);

    const std::string csv = slurp(tmp.path / "spectrum.csv");
    const auto rows = parse_csv(csv);
    REQUIRE(rows.size() == 1 + 5 * 481);
    CHECK(rows[0] == std::vector<std::string>{"realization", "detune_mm_inv", "dlambda_nm",
                                              "intensity_norm"});
    CHECK(rows[1][0] == "-1");              // disorder-free block first
    CHECK(rows[1 + 481][0] == "0");         // then realization 0
    CHECK(rows[1 + 5 * 481 - 1][0] == "3"); // last row of realization 3

    // Fig.-2m-style check: each disordered peak within 0.05 nm of the reference
    const Lattice nominal = build_lattice(cfg.spec);
    const SpectrumGrid grid = cfg.grid();
    const Spectrum ref = resonance_spectrum(nominal, grid, SolverKind::ClosedForm);
    for (std::uint64_t r = 0; r < 4; ++r) {
        const Lattice lat = apply_disorder(nominal, DisorderSpec{0.4, cfg.master_seed, r});
        const Spectrum s = resonance_spectrum(lat, grid, SolverKind::ClosedForm);
        CHECK(std::abs(peak_shift_nm(s, ref, cfg.map)) < 0.05);
    }

    const std::string svg = slurp(tmp.path / "spectrum.svg");
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("polyline") != std::string::npos);

    // deterministic rerun is byte-identical
    TempDir tmp2;
    RunConfig cfg2 = cfg;
    cfg2.out_dir = tmp2.path.string();
    std::ostringstream err2;
    REQUIRE(cmd_spectrum(cfg2, err2) == kExitOk);
    CHECK(slurp(tmp2.path / "spectrum.csv") == csv);
}

TEST_CASE("cmd_spectrum with zero disorder emits a single block") {
    TempDir tmp;
    RunConfig cfg = parse_config_text("geometry = homogeneous\n");
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    REQUIRE(cmd_spectrum(cfg, err) == kExitOk);
    const auto rows = parse_csv(slurp(tmp.path / "spectrum.csv"));
    CHECK(rows.size() == 1 + 481);
    CHECK(rows[1][0] == "-1");
}

TEST_CASE("cmd_sweep output is byte-identical across thread counts") {
    const char* sweep_cfg =
        "geometry = ssh\n"
        "dimerization = 0.5\n"
        "disorder_list = 0.2,0.4\n"
        "realizations = 6\n"
        "grid_min = -15\n"
        "grid_max = 15\n"
        "grid_points = 121\n"
        "master_seed = 7\n";

    TempDir tmp1, tmp2;
    RunConfig cfg = parse_config_text(sweep_cfg);
    cfg.out_dir = tmp1.path.string();
    cfg.threads = 1;
    std::ostringstream err;
    REQUIRE(cmd_sweep(cfg, err) == kExitOk);

    RunConfig cfg3 = parse_config_text(sweep_cfg);
    cfg3.out_dir = tmp2.path.string();
    cfg3.threads = 3;
    REQUIRE(cmd_sweep(cfg3, err) == kExitOk);

    const std::string csv1 = slurp(tmp1.path / "sweep.csv");
    CHECK(csv1 == slurp(tmp2.path / "sweep.csv"));
    const auto rows = parse_csv(csv1);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][0] == "geometry");
    CHECK(rows[1][0] == "ssh");
    CHECK(rows[1][1] == "0.2");
    CHECK(rows[2][1] == "0.4");

    // manifest carries the reproduction recipe
    const auto manifest = nlohmann::json::parse(slurp(tmp1.path / "manifest.json"));
    CHECK(manifest["tool"] == "spdc-array");
    CHECK(manifest["command"] == "sweep");
    CHECK(manifest["rng_scheme"] == "splitmix64-v1");
    CHECK(manifest["config"]["master_seed"] == 7);
    const RunConfig echoed = parse_config_text(manifest["config_text"].get<std::string>());
    CHECK(echoed.master_seed == 7);
    CHECK(echoed.disorder_list == std::vector<double>{0.2, 0.4});
}

TEST_CASE("cmd_sweep requires a disorder list") {
    TempDir tmp;
    RunConfig cfg = parse_config_text("geometry = ssh\ndimerization = 0.5\n");
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    CHECK(dispatch("sweep", cfg, err) == kExitConfigError);
    CHECK(err.str().find("disorder_list") != std::string::npos);
}

TEST_CASE("cmd_modes reports eigenvalues and flags the localized mode") {
    TempDir tmp;
    RunConfig cfg = parse_config_text("geometry = homogeneous\nn_guides = 3\n");
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    REQUIRE(cmd_modes(cfg, err) == kExitOk);
    auto rows = parse_csv(slurp(tmp.path / "modes.csv"));
    REQUIRE(rows.size() == 4);
    CHECK(std::stod(rows[1][1]) == doctest::Approx(-3.5355339).epsilon(1e-6));
    CHECK(std::stod(rows[2][1]) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(std::stod(rows[3][1]) == doctest::Approx(3.5355339).epsilon(1e-6));

    // disordered SSH keeps the zero mode flagged, off the odd sublattice
    TempDir tmp2;
    RunConfig ssh = parse_config_text(
        "geometry = ssh\ndimerization = 0.5\ndisorder = 0.4\nmaster_seed = 3\n");
    ssh.out_dir = tmp2.path.string();
    REQUIRE(cmd_modes(ssh, err) == kExitOk);
    rows = parse_csv(slurp(tmp2.path / "modes.csv"));
    REQUIRE(rows.size() == 14);
    int flagged = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][5] == "1") {
            ++flagged;
            CHECK(std::abs(std::stod(rows[i][1])) < 1e-10 * 2.5);
            CHECK(std::stod(rows[i][4]) < 1e-10);
        }
    }
    CHECK(flagged == 1);
    const auto vecs = parse_csv(slurp(tmp2.path / "eigenvectors.csv"));
    CHECK(vecs.size() == 14);     // header + 13 sites
    CHECK(vecs[0].size() == 14);  // site + 13 modes
}

TEST_CASE("cmd_compare needs at least two geometries and a disorder list") {
    TempDir tmp;
    RunConfig cfg = parse_config_text(
        "geometries = ssh\ndimerization = 0.5\ndisorder_list = 0.2\nrealizations = 4\n");
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    CHECK(dispatch("compare", cfg, err) == kExitConfigError);
}

TEST_CASE("cmd_compare writes one row per geometry and disorder") {
    TempDir tmp;
    RunConfig cfg = parse_config_text(
        "geometries = homogeneous,ssh\n"
        "dimerization = 0.5\n"
        "defect_detune = 5.0\n"
        "disorder_list = 0.2\n"
        "realizations = 4\n"
        "grid_points = 161\n"
        "grid_min = -15\n"
        "grid_max = 15\n"
        "threads = 2\n");
    cfg.out_dir = tmp.path.string();
    std::ostringstream err;
    REQUIRE(cmd_compare(cfg, err) == kExitOk);
    const auto rows = parse_csv(slurp(tmp.path / "compare.csv"));
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "homogeneous");
    CHECK(rows[2][0] == "ssh");
    const std::string svg = slurp(tmp.path / "compare.svg");
    CHECK(svg.find("<rect") != std::string::npos);
}

TEST_CASE("dispatch maps unknown commands and bad configs to exit code 2") {
    RunConfig cfg = parse_config_text("geometry = homogeneous\n");
    std::ostringstream err;
    CHECK(dispatch("frobnicate", cfg, err) == kExitConfigError);
}

TEST_CASE("numbers serialize with nine significant digits") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.123456789123) == "0.123456789");
    CHECK(format_number(-15.0) == "-15");
    CHECK(format_number(2.5e-10) == "2.5e-10");
}
