#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = FTQ_CLI_PATH;
const fs::path kConfigDir = FTQ_CONFIG_DIR;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "ftq_cli_tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file = scratch_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    const std::string cmd = "'" + kCli + "' " + args + " > '" + out_file.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    result.output = ss.str();
    return result;
}

fs::path write_config(const std::string& name, const std::string& body) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line))
        if (!line.empty()) lines.push_back(line);
    return lines;
}

} // namespace

TEST_CASE("cli: solve-single emits a parseable clearing record") {
    const CliResult r = run_cli("solve-single --config '" +
                                (kConfigDir / "default.json").string() + "'");
    REQUIRE(r.exit_code == 0);
    const json record = json::parse(r.output);
    CHECK(std::abs(record["c"].get<double>() - 0.65) <= 1e-8);
    CHECK(record["residual"].get<double>() <= 1e-9);
    CHECK(record["iterations"].get<int>() > 0);
}

TEST_CASE("cli: solve-priority reports the system, masses and thresholds") {
    const fs::path out = scratch_dir() / "priority_out";
    const CliResult r = run_cli("solve-priority --config '" +
                                (kConfigDir / "default.json").string() + "' --out '" +
                                out.string() + "'");
    REQUIRE(r.exit_code == 0);
    const json record = json::parse(r.output);
    CHECK(record["system"]["c1"].get<double>() > 0.65);
    CHECK(record["system"]["c2"].get<double>() == 0.45);
    CHECK(record["residual"].get<double>() <= 1e-8);
    CHECK(record["y_lower"]["status"] == "interior");
    CHECK(record["y_upper"]["status"] == "interior");
    CHECK(record["y_lower"]["income"].get<double>() < record["y_upper"]["income"].get<double>());
    // the file copy re-parses to the same record
    CHECK(json::parse(slurp(out / "priority.json")) == record);
}

TEST_CASE("cli: exit code contract") {
    // capacity precondition: exit 2
    const fs::path bad_rho = write_config("bad_rho.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.0,
        "regime": {"kind": "single"}
    })");
    CHECK(run_cli("solve-single --config '" + bad_rho.string() + "'").exit_code == 2);

    // degenerate request: exit 2
    const fs::path degen = write_config("degen.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c1": 0.5, "c2": 0.5}
    })");
    CHECK(run_cli("solve-priority --config '" + degen.string() + "'").exit_code == 2);

    // infeasible clearing: exit 3, message names the achievable range
    const fs::path infeasible = write_config("infeasible.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c2": 0.1, "p": 0.09}
    })");
    const CliResult inf = run_cli("solve-priority --config '" + infeasible.string() + "'");
    CHECK(inf.exit_code == 3);
    CHECK(inf.output.find("achievable served mass") != std::string::npos);

    // unknown keys are rejected: exit 2
    const fs::path unknown = write_config("unknown.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "single"},
        "surprise": true
    })");
    CHECK(run_cli("solve-single --config '" + unknown.string() + "'").exit_code == 2);

    // missing config file and malformed JSON: exit 2
    CHECK(run_cli("solve-single --config '" + (scratch_dir() / "nope.json").string() + "'")
              .exit_code == 2);
    const fs::path broken = write_config("broken.json", "{ not json");
    CHECK(run_cli("solve-single --config '" + broken.string() + "'").exit_code == 2);

    // bad command line: exit 2
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
}

TEST_CASE("cli: verify passes the shipped config and fails when corrupted") {
    const fs::path cfg = write_config("verify_small.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c2": 0.45, "p": 0.25},
        "verification": {"grid_n": 120, "monte_carlo_n": 100000, "seed": 5}
    })");
    const fs::path out = scratch_dir() / "verify_out";
    const CliResult ok = run_cli("verify --config '" + cfg.string() + "' --out '" +
                                 out.string() + "'");
    REQUIRE(ok.exit_code == 0);
    const json record = json::parse(ok.output);
    CHECK(record["pass"] == true);
    CHECK(record["grid"]["violations"] == 0);
    CHECK(record["monte_carlo"]["violations"] == 0);

    // report.csv carries the documented band schema
    const auto lines = lines_of(slurp(out / "report.csv"));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "band,gain_count,loss_count,indiff_count");
    CHECK(lines[1].rfind("low,", 0) == 0);
    CHECK(lines[2].rfind("middle,", 0) == 0);
    CHECK(lines[3].rfind("high,", 0) == 0);

    // negative control: doctored cutoffs must flip the exit code
    const CliResult corrupted =
        run_cli("verify --config '" + cfg.string() + "' --corrupt-thresholds 0.12");
    CHECK(corrupted.exit_code == 1);
    CHECK(json::parse(corrupted.output)["pass"] == false);

    // a tiny grid still runs clean
    const fs::path tiny = write_config("verify_tiny.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c2": 0.45, "p": 0.25},
        "verification": {"grid_n": 2, "monte_carlo_n": 10, "seed": 5}
    })");
    CHECK(run_cli("verify --config '" + tiny.string() + "'").exit_code == 0);
}

TEST_CASE("cli: verify and simulate are byte-deterministic under a fixed seed") {
    const fs::path cfg = write_config("determinism.json", R"({
        "distribution": {"kind": "gaussian-copula", "r": 0.5,
                         "alpha_y": 2.0, "beta_y": 2.0, "alpha_theta": 2.0, "beta_theta": 2.0},
        "value_function": {"kind": "crra", "gamma": 0.5},
        "rho": 0.35,
        "regime": {"kind": "priority", "c2": 0.30, "p": 0.20},
        "verification": {"grid_n": 50, "monte_carlo_n": 20000, "seed": 97}
    })");
    const fs::path out_a = scratch_dir() / "det_a";
    const fs::path out_b = scratch_dir() / "det_b";

    REQUIRE(run_cli("verify --config '" + cfg.string() + "' --out '" + out_a.string() + "'")
                .exit_code == 0);
    REQUIRE(run_cli("verify --config '" + cfg.string() + "' --out '" + out_b.string() + "'")
                .exit_code == 0);
    CHECK(slurp(out_a / "verify.json") == slurp(out_b / "verify.json"));
    CHECK(slurp(out_a / "report.csv") == slurp(out_b / "report.csv"));

    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --out '" + out_a.string() + "'")
                .exit_code == 0);
    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --out '" + out_b.string() + "'")
                .exit_code == 0);
    CHECK(slurp(out_a / "simulate.json") == slurp(out_b / "simulate.json"));

    // an explicit --seed override changes the draw
    REQUIRE(run_cli("simulate --config '" + cfg.string() + "' --seed 1234 --out '" +
                    out_b.string() + "'")
                .exit_code == 0);
    CHECK(slurp(out_a / "simulate.json") != slurp(out_b / "simulate.json"));
}

TEST_CASE("cli: simulate reports counts that add up") {
    const fs::path cfg = write_config("simulate_single.json", R"({
        "distribution": {"kind": "independent-beta",
                         "alpha_y": 2.0, "beta_y": 2.0, "alpha_theta": 2.0, "beta_theta": 2.0},
        "value_function": {"kind": "log1p"},
        "rho": 0.35,
        "regime": {"kind": "single"},
        "verification": {"monte_carlo_n": 50000, "seed": 11}
    })");
    const CliResult r = run_cli("simulate --config '" + cfg.string() + "'");
    REQUIRE(r.exit_code == 0);
    const json record = json::parse(r.output);
    const auto counts = record["counts"];
    CHECK(counts["paid_queue"].get<long>() == 0);
    CHECK(counts["abstain"].get<long>() + counts["free_queue"].get<long>() == 50000);
    long decile_sum = 0;
    for (const auto& d : record["income_deciles"])
        decile_sum += d["abstain"].get<long>() + d["free_queue"].get<long>() +
                      d["paid_queue"].get<long>();
    CHECK(decile_sum == 50000);
}

TEST_CASE("cli: emit-figure writes the fixture geometry CSVs") {
    const fs::path out = scratch_dir() / "figure_out";
    const CliResult r = run_cli("emit-figure --config '" +
                                (kConfigDir / "figure_fixture.json").string() + "' --out '" +
                                out.string() + "'");
    REQUIRE(r.exit_code == 0);

    const auto points = lines_of(slurp(out / "points.csv"));
    REQUIRE(points.size() == 3);
    CHECK(points[0] == "label,theta,y");
    CHECK(points[1] == "P,0.8,0.546875");
    CHECK(points[2] == "P_prime,0.65,0.828402367");

    const auto boundaries = lines_of(slurp(out / "boundaries.csv"));
    CHECK(boundaries[0] == "curve_id,y,theta");
    // two 2-point verticals plus a 200-sample curve
    CHECK(boundaries.size() == 1 + 2 + 2 + 200);

    // reruns are byte-identical
    const fs::path out2 = scratch_dir() / "figure_out2";
    REQUIRE(run_cli("emit-figure --config '" + (kConfigDir / "figure_fixture.json").string() +
                    "' --out '" + out2.string() + "'")
                .exit_code == 0);
    CHECK(slurp(out / "boundaries.csv") == slurp(out2 / "boundaries.csv"));
    CHECK(slurp(out / "points.csv") == slurp(out2 / "points.csv"));
}

TEST_CASE("cli: emit-figure on a p = 0 regime draws the horizontal boundary") {
    // with p = 0 the clearing mass is flat in c1, so fix c1 and solve c2
    // (the solution is c2 = 0.65, the single-queue cost)
    const fs::path cfg = write_config("figure_flat.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c1": 0.8, "p": 0.0},
        "figure": {"kind": "regime", "resolution": 8}
    })");
    const fs::path out = scratch_dir() / "figure_flat_out";
    const CliResult r = run_cli("emit-figure --config '" + cfg.string() + "' --out '" +
                                out.string() + "'");
    REQUIRE(r.exit_code == 0);
    int curve_rows = 0;
    for (const auto& line : lines_of(slurp(out / "boundaries.csv"))) {
        if (line.rfind("paid_boundary,", 0) != 0) continue;
        ++curve_rows;
        const double theta = std::stod(line.substr(line.rfind(',') + 1));
        CHECK(std::abs(theta - 0.65) <= 1e-7);
    }
    CHECK(curve_rows == 8);

    // an infeasible regime cannot produce geometry: exit 3
    const fs::path bad = write_config("figure_infeasible.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "priority", "c2": 0.3, "p": 0.0},
        "figure": {"kind": "regime", "resolution": 8}
    })");
    CHECK(run_cli("emit-figure --config '" + bad.string() + "'").exit_code == 3);
}

TEST_CASE("cli: sweep reports solved and infeasible grid points") {
    const fs::path cfg = write_config("sweep.json", R"({
        "distribution": {"kind": "independent-uniform"},
        "value_function": {"kind": "sqrt"},
        "rho": 0.35,
        "regime": {"kind": "sweep", "c2_values": [0.45, 0.55], "p_values": [0.0, 0.3]}
    })");
    const fs::path out = scratch_dir() / "sweep_out";
    const CliResult r = run_cli("sweep --config '" + cfg.string() + "' --out '" + out.string() +
                                "'");
    REQUIRE(r.exit_code == 0);
    const json summary = json::parse(r.output);
    CHECK(summary["points"] == 4);
    CHECK(summary["solved"].get<int>() + summary["unsolved"].get<int>() == 4);
    CHECK(summary["solved"].get<int>() >= 1);

    const auto lines = lines_of(slurp(out / "sweep.csv"));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "c2,p,status,c1,paid_mass,free_mass,residual,message");
    // p = 0 with c2 != c is flat in c1: reported, not dropped
    CHECK(lines[1].find("unsolved") != std::string::npos);
    CHECK(lines[1].find("achievable mass") != std::string::npos);
}
