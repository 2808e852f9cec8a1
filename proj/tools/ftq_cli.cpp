// Command-line front end: config-driven solving, verification, simulation
// and figure-data emission. Exit codes: 0 success, 1 verification failure,
// 2 configuration error, 3 numerical infeasibility.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ftq/equilibrium.hpp"
#include "ftq/geometry.hpp"
#include "ftq/oracle.hpp"
#include "ftq/welfare.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

enum class RegimeKind { Single, Priority, Sweep };
enum class FigureKind { Regime, Fixture };

struct RunConfig {
    ftq::JointDistribution distribution = ftq::JointDistribution::independent_uniform();
    ftq::ValueFunction value_function = ftq::ValueFunction::square_root();
    double rho = 0.35;

    RegimeKind regime_kind = RegimeKind::Single;
    std::optional<double> c1, c2, price;
    std::vector<double> sweep_c2, sweep_p;

    int grid_n = 200;
    std::size_t monte_carlo_n = 1'000'000;
    std::uint64_t seed = 1;

    FigureKind figure_kind = FigureKind::Regime;
    double fixture_k = 0.35;
    double fixture_c = 0.65;
    double fixture_c1 = 0.8;
    int figure_resolution = 200;
};

void reject_unknown_keys(const json& obj, const std::string& where,
                         std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) known = true;
        if (!known) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

double get_number(const json& obj, const std::string& where, const char* key, double lo,
                  double hi) {
    if (!obj.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
    const double x = obj[key].get<double>();
    if (!(x >= lo && x <= hi)) {
        std::ostringstream msg;
        msg << where << "." << key << " = " << x << " outside [" << lo << ", " << hi << "]";
        throw ConfigError(msg.str());
    }
    return x;
}

ftq::JointDistribution parse_distribution(const json& obj) {
    if (!obj.is_object()) throw ConfigError("distribution must be an object");
    const std::string kind = obj.value("kind", "");
    if (kind == "independent-uniform") {
        reject_unknown_keys(obj, "distribution", {"kind"});
        return ftq::JointDistribution::independent_uniform();
    }
    if (kind == "independent-beta") {
        reject_unknown_keys(obj, "distribution",
                            {"kind", "alpha_y", "beta_y", "alpha_theta", "beta_theta"});
        return ftq::JointDistribution::independent_beta(
            {get_number(obj, "distribution", "alpha_y", 1e-9, 1e9),
             get_number(obj, "distribution", "beta_y", 1e-9, 1e9)},
            {get_number(obj, "distribution", "alpha_theta", 1e-9, 1e9),
             get_number(obj, "distribution", "beta_theta", 1e-9, 1e9)});
    }
    if (kind == "gaussian-copula") {
        reject_unknown_keys(obj, "distribution",
                            {"kind", "r", "alpha_y", "beta_y", "alpha_theta", "beta_theta"});
        return ftq::JointDistribution::gaussian_copula(
            get_number(obj, "distribution", "r", -0.999999, 0.999999),
            {get_number(obj, "distribution", "alpha_y", 1e-9, 1e9),
             get_number(obj, "distribution", "beta_y", 1e-9, 1e9)},
            {get_number(obj, "distribution", "alpha_theta", 1e-9, 1e9),
             get_number(obj, "distribution", "beta_theta", 1e-9, 1e9)});
    }
    throw ConfigError("distribution.kind must be independent-uniform, independent-beta or "
                      "gaussian-copula");
}

ftq::ValueFunction parse_value_function(const json& obj) {
    if (!obj.is_object()) throw ConfigError("value_function must be an object");
    const std::string kind = obj.value("kind", "");
    if (kind == "sqrt") {
        reject_unknown_keys(obj, "value_function", {"kind"});
        return ftq::ValueFunction::square_root();
    }
    if (kind == "log1p") {
        reject_unknown_keys(obj, "value_function", {"kind"});
        return ftq::ValueFunction::shifted_log();
    }
    if (kind == "crra") {
        reject_unknown_keys(obj, "value_function", {"kind", "gamma"});
        return ftq::ValueFunction::crra(get_number(obj, "value_function", "gamma", 1e-9, 1.0));
    }
    throw ConfigError("value_function.kind must be sqrt, log1p or crra");
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(root, "config",
                        {"distribution", "value_function", "rho", "regime", "verification",
                         "figure"});

    RunConfig cfg;
    if (!root.contains("distribution")) throw ConfigError("config is missing 'distribution'");
    cfg.distribution = parse_distribution(root["distribution"]);
    if (!root.contains("value_function")) throw ConfigError("config is missing 'value_function'");
    cfg.value_function = parse_value_function(root["value_function"]);

    if (!root.contains("rho")) throw ConfigError("config is missing 'rho'");
    if (!root["rho"].is_number()) throw ConfigError("rho must be a number");
    cfg.rho = root["rho"].get<double>();
    if (!(cfg.rho > 0.0 && cfg.rho < 1.0))
        throw ConfigError("capacity rho must lie strictly inside (0,1)");

    if (!root.contains("regime")) throw ConfigError("config is missing 'regime'");
    const json& regime = root["regime"];
    if (!regime.is_object()) throw ConfigError("regime must be an object");
    const std::string rkind = regime.value("kind", "");
    if (rkind == "single") {
        reject_unknown_keys(regime, "regime", {"kind"});
        cfg.regime_kind = RegimeKind::Single;
    } else if (rkind == "priority") {
        reject_unknown_keys(regime, "regime", {"kind", "c1", "c2", "p"});
        cfg.regime_kind = RegimeKind::Priority;
        if (regime.contains("c1")) cfg.c1 = get_number(regime, "regime", "c1", 0.0, 1.0);
        if (regime.contains("c2")) cfg.c2 = get_number(regime, "regime", "c2", 0.0, 1.0);
        if (regime.contains("p")) cfg.price = get_number(regime, "regime", "p", 0.0, 1.0);
        const int fixed = int(cfg.c1.has_value()) + int(cfg.c2.has_value()) +
                          int(cfg.price.has_value());
        if (fixed != 2)
            throw ConfigError("priority regime must fix exactly two of {c1, c2, p}");
        if (cfg.c1 && cfg.c2 && !(*cfg.c2 < *cfg.c1))
            throw ConfigError("degenerate system requested: c2 must be strictly below c1");
    } else if (rkind == "sweep") {
        reject_unknown_keys(regime, "regime", {"kind", "c2_values", "p_values"});
        cfg.regime_kind = RegimeKind::Sweep;
        for (const char* key : {"c2_values", "p_values"}) {
            if (!regime.contains(key) || !regime[key].is_array() || regime[key].empty())
                throw ConfigError(std::string("sweep regime needs a nonempty array '") + key +
                                  "'");
            for (const auto& x : regime[key]) {
                if (!x.is_number() || x.get<double>() < 0.0 || x.get<double>() > 1.0)
                    throw ConfigError(std::string("regime.") + key +
                                      " entries must be numbers in [0,1]");
                (key[0] == 'c' ? cfg.sweep_c2 : cfg.sweep_p).push_back(x.get<double>());
            }
        }
    } else {
        throw ConfigError("regime.kind must be single, priority or sweep");
    }

    if (root.contains("verification")) {
        const json& ver = root["verification"];
        if (!ver.is_object()) throw ConfigError("verification must be an object");
        reject_unknown_keys(ver, "verification", {"grid_n", "monte_carlo_n", "seed"});
        if (ver.contains("grid_n")) {
            cfg.grid_n = static_cast<int>(get_number(ver, "verification", "grid_n", 2, 1e7));
        }
        if (ver.contains("monte_carlo_n")) {
            cfg.monte_carlo_n = static_cast<std::size_t>(
                get_number(ver, "verification", "monte_carlo_n", 1, 1e9));
        }
        if (ver.contains("seed")) {
            if (!ver["seed"].is_number_unsigned())
                throw ConfigError("verification.seed must be a nonnegative integer");
            cfg.seed = ver["seed"].get<std::uint64_t>();
        }
    }

    if (root.contains("figure")) {
        const json& fig = root["figure"];
        if (!fig.is_object()) throw ConfigError("figure must be an object");
        const std::string fkind = fig.value("kind", "regime");
        if (fkind == "regime") {
            reject_unknown_keys(fig, "figure", {"kind", "resolution"});
            cfg.figure_kind = FigureKind::Regime;
        } else if (fkind == "fixture") {
            reject_unknown_keys(fig, "figure", {"kind", "k", "c", "c1", "resolution"});
            cfg.figure_kind = FigureKind::Fixture;
            cfg.fixture_k = get_number(fig, "figure", "k", 1e-9, 1.0);
            cfg.fixture_c = get_number(fig, "figure", "c", 0.0, 1.0);
            cfg.fixture_c1 = get_number(fig, "figure", "c1", 0.0, 1.0);
        } else {
            throw ConfigError("figure.kind must be regime or fixture");
        }
        if (fig.contains("resolution"))
            cfg.figure_resolution =
                static_cast<int>(get_number(fig, "figure", "resolution", 2, 1e7));
    }
    return cfg;
}

// ---------------------------------------------------------------------------
// output helpers
// ---------------------------------------------------------------------------

std::string g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

const char* to_string(ftq::ThresholdStatus status) {
    switch (status) {
        case ftq::ThresholdStatus::Interior: return "interior";
        case ftq::ThresholdStatus::AllPreferPaid: return "all-incomes-prefer-paid";
        case ftq::ThresholdStatus::AllPreferFree: return "all-incomes-prefer-free";
        case ftq::ThresholdStatus::Flat: return "flat";
    }
    return "unknown";
}

json threshold_json(const ftq::IncomeThreshold& t) {
    return json{{"income", t.income}, {"status", to_string(t.status)},
                {"residual", t.residual}};
}

json system_json(const ftq::PrioritySystem& s) {
    return json{{"c1", s.free_cost()}, {"c2", s.paid_cost()}, {"p", s.price()},
                {"collapsed", s.collapsed()}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

struct OutputSink {
    std::optional<std::filesystem::path> dir;

    void emit(const std::string& name, const std::string& content) const {
        if (!dir) return;
        std::filesystem::create_directories(*dir);
        write_file(*dir / name, content);
    }
};

void print_record(const json& record) { std::printf("%s\n", record.dump(2).c_str()); }

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct GlobalArgs {
    std::string config_path = "configs/default.json";
    std::optional<std::uint64_t> seed_override;
    std::optional<std::string> out_dir;
    std::optional<double> tol_override;
    double corrupt_thresholds = 0.0;
};

ftq::SolverOptions solver_options(const GlobalArgs& args) {
    ftq::SolverOptions opts;
    if (args.tol_override) opts.residual_tol = *args.tol_override;
    return opts;
}

RunConfig load(const GlobalArgs& args) {
    RunConfig cfg = parse_config(args.config_path);
    if (args.seed_override) cfg.seed = *args.seed_override;
    return cfg;
}

ftq::PrioritySolve solve_configured_priority(const RunConfig& cfg, const GlobalArgs& args) {
    if (cfg.regime_kind != RegimeKind::Priority)
        throw ConfigError("this command needs regime.kind = priority");
    return ftq::solve_priority(cfg.distribution, cfg.value_function, cfg.rho,
                               {cfg.c1, cfg.c2, cfg.price}, solver_options(args));
}

int cmd_solve_single(const GlobalArgs& args) {
    const RunConfig cfg = load(args);
    ftq::SolverOptions opts{.x_tol = 1e-12, .residual_tol = 1e-9};
    if (args.tol_override) opts.residual_tol = *args.tol_override;
    const ftq::SingleQueueEquilibrium eq =
        ftq::solve_single_queue(cfg.distribution, cfg.rho, opts);
    const json record{{"c", eq.waiting_cost},
                      {"rho", eq.capacity},
                      {"residual", eq.residual},
                      {"iterations", eq.iterations}};
    print_record(record);
    OutputSink{args.out_dir}.emit("single.json", record.dump(2) + "\n");
    return kExitOk;
}

int cmd_solve_priority(const GlobalArgs& args) {
    const RunConfig cfg = load(args);
    const ftq::SingleQueueEquilibrium eq =
        ftq::solve_single_queue(cfg.distribution, cfg.rho);
    const ftq::PrioritySolve solve = solve_configured_priority(cfg, args);
    const ftq::Thresholds th =
        ftq::compute_thresholds(cfg.value_function, solve.system, eq.waiting_cost);
    const json record{{"system", system_json(solve.system)},
                      {"residual", solve.residual},
                      {"iterations", solve.iterations},
                      {"mass", {{"total", solve.masses.total},
                                {"paid", solve.masses.paid},
                                {"free", solve.masses.free_line}}},
                      {"single_c", eq.waiting_cost},
                      {"y_lower", threshold_json(th.lower)},
                      {"y_upper", threshold_json(th.upper)}};
    print_record(record);
    OutputSink{args.out_dir}.emit("priority.json", record.dump(2) + "\n");
    return kExitOk;
}

int cmd_sweep(const GlobalArgs& args) {
    const RunConfig cfg = load(args);
    if (cfg.regime_kind != RegimeKind::Sweep)
        throw ConfigError("sweep needs regime.kind = sweep");
    std::vector<std::pair<double, double>> grid;
    for (double c2 : cfg.sweep_c2)
        for (double p : cfg.sweep_p) grid.emplace_back(c2, p);

    const auto points = ftq::manifold_sweep(cfg.distribution, cfg.value_function, cfg.rho, grid,
                                            solver_options(args));
    std::ostringstream csv;
    csv << "c2,p,status,c1,paid_mass,free_mass,residual,message\n";
    std::size_t solved = 0;
    for (const auto& pt : points) {
        const bool ok = pt.solution.has_value();
        if (ok) ++solved;
        csv << g9(pt.paid_cost) << ',' << g9(pt.price) << ',' << (ok ? "ok" : "unsolved") << ',';
        if (ok) {
            csv << g9(pt.solution->system.free_cost()) << ',' << g9(pt.solution->masses.paid)
                << ',' << g9(pt.solution->masses.free_line) << ',' << g9(pt.solution->residual);
        } else {
            csv << ",,,";
        }
        csv << ",\"" << pt.message << "\"\n";
    }
    const json record{{"points", points.size()},
                      {"solved", solved},
                      {"unsolved", points.size() - solved}};
    print_record(record);
    OutputSink sink{args.out_dir};
    sink.emit("sweep.csv", csv.str());
    sink.emit("sweep_summary.json", record.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const GlobalArgs& args) {
    const RunConfig cfg = load(args);
    const ftq::SingleQueueEquilibrium eq =
        ftq::solve_single_queue(cfg.distribution, cfg.rho);
    const ftq::PrioritySolve solve = solve_configured_priority(cfg, args);

    ftq::Thresholds th =
        ftq::compute_thresholds(cfg.value_function, solve.system, eq.waiting_cost);
    if (args.corrupt_thresholds != 0.0) {
        th.lower.income = std::min(1.0, th.lower.income + args.corrupt_thresholds);
        th.upper.income = std::min(1.0, th.upper.income + args.corrupt_thresholds);
    }

    const ftq::WelfareReport grid = ftq::verify_proposition1(
        cfg.grid_n, cfg.value_function, {}, eq.waiting_cost, solve.system, th);

    const ftq::Population pop =
        ftq::sample_population(cfg.distribution, cfg.monte_carlo_n, cfg.seed);
    const auto mc_violations = ftq::empirical_proposition1(
        pop, cfg.value_function, {}, eq.waiting_cost, solve.system, th);
    const ftq::SimulationResult sim =
        ftq::simulate_regime(pop, cfg.value_function, {}, solve.system);

    json bands = json::array();
    static const char* band_names[3] = {"low", "middle", "high"};
    for (std::size_t b = 0; b < 3; ++b) {
        bands.push_back(json{{"band", band_names[b]},
                             {"gain", grid.bands[b].gain},
                             {"loss", grid.bands[b].loss},
                             {"indifferent", grid.bands[b].indifferent},
                             {"paid_while_losing", grid.bands[b].paid_while_losing}});
    }
    json violations = json::array();
    const std::size_t keep = std::min<std::size_t>(grid.violations.size(), 50);
    for (std::size_t i = 0; i < keep; ++i) {
        const auto& viol = grid.violations[i];
        violations.push_back(json{{"y", viol.agent.income()},
                                  {"theta", viol.agent.valuation()},
                                  {"band", band_names[static_cast<std::size_t>(viol.band)]},
                                  {"label", ftq::to_string(viol.label)},
                                  {"choice", ftq::to_string(viol.priority_choice)},
                                  {"what", viol.what}});
    }

    const bool pass = grid.violations.empty() && mc_violations.empty();
    const json record{
        {"pass", pass},
        {"single_c", eq.waiting_cost},
        {"system", system_json(solve.system)},
        {"clearing_residual", solve.residual},
        {"y_lower", threshold_json(th.lower)},
        {"y_upper", threshold_json(th.upper)},
        {"partition_valid", grid.partition.valid},
        {"partition_notice", grid.partition.notice},
        {"grid", {{"n", grid.grid_n},
                  {"eps_band", grid.eps_band},
                  {"violations", grid.violations.size()},
                  {"violation_sample", violations},
                  {"bands", bands}}},
        {"monte_carlo", {{"n", pop.size()},
                         {"seed", pop.seed},
                         {"violations", mc_violations.size()},
                         {"served_fraction", sim.served_fraction},
                         {"served_standard_error", sim.served_standard_error}}}};

    std::ostringstream csv;
    csv << "band,gain_count,loss_count,indiff_count\n";
    for (std::size_t b = 0; b < 3; ++b)
        csv << band_names[b] << ',' << grid.bands[b].gain << ',' << grid.bands[b].loss << ','
            << grid.bands[b].indifferent << '\n';

    print_record(record);
    OutputSink sink{args.out_dir};
    sink.emit("report.csv", csv.str());
    sink.emit("verify.json", record.dump(2) + "\n");
    return pass ? kExitOk : kExitVerificationFailed;
}

int cmd_simulate(const GlobalArgs& args) {
    const RunConfig cfg = load(args);
    const ftq::Population pop =
        ftq::sample_population(cfg.distribution, cfg.monte_carlo_n, cfg.seed);

    json regime;
    ftq::SimulationResult sim;
    if (cfg.regime_kind == RegimeKind::Priority) {
        const ftq::PrioritySolve solve = solve_configured_priority(cfg, args);
        sim = ftq::simulate_regime(pop, cfg.value_function, {}, solve.system);
        regime = json{{"kind", "priority"}, {"system", system_json(solve.system)}};
    } else if (cfg.regime_kind == RegimeKind::Single) {
        const ftq::SingleQueueEquilibrium eq =
            ftq::solve_single_queue(cfg.distribution, cfg.rho);
        sim = ftq::simulate_regime(pop, cfg.value_function, {}, eq.waiting_cost);
        regime = json{{"kind", "single"}, {"c", eq.waiting_cost}};
    } else {
        throw ConfigError("simulate needs regime.kind = single or priority");
    }

    json deciles = json::array();
    for (std::size_t d = 0; d < 10; ++d) {
        deciles.push_back(json{{"decile", d},
                               {"abstain", sim.decile_choice_counts[d][0]},
                               {"free_queue", sim.decile_choice_counts[d][1]},
                               {"paid_queue", sim.decile_choice_counts[d][2]}});
    }
    const json record{{"regime", regime},
                      {"n", sim.population_size},
                      {"seed", pop.seed},
                      {"descriptor", pop.descriptor},
                      {"counts", {{"abstain", sim.choice_counts[0]},
                                  {"free_queue", sim.choice_counts[1]},
                                  {"paid_queue", sim.choice_counts[2]}}},
                      {"served_fraction", sim.served_fraction},
                      {"served_standard_error", sim.served_standard_error},
                      {"income_deciles", deciles}};
    print_record(record);
    OutputSink{args.out_dir}.emit("simulate.json", record.dump(2) + "\n");
    return kExitOk;
}

int cmd_emit_figure(const GlobalArgs& args) {
    const RunConfig cfg = load(args);

    ftq::RegionGeometry geo;
    if (cfg.figure_kind == FigureKind::Fixture) {
        geo = ftq::region_geometry(ftq::power_fixture_boundary(cfg.fixture_k), cfg.fixture_c1,
                                   cfg.fixture_c, cfg.figure_resolution);
    } else {
        const ftq::SingleQueueEquilibrium eq =
            ftq::solve_single_queue(cfg.distribution, cfg.rho);
        const ftq::PrioritySolve solve = solve_configured_priority(cfg, args);
        geo = ftq::region_geometry(cfg.value_function, solve.system, eq.waiting_cost,
                                   cfg.figure_resolution);
    }

    std::ostringstream boundaries;
    boundaries << "curve_id,y,theta\n";
    for (const auto& line : geo.boundaries)
        for (const auto& pt : line.samples)
            boundaries << line.id << ',' << g9(pt.income) << ',' << g9(pt.theta) << '\n';

    std::ostringstream points;
    points << "label,theta,y\n";
    for (const auto& pt : geo.points)
        points << pt.label << ',' << g9(pt.theta) << ',' << g9(pt.income) << '\n';

    json record{{"boundaries", geo.boundaries.size()},
                {"points", json::array()},
                {"notices", geo.notices}};
    for (const auto& pt : geo.points)
        record["points"].push_back(json{{"label", pt.label}, {"theta", pt.theta},
                                        {"y", pt.income}});
    print_record(record);
    OutputSink sink{args.out_dir};
    sink.emit("boundaries.csv", boundaries.str());
    sink.emit("points.csv", points.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"market-clearing equilibria and welfare bands for free vs fast-track queues"};
    app.require_subcommand(1);

    GlobalArgs args;
    app.add_option("--config", args.config_path, "path to the JSON run configuration")
        ->capture_default_str();
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override verification.seed");
    std::string out_value;
    auto* out_opt = app.add_option("--out", out_value, "directory for emitted files");
    double tol_value = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_value, "override the clearing residual tolerance");

    CLI::App* sub_solve_single =
        app.add_subcommand("solve-single", "market-clearing cost of the single free queue");
    CLI::App* sub_solve_priority =
        app.add_subcommand("solve-priority", "solve the free transfer coordinate of a priority system");
    CLI::App* sub_sweep = app.add_subcommand("sweep", "solve c1 over a (c2, p) grid");
    CLI::App* sub_verify =
        app.add_subcommand("verify", "check the three-band welfare partition on a grid and by Monte Carlo");
    sub_verify->add_option("--corrupt-thresholds", args.corrupt_thresholds, "")
        ->group(""); // test hook: shift both cutoffs before checking
    CLI::App* sub_simulate =
        app.add_subcommand("simulate", "classify a sampled population under the configured regime");
    CLI::App* sub_emit_figure =
        app.add_subcommand("emit-figure", "emit boundary polylines and special points as CSV");

    // let "ftq <subcommand> --config ..." match the global options
    for (CLI::App* sub : {sub_solve_single, sub_solve_priority, sub_sweep, sub_verify,
                          sub_simulate, sub_emit_figure})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (*seed_opt) args.seed_override = seed_value;
    if (*out_opt) args.out_dir = out_value;
    if (*tol_opt) args.tol_override = tol_value;

    try {
        if (sub_solve_single->parsed()) return cmd_solve_single(args);
        if (sub_solve_priority->parsed()) return cmd_solve_priority(args);
        if (sub_sweep->parsed()) return cmd_sweep(args);
        if (sub_verify->parsed()) return cmd_verify(args);
        if (sub_simulate->parsed()) return cmd_simulate(args);
        if (sub_emit_figure->parsed()) return cmd_emit_figure(args);
        std::fprintf(stderr, "no subcommand selected\n");
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const ftq::CapacityError& e) {
        std::fprintf(stderr, "capacity error: %s\n", e.what());
        return kExitConfig;
    } catch (const ftq::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ftq::DegenerateSystemError& e) {
        // a degenerate *request* is caught by config validation (exit 2);
        // landing here means the solver collapsed the queues
        std::fprintf(stderr, "degenerate system: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ftq::NumericalError& e) {
        std::fprintf(stderr, "numerical error (achieved tolerance %.3e): %s\n",
                     e.achieved_tolerance(), e.what());
        return kExitInfeasible;
    } catch (const ftq::UnsupportedDistributionError& e) {
        std::fprintf(stderr, "unsupported distribution: %s\n", e.what());
        return kExitInfeasible;
    } catch (const ftq::DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInfeasible;
    }
}
