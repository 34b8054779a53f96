// Command-line surface: perturb matrices, compute design budgets, run
// experiment sweeps. Exit codes are a stable contract: 0 success, 2 parameter
// validation, 3 mechanism failure, 4 configuration problem.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvgdp/budget.hpp"
#include "mvgdp/dataset.hpp"
#include "mvgdp/errors.hpp"
#include "mvgdp/experiment.hpp"
#include "mvgdp/matrix.hpp"
#include "mvgdp/mechanism.hpp"
#include "mvgdp/rng.hpp"

namespace {

using nlohmann::json;
using namespace mvgdp;

constexpr const char* kVersion = "0.1.0";
// Stream reserved for synthetic dataset generation, clear of the per-trial
// streams the experiment runner derives.
constexpr std::uint64_t kDataStream = std::uint64_t{1} << 34;

int log_level() {
    const char* v = std::getenv("MVGDP_LOG");
    if (v == nullptr) return 0;
    const std::string s(v);
    if (s == "debug") return 2;
    if (s == "info") return 1;
    return 0;
}

void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "[mvgdp] " << msg << "\n";
}

void require_flag(bool present, const char* msg) {
    if (!present) throw ParameterError(msg);
}

// The perturb contract surfaces noise-design and shape failures as mechanism
// errors (exit 3) even when the library classifies them as bad parameters.
template <typename F>
auto design_phase(F&& f) {
    try {
        return f();
    } catch (const ParameterError& e) {
        throw MechanismError(e.what());
    }
}

QueryStructure parse_structure(const std::string& s) {
    if (s == "general") return QueryStructure::General;
    if (s == "psd") return QueryStructure::SymmetricPsd;
    throw ConfigError("unknown structure '" + s + "' (expected general|psd)");
}

DesignTheorem parse_theorem(const std::string& s) {
    if (s == "general") return DesignTheorem::General;
    if (s == "psd") return DesignTheorem::Psd;
    throw ConfigError("unknown theorem '" + s + "' (expected general|psd)");
}

MechanismKind parse_mechanism(const std::string& s) {
    if (s == "mvg-unimodal") return MechanismKind::MvgUnimodal;
    if (s == "mvg-equimodal") return MechanismKind::MvgEquimodal;
    if (s == "gaussian") return MechanismKind::Gaussian;
    if (s == "laplace") return MechanismKind::Laplace;
    throw ConfigError("unknown mechanism '" + s +
                      "' (expected mvg-unimodal|mvg-equimodal|gaussian|laplace)");
}

Task parse_task(const std::string& s) {
    if (s == "regression") return Task::Regression;
    if (s == "first-pc") return Task::FirstPc;
    if (s == "covariance") return Task::CovarianceEstimation;
    throw ConfigError("unknown task '" + s + "' (expected regression|first-pc|covariance)");
}

std::vector<double> load_vector_csv(const std::string& path) {
    const Matrix m = load_matrix_csv(path);
    if (m.rows() != 1 && m.cols() != 1)
        throw ConfigError("expected a single-row or single-column CSV: " + path);
    std::vector<double> v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
    write_text(path, j.dump(2) + "\n");
}

json condition_json(const ConditionReport& c) {
    return json{{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}};
}

// ----- budget -----------------------------------------------------------------------

struct BudgetArgs {
    std::size_t m = 0;
    std::size_t n = 0;
    double s2 = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    double delta = 0.0;
    std::string structure = "general";
    std::string mode; // empty picks the structure's natural mode
    std::string theorem;
};

int run_budget(const BudgetArgs& a) {
    const QuerySpec q(a.m, a.n, a.s2, a.gamma, parse_structure(a.structure));
    const PrivacyParams p(a.epsilon, a.delta);
    const BudgetTerms terms = budget_terms(q, p);
    const bool psd = q.structure() == QueryStructure::SymmetricPsd;

    std::string mode = a.mode;
    if (mode.empty()) mode = psd ? "equimodal" : "unimodal";
    if (mode != "unimodal" && mode != "equimodal")
        throw ConfigError("unknown mode '" + mode + "' (expected unimodal|equimodal)");
    std::optional<DesignTheorem> theorem;
    if (!a.theorem.empty()) theorem = parse_theorem(a.theorem);

    json out{
        {"query",
         {{"m", a.m},
          {"n", a.n},
          {"s2", a.s2},
          {"gamma", a.gamma},
          {"structure", a.structure}}},
        {"privacy", {{"epsilon", a.epsilon}, {"delta", a.delta}}},
        {"zeta", terms.zeta},
        {"alpha", terms.alpha},
        {"beta", terms.beta},
        {"bound", {{"general", general_bound(terms, p)}}},
    };
    if (psd) {
        out["omega"] = *terms.omega;
        out["bound"]["psd"] = psd_bound(terms, p);
        const PsdPreference pref = prefer_psd_theorem(q);
        const char* reason = pref.reason == PsdPreferenceReason::SensitivityLeqGamma
                                 ? "SensitivityLeqGamma"
                                 : pref.reason == PsdPreferenceReason::RankGt12 ? "RankGt12"
                                                                               : "Neither";
        out["prefer_psd"] = {{"preferred", pref.preferred}, {"reason", reason}};
    }
    const BudgetMode bm = mode == "unimodal" ? BudgetMode::Unimodal : BudgetMode::EquiModal;
    out["budget"] = {{"mode", mode}, {"value", precision_budget(q, p, bm, theorem)}};

    std::cout << out.dump(2) << "\n";
    return 0;
}

// ----- perturb ----------------------------------------------------------------------

struct PerturbArgs {
    std::string in;
    std::string out = ".";
    std::string mechanism;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    double s2 = 0.0;
    double gamma = 0.0;
    double s1 = 0.0;
    double frac = 0.2;
    std::string structure = "general";
    std::string theorem;
    std::string directions = "identity";
    std::string theta_file;
    // presence markers filled from CLI11 counts
    bool has_epsilon = false, has_delta = false, has_s2 = false, has_gamma = false,
         has_s1 = false, has_theorem = false, has_theta = false;
};

int run_perturb(const PerturbArgs& a) {
    const MechanismKind kind = parse_mechanism(a.mechanism);
    const Matrix input = load_matrix_csv(a.in);
    const std::size_t m = input.rows();
    const std::size_t n = input.cols();
    const RandomSeed noise_seed{a.seed, 0};
    const RandomSeed aux_seed{a.seed, 1};

    json config{{"mechanism", a.mechanism}, {"in", a.in}};
    json condition = nullptr;
    json noise = nullptr;
    json budget_spent = nullptr;
    Matrix value;

    const bool mvg =
        kind == MechanismKind::MvgUnimodal || kind == MechanismKind::MvgEquimodal;
    if (mvg) {
        require_flag(a.has_epsilon && a.has_delta, "--epsilon and --delta are required");
        require_flag(a.has_s2 && a.has_gamma, "--s2 and --gamma are required");
        const PrivacyParams p(a.epsilon, a.delta);
        const QuerySpec q(m, n, a.s2, a.gamma, parse_structure(a.structure));
        config["epsilon"] = a.epsilon;
        config["delta"] = a.delta;
        config["s2"] = a.s2;
        config["gamma"] = a.gamma;
        config["structure"] = a.structure;
        config["directions"] = a.directions;

        MechanismOutput out = design_phase([&] {
            if (a.directions == "private-svd") {
                if (kind != MechanismKind::MvgUnimodal)
                    throw MechanismError(
                        "private-svd directions pair with mvg-unimodal only");
                if (a.has_theta)
                    throw MechanismError("--theta is not used with private-svd directions");
                config["frac"] = a.frac;
                const PrivateDirections dirs =
                    private_directions(input, a.frac, p, aux_seed);
                return mvg_unimodal_maxpnr(input, q, dirs.remaining, dirs, noise_seed);
            }
            const NoiseDirections w =
                a.directions == "identity"
                    ? NoiseDirections::identity(m)
                    : a.directions.rfind("file:", 0) == 0
                          ? NoiseDirections(load_matrix_csv(a.directions.substr(5)))
                          : throw MechanismError("unknown directions '" + a.directions +
                                                 "' (expected identity|file:PATH|private-svd)");
            PrecisionAllocation theta = PrecisionAllocation::uniform(m);
            if (a.has_theta) {
                theta = PrecisionAllocation(load_vector_csv(a.theta_file));
                config["theta"] = theta.theta();
            }
            if (kind == MechanismKind::MvgUnimodal)
                return mvg_unimodal(input, q, p, w, theta, noise_seed);
            std::optional<DesignTheorem> theorem;
            if (a.has_theorem) {
                theorem = parse_theorem(a.theorem);
                config["theorem"] = a.theorem;
            }
            return mvg_equimodal(input, q, p, w, theta, noise_seed, theorem);
        });
        condition = condition_json(out.condition);
        budget_spent = out.budget_spent;
        value = std::move(out.value);
    } else if (kind == MechanismKind::Gaussian) {
        require_flag(a.has_epsilon && a.has_delta, "--epsilon and --delta are required");
        require_flag(a.has_s2, "--s2 is required");
        const PrivacyParams p(a.epsilon, a.delta);
        config["epsilon"] = a.epsilon;
        config["delta"] = a.delta;
        config["s2"] = a.s2;
        noise = {{"stddev", gaussian_noise_stddev(a.s2, p)}};
        value = baseline_gaussian(input, a.s2, p, noise_seed);
    } else {
        require_flag(a.has_epsilon, "--epsilon is required");
        require_flag(a.has_s1, "--s1 is required");
        config["epsilon"] = a.epsilon;
        config["s1"] = a.s1;
        noise = {{"scale_b", a.s1 / a.epsilon}};
        value = baseline_laplace(input, a.s1, a.epsilon, noise_seed);
    }

    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    save_matrix_csv(value, (dir / "perturbed.csv").string());
    const json manifest{{"command", "perturb"},
                        {"version", kVersion},
                        {"seed", a.seed},
                        {"config", config},
                        {"outputs", {{"perturbed", "perturbed.csv"}}},
                        {"condition_report", condition},
                        {"budget_spent", budget_spent},
                        {"noise", noise}};
    write_json(dir / "manifest.json", manifest);
    log_info("perturb: wrote " + (dir / "perturbed.csv").string());
    return 0;
}

// ----- experiment -------------------------------------------------------------------

struct ExpArgs {
    std::string task;
    std::vector<std::string> mechanisms;
    std::string data_path;
    bool synthetic = false;
    std::size_t trials = 1;
    double epsilon = 1.0;
    double delta = 0.0; // 0 picks 1/samples
    std::size_t features = 0;
    std::size_t samples = 0;
    std::string directions = "identity";
    double tau = 0.0; // percent; 0 means unset (sweep for basis directions)
    double frac = 0.2;
    std::string target = "target";
    std::size_t holdout = 0;
    double ridge_lambda = 1e-3;
    std::string theorem;
    std::string out = ".";
    std::uint64_t seed = 0;
};

void merge_config_file(ExpArgs& eff, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, val] : j.items()) {
        if (key == "task") eff.task = val.get<std::string>();
        else if (key == "mechanisms") eff.mechanisms = val.get<std::vector<std::string>>();
        else if (key == "data") eff.data_path = val.get<std::string>();
        else if (key == "synthetic") eff.synthetic = val.get<bool>();
        else if (key == "trials") eff.trials = val.get<std::size_t>();
        else if (key == "epsilon") eff.epsilon = val.get<double>();
        else if (key == "delta") eff.delta = val.get<double>();
        else if (key == "features") eff.features = val.get<std::size_t>();
        else if (key == "samples") eff.samples = val.get<std::size_t>();
        else if (key == "directions") eff.directions = val.get<std::string>();
        else if (key == "tau") eff.tau = val.get<double>();
        else if (key == "frac") eff.frac = val.get<double>();
        else if (key == "target") eff.target = val.get<std::string>();
        else if (key == "holdout") eff.holdout = val.get<std::size_t>();
        else if (key == "ridge_lambda") eff.ridge_lambda = val.get<double>();
        else if (key == "theorem") eff.theorem = val.get<std::string>();
        else if (key == "out") eff.out = val.get<std::string>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

DirectionSource parse_directions(const std::string& s, double tau_pct, double frac) {
    if (s == "identity") return IidDirections{};
    if (s == "private-svd") return PrivateSvdDirections{frac};
    if (s.rfind("basis:", 0) == 0) {
        std::vector<std::size_t> idx;
        std::stringstream ss(s.substr(6));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                idx.push_back(static_cast<std::size_t>(std::stoull(tok)));
            } catch (const std::exception&) {
                throw ConfigError("bad basis index '" + tok + "' in " + s);
            }
        }
        std::optional<double> tau;
        if (tau_pct != 0.0) tau = tau_pct / 100.0;
        return BasisDirections{std::move(idx), tau};
    }
    throw ConfigError("unknown directions '" + s +
                      "' (expected identity|basis:I,J,...|private-svd)");
}

const char* metric_name(Task t) {
    switch (t) {
        case Task::Regression: return "rmse";
        case Task::FirstPc: return "delta_rho";
        case Task::CovarianceEstimation: return "rss";
    }
    return "";
}

std::vector<std::string> default_mechanisms(Task t) {
    if (t == Task::FirstPc) return {"mvg-equimodal", "gaussian", "laplace"};
    return {"mvg-unimodal", "gaussian", "laplace"};
}

Dataset make_synthetic(Task t, std::size_t features, std::size_t samples, RandomSeed seed) {
    switch (t) {
        case Task::Regression:
            return synthetic_regression(features ? features : 6, samples ? samples : 248,
                                        seed);
        case Task::FirstPc:
            return synthetic_anisotropic(features ? features : 4, samples ? samples : 1024,
                                         100.0, seed);
        case Task::CovarianceEstimation:
            return synthetic_bounded01(features ? features : 21, samples ? samples : 600,
                                       seed);
    }
    throw ConfigError("unknown task");
}

int run_experiment_cmd(const ExpArgs& a) {
    const auto t0 = std::chrono::steady_clock::now();
    require_flag(!a.task.empty(), "--task is required");
    const Task task = parse_task(a.task);
    if (a.synthetic == !a.data_path.empty())
        throw ConfigError("choose exactly one of --data PATH and --synthetic");

    const Dataset data = a.synthetic
                             ? make_synthetic(task, a.features, a.samples,
                                              RandomSeed{a.seed, kDataStream})
                             : load_dataset_csv(a.data_path);
    const double delta =
        a.delta > 0.0 ? a.delta : 1.0 / static_cast<double>(data.num_samples());

    ExperimentConfig cfg{task, MechanismKind::Gaussian, PrivacyParams(a.epsilon, delta)};
    cfg.trials = a.trials;
    cfg.seed = RandomSeed{a.seed, 0};
    cfg.directions = parse_directions(a.directions, a.tau, a.frac);
    if (!a.theorem.empty()) cfg.theorem = parse_theorem(a.theorem);
    cfg.target_feature = a.target;
    cfg.holdout_samples = a.holdout;
    cfg.ridge_lambda = a.ridge_lambda;

    const std::vector<std::string> mechanisms =
        a.mechanisms.empty() ? default_mechanisms(task) : a.mechanisms;
    json rows = json::array();
    std::ostringstream csv;
    csv << "mechanism,metric,trials,mean,ci_half\n";
    for (const std::string& name : mechanisms) {
        cfg.mechanism = parse_mechanism(name);
        const TrialReport report = run_experiment(cfg, data);
        log_info("experiment: " + name + " mean=" + format_double(report.mean));
        rows.push_back({{"mechanism", name},
                        {"metric", metric_name(task)},
                        {"mean", report.mean},
                        {"ci_half", report.ci_half},
                        {"values", report.values}});
        csv << name << ',' << metric_name(task) << ',' << cfg.trials << ','
            << format_double(report.mean) << ',' << format_double(report.ci_half) << '\n';
    }

    const json config{{"task", a.task},
                      {"mechanisms", mechanisms},
                      {"trials", a.trials},
                      {"epsilon", a.epsilon},
                      {"delta", delta},
                      {"directions", a.directions},
                      {"tau", a.tau == 0.0 ? json(nullptr) : json(a.tau)},
                      {"frac", a.frac},
                      {"theorem", a.theorem.empty() ? json(nullptr) : json(a.theorem)},
                      {"target", a.target},
                      {"holdout", a.holdout},
                      {"ridge_lambda", a.ridge_lambda}};
    const json dataset{{"source", a.synthetic ? "synthetic" : a.data_path},
                       {"features", data.num_features()},
                       {"samples", data.num_samples()},
                       {"lo", data.lo()},
                       {"hi", data.hi()}};

    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    write_text(dir / "results.csv", csv.str());
    write_json(dir / "results.json", json{{"command", "experiment"},
                                          {"version", kVersion},
                                          {"seed", a.seed},
                                          {"config", config},
                                          {"dataset", dataset},
                                          {"outputs", {{"table", "results.csv"}}},
                                          {"rows", rows}});
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    log_info("experiment: wrote " + (dir / "results.json").string() + " in " +
             format_double(dt.count()) + " s");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix-valued differential privacy toolkit"};
    app.require_subcommand(1);

    BudgetArgs ba;
    CLI::App* budget = app.add_subcommand(
        "budget", "Report design-condition terms and the precision budget as JSON");
    budget->add_option("--m", ba.m, "query rows")->required();
    budget->add_option("--n", ba.n, "query columns")->required();
    budget->add_option("--s2", ba.s2, "L2 sensitivity")->required();
    budget->add_option("--gamma", ba.gamma, "supremum Frobenius norm")->required();
    budget->add_option("--epsilon", ba.epsilon, "privacy budget")->required();
    budget->add_option("--delta", ba.delta, "privacy slack")->required();
    budget->add_option("--structure", ba.structure, "query structure: general|psd");
    budget->add_option("--mode", ba.mode, "budget mode: unimodal|equimodal");
    budget->add_option("--theorem", ba.theorem, "design branch: general|psd");

    PerturbArgs pa;
    CLI::App* perturb = app.add_subcommand(
        "perturb", "Add calibrated matrix noise to a CSV matrix");
    perturb->add_option("--in", pa.in, "input CSV matrix")->required();
    perturb->add_option("--out", pa.out, "output directory");
    perturb->add_option("--mechanism", pa.mechanism,
                        "mvg-unimodal|mvg-equimodal|gaussian|laplace")
        ->required();
    perturb->add_option("--seed", pa.seed, "root seed (required; no OS entropy fallback)")
        ->required();
    perturb->add_option("--epsilon", pa.epsilon, "privacy budget");
    perturb->add_option("--delta", pa.delta, "privacy slack");
    perturb->add_option("--s2", pa.s2, "L2 sensitivity");
    perturb->add_option("--gamma", pa.gamma, "supremum Frobenius norm");
    perturb->add_option("--s1", pa.s1, "L1 sensitivity (laplace)");
    perturb->add_option("--structure", pa.structure, "query structure: general|psd");
    perturb->add_option("--theorem", pa.theorem, "design branch: general|psd");
    perturb->add_option("--directions", pa.directions,
                        "noise directions: identity|file:PATH|private-svd");
    perturb->add_option("--theta", pa.theta_file, "CSV vector of precision fractions");
    perturb->add_option("--frac", pa.frac,
                        "budget fraction spent estimating directions (private-svd)");

    ExpArgs flags;
    std::string config_path;
    CLI::App* experiment = app.add_subcommand(
        "experiment", "Run seeded mechanism trials on a task and emit a results table");
    experiment->add_option("--config", config_path, "JSON config file (flags override)");
    experiment->add_option("--task", flags.task, "regression|first-pc|covariance");
    experiment->add_option("--mechanism", flags.mechanisms,
                           "mechanism row(s); default: all valid for the task");
    experiment->add_option("--data", flags.data_path, "dataset CSV (header + samples)");
    experiment->add_flag("--synthetic", flags.synthetic, "generate a synthetic dataset");
    experiment->add_option("--trials", flags.trials, "trial count");
    experiment->add_option("--epsilon", flags.epsilon, "privacy budget");
    experiment->add_option("--delta", flags.delta, "privacy slack; default 1/samples");
    experiment->add_option("--features", flags.features, "synthetic feature count");
    experiment->add_option("--samples", flags.samples, "synthetic sample count");
    experiment->add_option("--directions", flags.directions,
                           "identity|basis:I,J,...|private-svd");
    experiment->add_option("--tau", flags.tau,
                           "percent of precision given to flagged directions");
    experiment->add_option("--frac", flags.frac,
                           "budget fraction spent estimating directions");
    experiment->add_option("--target", flags.target, "response feature (regression)");
    experiment->add_option("--holdout", flags.holdout,
                           "holdout sample count; 0 picks a quarter");
    experiment->add_option("--ridge-lambda", flags.ridge_lambda, "ridge penalty");
    experiment->add_option("--theorem", flags.theorem, "design branch: general|psd");
    experiment->add_option("--out", flags.out, "output directory");
    experiment->add_option("--seed", flags.seed,
                           "root seed (required; no OS entropy fallback)")
        ->required();

    try {
        app.parse(argc, argv);

        if (budget->parsed()) return run_budget(ba);
        if (perturb->parsed()) {
            pa.has_epsilon = perturb->count("--epsilon") > 0;
            pa.has_delta = perturb->count("--delta") > 0;
            pa.has_s2 = perturb->count("--s2") > 0;
            pa.has_gamma = perturb->count("--gamma") > 0;
            pa.has_s1 = perturb->count("--s1") > 0;
            pa.has_theorem = perturb->count("--theorem") > 0;
            pa.has_theta = perturb->count("--theta") > 0;
            return run_perturb(pa);
        }
        // experiment: config file underlies, explicit flags override
        ExpArgs eff;
        eff.seed = flags.seed;
        if (!config_path.empty()) merge_config_file(eff, config_path);
        const auto used = [&](const char* name) { return experiment->count(name) > 0; };
        if (used("--task")) eff.task = flags.task;
        if (used("--mechanism")) eff.mechanisms = flags.mechanisms;
        if (used("--data")) eff.data_path = flags.data_path;
        if (used("--synthetic")) eff.synthetic = flags.synthetic;
        if (used("--trials")) eff.trials = flags.trials;
        if (used("--epsilon")) eff.epsilon = flags.epsilon;
        if (used("--delta")) eff.delta = flags.delta;
        if (used("--features")) eff.features = flags.features;
        if (used("--samples")) eff.samples = flags.samples;
        if (used("--directions")) eff.directions = flags.directions;
        if (used("--tau")) eff.tau = flags.tau;
        if (used("--frac")) eff.frac = flags.frac;
        if (used("--target")) eff.target = flags.target;
        if (used("--holdout")) eff.holdout = flags.holdout;
        if (used("--ridge-lambda")) eff.ridge_lambda = flags.ridge_lambda;
        if (used("--theorem")) eff.theorem = flags.theorem;
        if (used("--out")) eff.out = flags.out;
        return run_experiment_cmd(eff);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MechanismError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
