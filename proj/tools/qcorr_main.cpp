#include "qcorr/parallel.hpp"
#include "qcorr/random_states.hpp"
#include "qcorr/report.hpp"
#include "qcorr/state_io.hpp"
#include "qcorr/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace qcorr;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUnsupported = 4;

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t next = text.find('x', at);
        if (next == std::string::npos) next = text.size();
        dims.push_back(std::stoi(text.substr(at, next - at)));
        at = next + 1;
    }
    if (dims.empty()) throw OutOfRange("empty dims spec");
    return dims;
}

std::vector<int> parse_partition(const std::string& text) {
    std::vector<int> parts;
    std::size_t at = 0;
    while (at < text.size()) {
        std::size_t next = text.find(',', at);
        if (next == std::string::npos) next = text.size();
        parts.push_back(std::stoi(text.substr(at, next - at)));
        at = next + 1;
    }
    return parts;
}

std::uint64_t seed_fallback() {
    if (const char* env = std::getenv("QC_SEED")) return std::strtoull(env, nullptr, 10);
    return 0;
}

/// Optional run-configuration file: plain `key = value` lines with `#`
/// comments. Recognized keys: restarts, max_iterations, tol, step_scale,
/// seed. Explicit flags take precedence.
struct RunConfig {
    std::optional<int> restarts;
    std::optional<int> max_iterations;
    std::optional<double> tol;
    std::optional<double> step_scale;
    std::optional<std::uint64_t> seed;
};

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open run configuration " + path);
    RunConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ParseError(path + ":" + std::to_string(line_number) +
                                 ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto begin = s.find_first_not_of(" \t\r");
            const auto end = s.find_last_not_of(" \t\r");
            return begin == std::string::npos ? std::string{} : s.substr(begin, end - begin + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "restarts")
            config.restarts = std::stoi(value);
        else if (key == "max_iterations")
            config.max_iterations = std::stoi(value);
        else if (key == "tol")
            config.tol = std::stod(value);
        else if (key == "step_scale")
            config.step_scale = std::stod(value);
        else if (key == "seed")
            config.seed = std::strtoull(value.c_str(), nullptr, 10);
        else
            throw ParseError(path + ":" + std::to_string(line_number) + ": unknown key " + key);
    }
    return config;
}

nlohmann::json diagnostics_json(const OptimizationResult& result) {
    nlohmann::json restarts = nlohmann::json::array();
    for (const auto& r : result.restarts)
        restarts.push_back({{"restart", r.restart},
                            {"value", r.value},
                            {"converged", r.converged},
                            {"iterations", r.iterations},
                            {"evaluations", r.evaluations}});
    return {{"restarts", std::move(restarts)},
            {"converged", result.converged},
            {"flat_landscape", result.flat_landscape}};
}

nlohmann::json bases_json(const std::vector<ProjectiveBasis>& bases) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& basis : bases) out.push_back(basis_to_json(basis));
    return out;
}

void emit(const ReportWriter& report, const std::string& out_path, const std::string& format) {
    if (out_path.empty())
        std::cout << (format == "csv" ? report.csv() : report.records());
    else
        report.write(out_path, format);
}

struct ComputeArgs {
    std::string state_path;
    std::string quantity;
    std::string measure = "closed-form";
    int povm_dim = 0;
    std::string partition;
    std::string config_path;
    int restarts = 20;
    bool restarts_given = false;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double tol = 1e-8;
    bool tol_given = false;
    bool oracle = false;
    std::string out;
    std::string format = "records";
};

OptimizerConfig resolve_optimizer(const std::string& config_path, bool restarts_given,
                                  int restarts, bool tol_given, double tol, bool seed_given,
                                  std::uint64_t seed) {
    OptimizerConfig config;
    std::optional<std::uint64_t> file_seed;
    if (!config_path.empty()) {
        const RunConfig file = parse_run_config(config_path);
        if (file.restarts) config.restarts = *file.restarts;
        if (file.max_iterations) config.max_iterations = *file.max_iterations;
        if (file.tol) config.objective_tolerance = *file.tol;
        if (file.step_scale) config.step_scale = *file.step_scale;
        file_seed = file.seed;
    }
    if (restarts_given) config.restarts = restarts;
    if (tol_given) config.objective_tolerance = tol;
    config.seed = seed_given ? seed : file_seed.value_or(seed_fallback());
    return config;
}

int run_compute(const ComputeArgs& args) {
    DensityMatrix state = [&] {
        try {
            return load_state(args.state_path);
        } catch (const Error& e) {
            std::cerr << "invalid state file: " << e.what() << '\n';
            std::exit(kExitInvalidInput);
        }
    }();

    std::string quantity = args.quantity;
    std::string measure = args.measure;
    if (const auto colon = quantity.find(':'); colon != std::string::npos) {
        measure = quantity.substr(colon + 1);
        quantity = quantity.substr(0, colon);
    }
    if (measure != "closed-form" && measure != "geometric") {
        std::cerr << "unsupported measure: " << measure << '\n';
        return kExitUnsupported;
    }
    const MeasureKind measure_kind =
        measure == "geometric" ? MeasureKind::Geometric : MeasureKind::ClosedForm;

    OptimizerConfig config;
    try {
        config = resolve_optimizer(args.config_path, args.restarts_given, args.restarts,
                                   args.tol_given, args.tol, args.seed_given, args.seed);
    } catch (const Error& e) {
        std::cerr << "invalid run configuration: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    const int dA = state.dims()[0];
    std::vector<int> partition =
        args.partition.empty() ? std::vector<int>{dA} : parse_partition(args.partition);

    nlohmann::json config_echo{{"state", args.state_path},
                               {"quantity", args.quantity},
                               {"measure", measure},
                               {"povm_dim", args.povm_dim},
                               {"partition", partition},
                               {"restarts", config.restarts},
                               {"max_iterations", config.max_iterations},
                               {"step_scale", config.step_scale},
                               {"tol", config.objective_tolerance},
                               {"format", args.format}};
    ReportWriter report("compute", config_echo, config.seed);

    std::optional<CorrelationResult> result;
    std::string provenance;
    try {
        if (quantity == "discord") {
            result = quantum_discord(state, config);
            provenance = "min over bases of the conditional-entropy discord objective (multistart simplex upper bound)";
        } else if (quantity == "deficit") {
            result = information_deficit(state, config);
            provenance = "min over bases of S(dephased) - S(rho) (multistart simplex upper bound)";
        } else if (quantity == "generalized-deficit") {
            result = generalized_deficit(state, measure_kind, config);
            provenance = std::string("generalized deficit, measure = ") + measure;
        } else if (quantity == "generalized-discord") {
            result = generalized_discord(state, measure_kind, config);
            provenance = std::string("generalized discord, measure = ") + measure;
        } else if (quantity == "povm-discord") {
            if (args.povm_dim > 0) {
                result = povm_discord(state, args.povm_dim, config);
                provenance = "discord over rank-one projectors of the Naimark-extended space";
            } else {
                // Default extension sweep dA..dA^2; the feasible sets nest,
                // so the minimum over the sweep is the reported value.
                nlohmann::json sweep = nlohmann::json::array();
                for (int dim = dA; dim <= dA * dA; ++dim) {
                    CorrelationResult candidate = povm_discord(state, dim, config);
                    sweep.push_back({{"dim", dim}, {"value", candidate.value}});
                    if (!result || candidate.value < result->value) result = std::move(candidate);
                }
                provenance = "min of the Naimark-extension sweep dA..dA^2";
                nlohmann::json record{{"quantity", args.quantity},
                                      {"value", result->value},
                                      {"provenance", provenance},
                                      {"sweep", std::move(sweep)},
                                      {"argmin_bases", bases_json(result->argmin)},
                                      {"diagnostics", diagnostics_json(result->optimization)}};
                report.add_case(std::move(record));
                report.set_summary({{"value", result->value},
                                    {"converged", result->optimization.converged}});
                emit(report, args.out, args.format);
                return result->optimization.converged ? kExitOk : kExitNoConvergence;
            }
        } else if (quantity == "multipartite-deficit") {
            result = multipartite_deficit(state, partition, config);
            provenance = "min over product bases of S(dephased) - S(rho)";
        } else if (quantity == "multipartite-discord") {
            result = multipartite_discord(state, partition, config);
            provenance = "min over product bases of the n-partite discord objective";
        } else if (quantity == "geometric") {
            GeometricConfig geo;
            geo.outer = config;
            geo.outer.restarts = std::min(config.restarts, 6);
            const GeometricResult geometric = geometric_cq_distance(state, geo);
            nlohmann::json record{{"quantity", "geometric"},
                                  {"value", geometric.value},
                                  {"provenance",
                                   "min over CQ states of 1 - F (nested simplex upper bound)"},
                                  {"argmin_basis", basis_to_json(geometric.basis)},
                                  {"diagnostics", diagnostics_json(geometric.diagnostics)}};
            report.add_case(std::move(record));
            report.set_summary({{"value", geometric.value},
                                {"converged", geometric.diagnostics.converged}});
            emit(report, args.out, args.format);
            return geometric.diagnostics.converged ? kExitOk : kExitNoConvergence;
        } else {
            std::cerr << "unsupported quantity: " << quantity << '\n';
            return kExitUnsupported;
        }
    } catch (const Error& e) {
        std::cerr << "computation failed: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    nlohmann::json record{{"quantity", args.quantity},
                          {"value", result->value},
                          {"provenance", provenance},
                          {"argmin_bases", bases_json(result->argmin)},
                          {"diagnostics", diagnostics_json(result->optimization)}};
    if (args.oracle) {
        if (const auto gap = attach_oracle_gap(*result, state))
            record["oracle_gap"] = *gap;
        else
            record["oracle_gap"] = nullptr;
    }
    report.add_case(std::move(record));
    report.set_summary({{"value", result->value},
                        {"converged", result->optimization.converged}});
    emit(report, args.out, args.format);
    return result->optimization.converged ? kExitOk : kExitNoConvergence;
}

struct VerifyArgs {
    std::string suite;
    int count = 0;
    std::string dims = "2x2";
    std::string partition = "2,2";
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int restarts = 20;
    bool restarts_given = false;
    double tol = 1e-8;
    bool tol_given = false;
    std::string out;
    std::string format = "records";
};

int run_verify(const VerifyArgs& args) {
    if (!suite_known(args.suite)) {
        std::cerr << "unknown suite: " << args.suite << '\n';
        return kExitUnsupported;
    }
    VerifyOptions options;
    options.suite = args.suite;
    options.count = args.count;
    options.dims = parse_dims(args.dims);
    options.partition = parse_partition(args.partition);
    const OptimizerConfig optimizer = [&] {
        try {
            return resolve_optimizer(args.config_path, args.restarts_given, args.restarts,
                                     args.tol_given, args.tol, args.seed_given, args.seed);
        } catch (const Error& e) {
            std::cerr << "invalid run configuration: " << e.what() << '\n';
            std::exit(kExitInvalidInput);
        }
    }();
    options.seed = optimizer.seed;
    options.optimizer = optimizer;

    VerifySummary summary = [&] {
        try {
            return run_verify_suite(options);
        } catch (const Error& e) {
            std::cerr << "verify failed: " << e.what() << '\n';
            std::exit(kExitInvalidInput);
        }
    }();

    ReportWriter report("verify", summary.config, options.seed);
    for (auto& record : summary.cases) report.add_case(std::move(record));
    report.set_summary({{"suite", summary.suite},
                        {"pass", summary.pass},
                        {"fail", summary.fail},
                        {"inconclusive", summary.inconclusive},
                        {"max_residual", summary.max_residual}});
    emit(report, args.out, args.format);

    std::cerr << summary.suite << ": pass " << summary.pass << ", fail " << summary.fail
              << ", inconclusive " << summary.inconclusive << ", max residual "
              << summary.max_residual << '\n';
    return summary.fail == 0 ? kExitOk : 1;
}

struct RandomArgs {
    std::string kind;
    std::string dims = "2x2";
    int rank = 0;
    int count = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out;
};

int run_random(const RandomArgs& args) {
    const std::uint64_t seed = args.seed_given ? args.seed : seed_fallback();
    std::vector<int> dims;
    try {
        dims = parse_dims(args.dims);
        if (args.count < 1) throw OutOfRange("count must be positive");
        if (args.kind != "ginibre" && args.kind != "pure" && args.kind != "cq" &&
            args.kind != "werner")
            throw OutOfRange("unknown kind: " + args.kind);
        if (args.kind == "cq" && dims.size() != 2)
            throw OutOfRange("cq generation needs bipartite dims");
    } catch (const std::exception& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    std::filesystem::create_directories(args.out);
    long total = 1;
    for (int d : dims) total *= d;
    const int rank = args.rank > 0 ? args.rank : static_cast<int>(total);

    nlohmann::json files = nlohmann::json::array();
    try {
        for (int i = 0; i < args.count; ++i) {
            const std::uint64_t file_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
            char name[32];
            std::snprintf(name, sizeof(name), "state_%04d.json", i);
            const std::string path = (std::filesystem::path(args.out) / name).string();

            nlohmann::json entry{{"file", name}, {"seed", file_seed}};
            if (args.kind == "ginibre") {
                save_state(ginibre_mixed(dims, rank, file_seed), path);
                entry["rank"] = rank;
            } else if (args.kind == "pure") {
                save_state(haar_pure(dims, file_seed), path);
            } else if (args.kind == "cq") {
                save_state(random_cq(dims[0], dims[1], file_seed), path);
            } else {
                const double p = args.count == 1
                                     ? 0.0
                                     : static_cast<double>(i) / (args.count - 1);
                save_state(werner(p), path);
                entry["p"] = round_to_reported_precision(p);
            }
            files.push_back(std::move(entry));
        }
    } catch (const Error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    nlohmann::json manifest{{"schema", kReportSchema},  {"tool_version", kToolVersion},
                            {"kind", args.kind},        {"dims", dims},
                            {"rank", rank},             {"count", args.count},
                            {"seed", seed},             {"files", std::move(files)}};
    std::ofstream manifest_out(std::filesystem::path(args.out) / "manifest.json");
    manifest_out << manifest.dump(2) << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum correlation measures via measurement-generated entanglement"};
    app.require_subcommand(1);

    ComputeArgs compute_args;
    auto* compute = app.add_subcommand("compute", "compute a quantity on a state file");
    compute->add_option("--state", compute_args.state_path, "state file path")->required();
    compute->add_option("--quantity", compute_args.quantity, "quantity name")->required();
    compute->add_option("--measure", compute_args.measure, "closed-form or geometric");
    compute->add_option("--povm-dim", compute_args.povm_dim, "Naimark extension dim");
    compute->add_option("--partition", compute_args.partition, "A partition, e.g. 2,2");
    compute->add_option("--config", compute_args.config_path,
                        "run-configuration file (key = value lines)");
    auto* compute_restarts =
        compute->add_option("--restarts", compute_args.restarts, "optimizer restarts");
    auto* compute_seed = compute->add_option("--seed", compute_args.seed, "optimizer seed");
    auto* compute_tol = compute->add_option("--tol", compute_args.tol, "objective tolerance");
    compute->add_flag("--oracle", compute_args.oracle,
                      "record the qubit grid-oracle gap when applicable");
    compute->add_option("--out", compute_args.out, "report path (stdout when omitted)");
    compute->add_option("--format", compute_args.format, "records or csv");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run an ensemble verification suite");
    verify->add_option("--suite", verify_args.suite, "suite name")->required();
    verify->add_option("--count", verify_args.count, "ensemble size (0 = suite default)");
    verify->add_option("--dims", verify_args.dims, "subsystem dims, e.g. 2x2");
    verify->add_option("--partition", verify_args.partition, "A partition for multipartite");
    verify->add_option("--config", verify_args.config_path,
                       "run-configuration file (key = value lines)");
    auto* verify_seed = verify->add_option("--seed", verify_args.seed, "ensemble seed");
    auto* verify_restarts =
        verify->add_option("--restarts", verify_args.restarts, "optimizer restarts");
    auto* verify_tol =
        verify->add_option("--tol", verify_args.tol, "optimizer objective tolerance");
    verify->add_option("--out", verify_args.out, "report path (stdout when omitted)");
    verify->add_option("--format", verify_args.format, "records or csv");

    RandomArgs random_args;
    auto* random = app.add_subcommand("random", "generate seeded state files");
    random->add_option("--kind", random_args.kind, "ginibre, pure, cq or werner")->required();
    random->add_option("--dims", random_args.dims, "subsystem dims, e.g. 2x2");
    random->add_option("--rank", random_args.rank, "Ginibre rank (default full)");
    random->add_option("--count", random_args.count, "number of states");
    auto* random_seed = random->add_option("--seed", random_args.seed, "base seed");
    random->add_option("--out", random_args.out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    compute_args.seed_given = compute_seed->count() > 0;
    compute_args.restarts_given = compute_restarts->count() > 0;
    compute_args.tol_given = compute_tol->count() > 0;
    verify_args.seed_given = verify_seed->count() > 0;
    verify_args.restarts_given = verify_restarts->count() > 0;
    verify_args.tol_given = verify_tol->count() > 0;
    random_args.seed_given = random_seed->count() > 0;

    try {
        if (compute->parsed()) return run_compute(compute_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (random->parsed()) return run_random(random_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitOk;
}
