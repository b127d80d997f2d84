#include "qcorr/verify.hpp"

#include "qcorr/parallel.hpp"
#include "qcorr/random_states.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

struct SuiteSpec {
    int default_count;
    double threshold;
};

SuiteSpec spec_for(const std::string& suite) {
    if (suite == "thm1") return {1000, 1e-8};
    if (suite == "thm2") return {1000, 1e-9};
    if (suite == "rewriting") return {1000, 1e-9};
    if (suite == "monotonicity-eq4") return {200, 1e-6};
    if (suite == "monotonicity-eq6") return {200, 1e-6};
    if (suite == "multipartite") return {100, 1e-6};
    if (suite == "povm") return {100, 1e-6};
    if (suite == "geometric") return {50, 1e-6};
    throw UnsupportedMeasure("unknown verify suite: " + suite);
}

long dims_product(const std::vector<int>& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

} // namespace

bool suite_known(const std::string& name) {
    try {
        spec_for(name);
        return true;
    } catch (const UnsupportedMeasure&) {
        return false;
    }
}

std::vector<std::string> known_suites() {
    return {"thm1",
            "thm2",
            "rewriting",
            "monotonicity-eq4",
            "monotonicity-eq6",
            "multipartite",
            "povm",
            "geometric"};
}

VerifySummary run_verify_suite(const VerifyOptions& options) {
    const SuiteSpec spec = spec_for(options.suite);
    const int count = options.count > 0 ? options.count : spec.default_count;
    const std::vector<int>& dims = options.dims;
    if (dims.size() < 2) throw DimensionMismatch("verify suites need bipartite dims");

    VerifySummary summary;
    summary.suite = options.suite;
    summary.config = {{"suite", options.suite},
                      {"count", count},
                      {"dims", dims},
                      {"partition", options.partition},
                      {"seed", options.seed},
                      {"threshold", spec.threshold},
                      {"restarts", options.optimizer.restarts},
                      {"max_iterations", options.optimizer.max_iterations},
                      {"objective_tolerance", options.optimizer.objective_tolerance}};
    summary.cases.resize(static_cast<std::size_t>(count));

    const std::string suite = options.suite;
    const double threshold = spec.threshold;

    auto run_case = [&](int index) {
        const std::uint64_t case_seed = mix_seed(options.seed, static_cast<std::uint64_t>(index));
        OptimizerConfig optimizer = options.optimizer;
        optimizer.seed = mix_seed(case_seed, 7);

        nlohmann::json record{{"case_seed", case_seed}};
        std::string status = "PASS";
        double residual = 0.0;

        if (suite == "thm1") {
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const ProjectiveBasis basis(haar_random_unitary(dims[0], mix_seed(case_seed, 1)));
            const EntanglementCertificate cert = measurement_entanglement(state, basis);
            residual = std::max({std::abs(cert.upper_bound - cert.lower_bound),
                                 std::abs(cert.upper_bound - cert.certified_value),
                                 std::abs(cert.lower_bound - cert.certified_value)});
            record["lower"] = cert.lower_bound;
            record["upper"] = cert.upper_bound;
            record["certified"] = cert.certified_value;
            if (residual > threshold) status = "FAIL";
        } else if (suite == "thm2") {
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const ProjectiveBasis basis(haar_random_unitary(dims[0], mix_seed(case_seed, 1)));
            residual =
                std::abs(discord_objective(state, basis) - partial_entanglement(state, basis));
            if (residual > threshold) status = "FAIL";
        } else if (suite == "rewriting") {
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const ProjectiveBasis basis(haar_random_unitary(dims[0], mix_seed(case_seed, 1)));
            residual = discord_rewriting_residual(state, basis);
            if (residual > threshold) status = "FAIL";
        } else if (suite == "monotonicity-eq4" || suite == "monotonicity-eq6") {
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const KrausChannel channel = random_channel(dims[1], 2, mix_seed(case_seed, 3));
            const MonotonicityReport report =
                suite == "monotonicity-eq4"
                    ? check_monotonicity(state, channel, MonotoneQuantity::Deficit, optimizer,
                                         threshold)
                    : check_average_monotonicity(state, channel, MonotoneQuantity::Deficit,
                                                 optimizer, threshold);
            residual = report.margin;
            status = to_string(report.verdict);
            record["before"] = report.before;
            record["after"] = report.after;
            record["oracle_backed"] = report.oracle_backed;
        } else if (suite == "multipartite") {
            long part_product = 1;
            for (int p : options.partition) part_product *= p;
            if (part_product != dims[0])
                throw PartitionMismatch("partition does not factor the measured dim");
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const double bipartite = information_deficit(state, optimizer).value;
            const double multipartite =
                multipartite_deficit(state, options.partition, optimizer).value;
            residual = bipartite - multipartite;
            record["bipartite"] = bipartite;
            record["multipartite"] = multipartite;
            if (residual > threshold) status = "FAIL";
        } else if (suite == "povm") {
            const DensityMatrix state =
                ginibre_mixed(dims, static_cast<int>(dims_product(dims)), case_seed);
            const double projective = quantum_discord(state, optimizer).value;
            const double extended = povm_discord(state, dims[0] * dims[0], optimizer).value;
            residual = extended - projective;
            record["projective"] = projective;
            record["povm"] = extended;
            if (residual > threshold) status = "FAIL";
        } else if (suite == "geometric") {
            const DensityMatrix state = random_cq(dims[0], dims[1], case_seed);
            GeometricConfig geo;
            geo.outer = optimizer;
            geo.outer.restarts = std::min(optimizer.restarts, 6);
            residual = geometric_cq_distance(state, geo).value;
            if (residual > threshold) status = "FAIL";
        }

        record["status"] = status;
        record["residual"] = residual;
        summary.cases[static_cast<std::size_t>(index)] = std::move(record);
    };

    parallel_for(count, run_case, options.threads);

    for (const auto& record : summary.cases) {
        const std::string status = record.at("status").get<std::string>();
        if (status == "PASS")
            ++summary.pass;
        else if (status == "FAIL")
            ++summary.fail;
        else
            ++summary.inconclusive;
        summary.max_residual =
            std::max(summary.max_residual, record.at("residual").get<double>());
    }
    return summary;
}

} // namespace qcorr
