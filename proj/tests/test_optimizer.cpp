#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "qcorr/correlations.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/parallel.hpp"
#include "qcorr/report.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

using namespace qcorr;
using namespace qcorr::test;

namespace {

OptimizerConfig config_with_seed(std::uint64_t seed) {
    OptimizerConfig config;
    config.seed = seed;
    return config;
}

DensityMatrix random_full_rank(std::uint64_t seed) { return ginibre_mixed({2, 2}, 4, seed); }

} // namespace

TEST_CASE("zero parameters decode to the computational basis") {
    const double params2[] = {0.0, 0.0};
    CHECK(projector_distance(decode_basis(params2, 2), ProjectiveBasis::computational(2)) <
          1e-14);
    const std::vector<double> params3(9, 0.0);
    CHECK(projector_distance(decode_basis(params3, 3), ProjectiveBasis::computational(3)) <
          1e-14);
}

TEST_CASE("theta = pi/2 decodes to the Hadamard pair") {
    const double params[] = {std::numbers::pi / 2.0, 0.0};
    const ProjectiveBasis basis = decode_basis(params, 2);
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(max_abs_diff(basis.projector(0), plus) < 1e-12);
    Matrix minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    CHECK(max_abs_diff(basis.projector(1), minus) < 1e-12);
}

TEST_CASE("decode_basis checks the parameter count") {
    const double params[] = {0.1, 0.2, 0.3};
    CHECK_THROWS_AS(decode_basis(params, 2), ParameterCountMismatch);
    CHECK_THROWS_AS(decode_basis(params, 3), ParameterCountMismatch);
}

TEST_CASE("decoded bases are orthonormal for random parameters") {
    GaussianSource gauss(77);
    for (int d : {2, 3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> params(static_cast<std::size_t>(basis_parameter_count(d)));
            for (auto& p : params) p = 2.0 * gauss();
            const ProjectiveBasis basis = decode_basis(params, d);
            const double gram =
                (basis.columns().adjoint() * basis.columns() - Matrix::Identity(d, d))
                    .cwiseAbs()
                    .maxCoeff();
            CHECK(gram <= 1e-10);
        }
    }
}

TEST_CASE("objectives are invariant under per-column phases") {
    const DensityMatrix state = random_full_rank(5);
    const ProjectiveBasis basis(haar_random_unitary(2, 6));
    Matrix phased = basis.columns();
    phased.col(0) *= std::polar(1.0, 0.7);
    phased.col(1) *= std::polar(1.0, -1.3);
    const ProjectiveBasis rotated{phased};
    CHECK(std::abs(discord_objective(state, basis) - discord_objective(state, rotated)) <=
          1e-10);
    CHECK(std::abs(deficit_objective(state, basis) - deficit_objective(state, rotated)) <=
          1e-10);
}

TEST_CASE("encode_unitary inverts decode on the projector level") {
    for (int d : {2, 3, 4}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Matrix u = haar_random_unitary(d, seed + 30);
            const auto params = encode_unitary(u);
            const ProjectiveBasis decoded = decode_basis(params, d);
            CHECK(projector_distance(decoded, ProjectiveBasis(u)) < 1e-9);
        }
    }
}

TEST_CASE("minimizing a constant objective returns the constant") {
    OptimizerConfig config = config_with_seed(1);
    config.restarts = 3;
    const OptimizationResult result =
        minimize_over_bases([](const ProjectiveBasis&) { return 0.75; }, 2, config);
    CHECK(result.value == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(result.converged);
}

TEST_CASE("the Bell deficit landscape is flat at one bit") {
    OptimizerConfig config = config_with_seed(2);
    config.restarts = 6;
    const DensityMatrix bell = bell_phi_plus();
    const OptimizationResult result = minimize_over_bases(
        [&](const ProjectiveBasis& b) { return deficit_objective(bell, b); }, 2, config);
    CHECK(result.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(result.flat_landscape);
}

TEST_CASE("the optimizer result never exceeds sampled probes") {
    const DensityMatrix state = random_full_rank(9);
    OptimizerConfig config = config_with_seed(3);
    const OptimizationResult result = minimize_over_bases(
        [&](const ProjectiveBasis& b) { return discord_objective(state, b); }, 2, config);
    for (std::uint64_t probe = 0; probe < 100; ++probe) {
        const ProjectiveBasis basis(haar_random_unitary(2, mix_seed(4242, probe)));
        CHECK(result.value <= discord_objective(state, basis) + 1e-9);
    }
}

TEST_CASE("identical configs reproduce identical results") {
    const DensityMatrix state = random_full_rank(10);
    const OptimizerConfig config = config_with_seed(11);
    auto objective = [&](const ProjectiveBasis& b) { return discord_objective(state, b); };
    const OptimizationResult a = minimize_over_bases(objective, 2, config);
    const OptimizationResult b = minimize_over_bases(objective, 2, config);
    CHECK(round_to_reported_precision(a.value) == round_to_reported_precision(b.value));
    REQUIRE(a.restarts.size() == b.restarts.size());
    for (std::size_t i = 0; i < a.restarts.size(); ++i)
        CHECK(round_to_reported_precision(a.restarts[i].value) ==
              round_to_reported_precision(b.restarts[i].value));
}

TEST_CASE("multistart matches the grid oracle on random qubit states") {
    const int cases = 100;
    std::atomic<int> failures{0};
    parallel_for(cases, [&](int index) {
        const DensityMatrix state = random_full_rank(mix_seed(600, index));
        auto objective = [&](const ProjectiveBasis& b) { return discord_objective(state, b); };
        OptimizerConfig config = config_with_seed(mix_seed(601, index));
        const double optimized = minimize_over_bases(objective, 2, config).value;
        const double oracle = grid_oracle_qubit(objective, 2);
        if (std::abs(optimized - oracle) > 1e-6) ++failures;
    });
    CHECK(failures.load() <= 1);
}

TEST_CASE("the grid oracle reports constants and known zeros") {
    CHECK(grid_oracle_qubit([](const ProjectiveBasis&) { return 2.5; }, 2) ==
          doctest::Approx(2.5).epsilon(1e-15));
    const DensityMatrix cc = rho_cc();
    CHECK(grid_oracle_qubit(
              [&](const ProjectiveBasis& b) { return deficit_objective(cc, b); }, 2) <
          1e-10);
}

TEST_CASE("grid refinement is monotone under doubling") {
    const DensityMatrix state = random_full_rank(21);
    auto objective = [&](const ProjectiveBasis& b) { return discord_objective(state, b); };
    const double coarse = grid_oracle_qubit(objective, 2, {41, 81});
    const double fine = grid_oracle_qubit(objective, 2, {81, 161});
    CHECK(fine <= coarse + 1e-12);
}

TEST_CASE("the grid oracle rejects unsupported inputs") {
    auto objective = [](const ProjectiveBasis&) { return 0.0; };
    CHECK_THROWS_AS(grid_oracle_qubit(objective, 3), UnsupportedDimension);
    CHECK_THROWS_AS(grid_oracle_qubit(objective, 2, {20, 361}), OutOfRange);
}

TEST_CASE("haar_random_unitary produces unit-modulus scalars at d = 1") {
    const Matrix u = haar_random_unitary(1, 5);
    CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("haar_random_unitary is unitary and deterministic") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Matrix u = haar_random_unitary(4, seed);
        CHECK((u.adjoint() * u - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <= 1e-10);
    }
    CHECK(max_abs_diff(haar_random_unitary(3, 123), haar_random_unitary(3, 123)) == 0.0);
    CHECK(max_abs_diff(haar_random_unitary(3, 123), haar_random_unitary(3, 124)) > 1e-3);
}

TEST_CASE("optimizer configs must be positive") {
    OptimizerConfig config = config_with_seed(1);
    config.restarts = 0;
    CHECK_THROWS_AS(
        minimize_over_bases([](const ProjectiveBasis&) { return 0.0; }, 2, config), OutOfRange);
}
