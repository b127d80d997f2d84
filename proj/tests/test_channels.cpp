#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "qcorr/channels.hpp"
#include "qcorr/entanglement.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/parallel.hpp"

#include <atomic>
#include <cmath>

using namespace qcorr;
using namespace qcorr::test;

namespace {

DensityMatrix random_state(const std::vector<int>& dims, std::uint64_t seed) {
    long total = 1;
    for (int d : dims) total *= d;
    return ginibre_mixed(dims, static_cast<int>(total), seed);
}

KrausChannel identity_channel(int d) {
    return KrausChannel({Matrix::Identity(d, d)});
}

KrausChannel depolarizing_channel(int d) {
    std::vector<Matrix> ops;
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix op = Matrix::Zero(d, d);
            op(i, j) = scale;
            ops.push_back(std::move(op));
        }
    return KrausChannel(std::move(ops));
}

KrausChannel projective_instrument(int d) {
    std::vector<Matrix> ops;
    for (int i = 0; i < d; ++i) {
        Matrix op = Matrix::Zero(d, d);
        op(i, i) = 1.0;
        ops.push_back(std::move(op));
    }
    return KrausChannel(std::move(ops));
}

OptimizerConfig config_with_seed(std::uint64_t seed) {
    OptimizerConfig config;
    config.seed = seed;
    return config;
}

} // namespace

TEST_CASE("the identity channel leaves states unchanged") {
    const DensityMatrix state = random_state({2, 2}, 1);
    CHECK(max_abs_diff(apply_channel_B(state, identity_channel(2)).matrix(), state.matrix()) <
          1e-12);
}

TEST_CASE("full depolarization on B yields a product with white noise") {
    const DensityMatrix state = random_state({2, 2}, 2);
    const DensityMatrix after = apply_channel_B(state, depolarizing_channel(2));
    const int keep_a[] = {0};
    const Matrix expected =
        kron(partial_trace(state, keep_a).matrix(), Matrix::Identity(2, 2) / 2.0);
    CHECK(max_abs_diff(after.matrix(), expected) < 1e-12);
}

TEST_CASE("random channels preserve the trace") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DensityMatrix state = random_state({2, 3}, seed);
        const KrausChannel channel = random_channel(3, 3, seed + 40);
        CHECK(apply_channel_B(state, channel).matrix().trace().real() ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("incomplete operator lists are rejected") {
    CHECK_THROWS_AS(KrausChannel({(0.9 * Matrix::Identity(2, 2)).eval()}), IncompleteKraus);
    CHECK_THROWS_AS(KrausChannel({}), IncompleteKraus);
    CHECK_THROWS_AS(KrausChannel({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                    IncompleteKraus);
}

TEST_CASE("channels check the B dimension") {
    CHECK_THROWS_AS(apply_channel_B(bell_phi_plus(), identity_channel(3)), DimensionMismatch);
}

TEST_CASE("a unitary channel is a single sure outcome") {
    const DensityMatrix state = random_state({2, 2}, 5);
    const KrausChannel channel = random_channel(2, 1, 6);
    const auto outcomes = instrument_on_B(state, channel);
    REQUIRE(outcomes.size() == 1);
    CHECK(outcomes[0].probability == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(outcomes[0].state.has_value());
}

TEST_CASE("a projective instrument on B splits rho_cc evenly") {
    const auto outcomes = instrument_on_B(rho_cc(), projective_instrument(2));
    REQUIRE(outcomes.size() == 2);
    CHECK(outcomes[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(outcomes[1].probability == doctest::Approx(0.5).epsilon(1e-12));
    Matrix expected0 = Matrix::Zero(4, 4);
    expected0(0, 0) = 1.0; // |00><00|
    CHECK(max_abs_diff(outcomes[0].state->matrix(), expected0) < 1e-12);
    Matrix expected1 = Matrix::Zero(4, 4);
    expected1(3, 3) = 1.0; // |11><11|
    CHECK(max_abs_diff(outcomes[1].state->matrix(), expected1) < 1e-12);
}

TEST_CASE("instrument averages reproduce the channel output") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix state = random_state({2, 2}, seed + 60);
        const KrausChannel channel = random_channel(2, 3, seed + 80);
        Matrix average = Matrix::Zero(4, 4);
        double total = 0.0;
        for (const auto& outcome : instrument_on_B(state, channel)) {
            total += outcome.probability;
            if (outcome.state) average += outcome.probability * outcome.state->matrix();
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(max_abs_diff(average, apply_channel_B(state, channel).matrix()) < 1e-10);
    }
}

TEST_CASE("null instrument outcomes are flagged and omitted") {
    const DensityMatrix state = tensor(random_state({2}, 7), qubit_zero());
    const auto outcomes = instrument_on_B(state, projective_instrument(2));
    CHECK(outcomes[0].probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(outcomes[1].probability <= kNullOutcome);
    CHECK(!outcomes[1].state.has_value());
}

TEST_CASE("k = 1 random channels are unitary") {
    const KrausChannel channel = random_channel(3, 1, 17);
    const Matrix& v = channel.operators().front();
    CHECK((v.adjoint() * v - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((v * v.adjoint() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("random channels are complete and deterministic across seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const KrausChannel channel = random_channel(2, 2, seed);
        Matrix sum = Matrix::Zero(2, 2);
        for (const auto& op : channel.operators()) sum += op.adjoint() * op;
        CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-9);
    }
    const KrausChannel a = random_channel(2, 3, 99);
    const KrausChannel b = random_channel(2, 3, 99);
    for (std::size_t i = 0; i < a.operators().size(); ++i)
        CHECK(max_abs_diff(a.operators()[i], b.operators()[i]) == 0.0);
}

TEST_CASE("output dimension changes are supported") {
    const KrausChannel channel = random_channel(2, 2, 21, 3);
    CHECK(channel.in_dim() == 2);
    CHECK(channel.out_dim() == 3);
    const DensityMatrix state = random_state({2, 2}, 22);
    const DensityMatrix after = apply_channel_B(state, channel);
    CHECK(after.dims() == std::vector<int>{2, 3});
    CHECK(after.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("channels on B never move the A marginal") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix state = random_state({2, 2}, seed + 100);
        const KrausChannel channel = random_channel(2, 2, seed + 120);
        const int keep_a[] = {0};
        CHECK(max_abs_diff(partial_trace(state, keep_a).matrix(),
                           partial_trace(apply_channel_B(state, channel), keep_a).matrix()) <
              1e-10);
    }
}

TEST_CASE("the identity channel passes with zero margin") {
    const DensityMatrix state = random_state({2, 2}, 30);
    const MonotonicityReport report = check_monotonicity(
        state, identity_channel(2), MonotoneQuantity::Deficit, config_with_seed(31));
    CHECK(report.verdict == Verdict::Pass);
    CHECK(std::abs(report.margin) <= 1e-9);
    CHECK(report.oracle_backed);
}

TEST_CASE("full depolarization erases the Bell deficit") {
    const MonotonicityReport report =
        check_monotonicity(bell_phi_plus(), depolarizing_channel(2),
                           MonotoneQuantity::Deficit, config_with_seed(32));
    CHECK(report.verdict == Verdict::Pass);
    CHECK(*report.before_oracle == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(*report.after_oracle) <= 1e-9);
}

TEST_CASE("deterministic channels never increase deficit or discord") {
    std::atomic<int> fails{0};
    parallel_for(10, [&](int index) {
        const auto seed = static_cast<std::uint64_t>(index);
        const DensityMatrix state = random_state({2, 2}, mix_seed(200, seed));
        const KrausChannel channel = random_channel(2, 2, mix_seed(201, seed));
        const auto quantity =
            index % 2 == 0 ? MonotoneQuantity::Deficit : MonotoneQuantity::Discord;
        const MonotonicityReport report =
            check_monotonicity(state, channel, quantity, config_with_seed(mix_seed(202, seed)));
        if (report.verdict == Verdict::Fail) ++fails;
    });
    CHECK(fails.load() == 0);
}

TEST_CASE("unitary instruments keep the average exactly") {
    const DensityMatrix state = random_state({2, 2}, 40);
    const MonotonicityReport report = check_average_monotonicity(
        state, random_channel(2, 1, 41), MonotoneQuantity::Discord, config_with_seed(42));
    CHECK(report.verdict == Verdict::Pass);
    CHECK(std::abs(report.margin) <= 1e-6);
}

TEST_CASE("rho_cc stays at zero through any instrument") {
    const MonotonicityReport report =
        check_average_monotonicity(rho_cc(), random_channel(2, 2, 43),
                                   MonotoneQuantity::Deficit, config_with_seed(44));
    CHECK(report.verdict == Verdict::Pass);
    CHECK(std::abs(*report.before_oracle) <= 1e-6);
    CHECK(std::abs(*report.after_oracle) <= 1e-6);
}

TEST_CASE("instruments never increase the average deficit") {
    std::atomic<int> fails{0};
    parallel_for(10, [&](int index) {
        const auto seed = static_cast<std::uint64_t>(index);
        const DensityMatrix state = random_state({2, 2}, mix_seed(210, seed));
        const KrausChannel channel = random_channel(2, 2, mix_seed(211, seed));
        const MonotonicityReport report = check_average_monotonicity(
            state, channel, MonotoneQuantity::Deficit, config_with_seed(mix_seed(212, seed)));
        if (report.verdict == Verdict::Fail) ++fails;
    });
    CHECK(fails.load() == 0);
}

TEST_CASE("geometric quantities are heuristic-only and cannot FAIL") {
    const DensityMatrix state = random_state({2, 2}, 50);
    const KrausChannel channel = random_channel(2, 2, 51);
    OptimizerConfig config = config_with_seed(52);
    config.restarts = 4;
    const MonotonicityReport report =
        check_monotonicity(state, channel, MonotoneQuantity::GeometricDeficit, config);
    CHECK(!report.oracle_backed);
    CHECK(report.verdict != Verdict::Fail);
}

TEST_CASE("certified entanglement is LOCC-monotone on average") {
    // Instruments on B of the coupled state stay in the
    // measurement-generated class, so the certificate applies to every
    // outcome.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix state = random_state({2, 2}, mix_seed(220, seed));
        const ProjectiveBasis basis(haar_random_unitary(2, mix_seed(221, seed)));
        const KrausChannel channel = random_channel(2, 2, mix_seed(222, seed));

        const double before = measurement_entanglement(state, basis).certified_value;
        double average = 0.0;
        for (const auto& outcome : instrument_on_B(state, channel)) {
            if (!outcome.state) continue;
            average += outcome.probability *
                       measurement_entanglement(*outcome.state, basis).certified_value;
        }
        CHECK(average <= before + 1e-9);
    }
}
