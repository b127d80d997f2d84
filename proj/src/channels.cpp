#include "qcorr/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qcorr {

namespace {

Matrix lift_to_B(const Matrix& op, int dA) {
    return kron(Matrix::Identity(dA, dA), op);
}

void check_channel_input(const DensityMatrix& state, const KrausChannel& channel) {
    const int dB = state.dim() / state.dims()[0];
    if (channel.in_dim() != dB)
        throw DimensionMismatch("channel input dim " + std::to_string(channel.in_dim()) +
                                " does not match B dim " + std::to_string(dB));
}

struct QuantityEvaluator {
    MonotoneQuantity quantity;
    OptimizerConfig config;

    double heuristic(const DensityMatrix& state) const {
        switch (quantity) {
            case MonotoneQuantity::Deficit:
                return information_deficit(state, config).value;
            case MonotoneQuantity::Discord:
                return quantum_discord(state, config).value;
            case MonotoneQuantity::GeometricDeficit:
                return generalized_deficit(state, MeasureKind::Geometric, config).value;
            case MonotoneQuantity::GeometricDiscord:
                return generalized_discord(state, MeasureKind::Geometric, config).value;
        }
        return 0.0;
    }

    bool oracle_available(const DensityMatrix& state) const {
        if (state.dims()[0] != 2) return false;
        return quantity == MonotoneQuantity::Deficit || quantity == MonotoneQuantity::Discord;
    }

    double oracle(const DensityMatrix& state) const {
        if (quantity == MonotoneQuantity::Deficit)
            return grid_oracle_qubit(
                [&](const ProjectiveBasis& b) { return deficit_objective(state, b); }, 2);
        return grid_oracle_qubit(
            [&](const ProjectiveBasis& b) { return discord_objective(state, b); }, 2);
    }
};

Verdict judge(double margin, double tol, bool oracle_backed) {
    if (margin <= tol) return Verdict::Pass;
    return oracle_backed ? Verdict::Fail : Verdict::Inconclusive;
}

} // namespace

KrausChannel::KrausChannel(std::vector<Matrix> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) throw IncompleteKraus("empty operator list");
    const Eigen::Index rows = operators_.front().rows();
    const Eigen::Index cols = operators_.front().cols();
    if (rows < 1 || cols < 1) throw IncompleteKraus("empty Kraus operator");
    for (const auto& op : operators_)
        if (op.rows() != rows || op.cols() != cols)
            throw IncompleteKraus("Kraus operators must share one shape");

    Matrix sum = Matrix::Zero(cols, cols);
    for (const auto& op : operators_) sum += op.adjoint() * op;
    const double residual = (sum - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
    if (residual > 1e-9)
        throw IncompleteKraus("completeness residual = " + std::to_string(residual));
}

DensityMatrix apply_channel_B(const DensityMatrix& state, const KrausChannel& channel) {
    check_channel_input(state, channel);
    const int dA = state.dims()[0];
    const long out_dim = static_cast<long>(dA) * channel.out_dim();
    Matrix out = Matrix::Zero(out_dim, out_dim);
    for (const auto& op : channel.operators()) {
        const Matrix lifted = lift_to_B(op, dA);
        out += lifted * state.matrix() * lifted.adjoint();
    }
    return DensityMatrix::trusted(std::move(out), {dA, channel.out_dim()});
}

std::vector<InstrumentOutcome> instrument_on_B(const DensityMatrix& state,
                                               const KrausChannel& channel) {
    check_channel_input(state, channel);
    const int dA = state.dims()[0];
    std::vector<InstrumentOutcome> outcomes;
    outcomes.reserve(channel.operators().size());
    for (const auto& op : channel.operators()) {
        const Matrix lifted = lift_to_B(op, dA);
        Matrix post = lifted * state.matrix() * lifted.adjoint();
        InstrumentOutcome outcome;
        outcome.probability = post.trace().real();
        if (outcome.probability > kNullOutcome)
            outcome.state = DensityMatrix::trusted(post / outcome.probability,
                                                   {dA, channel.out_dim()});
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

KrausChannel random_channel(int d_in, int kraus_count, std::uint64_t seed, int d_out) {
    if (d_in < 1) throw InvalidDimension("channel input dim must be positive");
    if (kraus_count < 1) throw InvalidDimension("need at least one Kraus operator");
    if (d_out == 0) d_out = d_in;
    const long total = static_cast<long>(d_out) * kraus_count;
    if (total < d_in)
        throw InvalidDimension("environment too small for an isometry");

    const Matrix u = haar_random_unitary(static_cast<int>(total), seed);
    const Matrix isometry = u.leftCols(d_in);
    std::vector<Matrix> operators;
    operators.reserve(static_cast<std::size_t>(kraus_count));
    for (int e = 0; e < kraus_count; ++e)
        operators.push_back(isometry.middleRows(static_cast<long>(e) * d_out, d_out));
    return KrausChannel(std::move(operators));
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "UNKNOWN";
}

const char* to_string(MonotoneQuantity quantity) {
    switch (quantity) {
        case MonotoneQuantity::Deficit: return "deficit";
        case MonotoneQuantity::Discord: return "discord";
        case MonotoneQuantity::GeometricDeficit: return "geometric-deficit";
        case MonotoneQuantity::GeometricDiscord: return "geometric-discord";
    }
    return "unknown";
}

MonotonicityReport check_monotonicity(const DensityMatrix& state, const KrausChannel& channel,
                                      MonotoneQuantity quantity, const OptimizerConfig& config,
                                      double tol) {
    const QuantityEvaluator eval{quantity, config};
    const DensityMatrix after_state = apply_channel_B(state, channel);

    MonotonicityReport report;
    report.before = eval.heuristic(state);
    report.after = eval.heuristic(after_state);
    report.oracle_backed = eval.oracle_available(state);
    if (report.oracle_backed) {
        report.before_oracle = eval.oracle(state);
        report.after_oracle = eval.oracle(after_state);
        report.margin = *report.after_oracle - *report.before_oracle;
    } else {
        report.margin = report.after - report.before;
    }
    report.verdict = judge(report.margin, tol, report.oracle_backed);
    return report;
}

MonotonicityReport check_average_monotonicity(const DensityMatrix& state,
                                              const KrausChannel& channel,
                                              MonotoneQuantity quantity,
                                              const OptimizerConfig& config, double tol) {
    const QuantityEvaluator eval{quantity, config};
    const auto outcomes = instrument_on_B(state, channel);

    MonotonicityReport report;
    report.before = eval.heuristic(state);
    report.oracle_backed = eval.oracle_available(state);

    double average = 0.0;
    double average_oracle = 0.0;
    for (const auto& outcome : outcomes) {
        if (!outcome.state) continue;
        average += outcome.probability * eval.heuristic(*outcome.state);
        if (report.oracle_backed)
            average_oracle += outcome.probability * eval.oracle(*outcome.state);
    }
    report.after = average;
    if (report.oracle_backed) {
        report.before_oracle = eval.oracle(state);
        report.after_oracle = average_oracle;
        report.margin = average_oracle - *report.before_oracle;
    } else {
        report.margin = report.after - report.before;
    }
    report.verdict = judge(report.margin, tol, report.oracle_backed);
    return report;
}

} // namespace qcorr
