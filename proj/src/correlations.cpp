#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qcorr {

namespace {

constexpr std::uint64_t kClassicalitySeed = 0x9c0ffee1;

/// Per-basis evaluation machinery for a state split as A = factor 0
/// against the merged remainder. Works on raw blocks so optimizer inner
/// loops stay allocation-light; the public objective functions take the
/// full-space route through apply_projective / measurement_outcomes and
/// are cross-checked against this path in the tests.
struct SplitContext {
    int dA = 0;
    int dB = 0;
    Matrix rho;
    Matrix rhoA;
    double entropy_A = 0.0;
    double entropy_AB = 0.0;

    static SplitContext make(const DensityMatrix& state) {
        SplitContext ctx;
        ctx.dA = state.dims()[0];
        ctx.dB = state.dim() / ctx.dA;
        ctx.rho = state.matrix();
        const int keep_a[] = {0};
        ctx.rhoA = partial_trace(state, keep_a).matrix();
        ctx.entropy_A = entropy_of_spectrum(hermitian_eigenvalues(ctx.rhoA));
        ctx.entropy_AB = entropy_of_spectrum(hermitian_eigenvalues(ctx.rho));
        return ctx;
    }

    Matrix diagonal_block(const Matrix& columns, int i) const {
        Matrix block = Matrix::Zero(dB, dB);
        for (int a = 0; a < dA; ++a)
            for (int ap = 0; ap < dA; ++ap) {
                const Complex w = std::conj(columns(a, i)) * columns(ap, i);
                block += w * rho.block(a * dB, ap * dB, dB, dB);
            }
        return block;
    }

    /// sum_i p_i S(rho_i^B), null outcomes skipped.
    double conditional_entropy_term(const ProjectiveBasis& basis) const {
        double sum = 0.0;
        for (int i = 0; i < dA; ++i) {
            const Matrix block = diagonal_block(basis.columns(), i);
            const double p = block.trace().real();
            if (p <= kNullOutcome) continue;
            sum += p * entropy_of_spectrum(hermitian_eigenvalues(block) / p);
        }
        return sum;
    }

    /// S(Lambda(rho^AB)): the dephased state is block diagonal in the
    /// measurement basis, so its spectrum is the union of the block
    /// spectra.
    double dephased_joint_entropy(const ProjectiveBasis& basis) const {
        RealVector all(static_cast<Eigen::Index>(dA) * dB);
        Eigen::Index at = 0;
        for (int i = 0; i < dA; ++i) {
            all.segment(at, dB) = hermitian_eigenvalues(diagonal_block(basis.columns(), i));
            at += dB;
        }
        return entropy_of_spectrum(all);
    }

    /// S(Lambda_A(rho^A)) = H of the basis-diagonal of rho^A.
    double dephased_marginal_entropy(const ProjectiveBasis& basis) const {
        RealVector p(dA);
        for (int i = 0; i < dA; ++i)
            p(i) = (basis.column(i).adjoint() * rhoA * basis.column(i))(0, 0).real();
        return entropy_of_spectrum(p);
    }

    double discord(const ProjectiveBasis& basis) const {
        return entropy_A - entropy_AB + conditional_entropy_term(basis);
    }

    double deficit(const ProjectiveBasis& basis) const {
        return dephased_joint_entropy(basis) - entropy_AB;
    }
};

ProjectiveBasis marginal_eigenbasis(const Matrix& rhoA) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rhoA);
    return ProjectiveBasis(solver.eigenvectors());
}

CorrelationResult package(ObjectiveKind kind, OptimizationResult optimization) {
    CorrelationResult result;
    result.kind = kind;
    result.value = optimization.value;
    result.argmin = optimization.bases;
    result.optimization = std::move(optimization);
    return result;
}

void check_partition(const DensityMatrix& state, const std::vector<int>& partition) {
    if (partition.empty()) throw PartitionMismatch("partition must be nonempty");
    long product = 1;
    for (int p : partition) {
        if (p < 1) throw PartitionMismatch("partition dims must be positive");
        product *= p;
    }
    if (product != state.dims()[0])
        throw PartitionMismatch("partition product " + std::to_string(product) +
                                " does not match measured factor dim " +
                                std::to_string(state.dims()[0]));
}

std::vector<std::vector<ProjectiveBasis>> part_eigenbasis_seed(const DensityMatrix& state,
                                                               const std::vector<int>& partition) {
    std::vector<int> split = partition;
    split.insert(split.end(), state.dims().begin() + 1, state.dims().end());
    const DensityMatrix reshaped = state.reshaped(split);
    std::vector<ProjectiveBasis> parts;
    for (int k = 0; k < static_cast<int>(partition.size()); ++k) {
        const int keep[] = {k};
        parts.push_back(marginal_eigenbasis(partial_trace(reshaped, keep).matrix()));
    }
    return {std::move(parts)};
}

} // namespace

const char* to_string(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::Discord: return "discord";
        case ObjectiveKind::Deficit: return "deficit";
        case ObjectiveKind::GeneralizedDeficit: return "generalized-deficit";
        case ObjectiveKind::GeneralizedDiscord: return "generalized-discord";
        case ObjectiveKind::PovmDiscord: return "povm-discord";
        case ObjectiveKind::MultipartiteDeficit: return "multipartite-deficit";
        case ObjectiveKind::MultipartiteDiscord: return "multipartite-discord";
    }
    return "unknown";
}

const char* to_string(MeasureKind measure) {
    return measure == MeasureKind::ClosedForm ? "closed-form" : "geometric";
}

double discord_objective(const DensityMatrix& state, const ProjectiveBasis& basis) {
    const int keep_a[] = {0};
    const DensityMatrix rho_a = partial_trace(state, keep_a);
    double conditional = 0.0;
    for (const auto& outcome : measurement_outcomes(state, basis, 0))
        if (outcome.state) conditional += outcome.probability * von_neumann_entropy(*outcome.state);
    return von_neumann_entropy(rho_a) - von_neumann_entropy(state) + conditional;
}

double deficit_objective(const DensityMatrix& state, const ProjectiveBasis& basis) {
    return von_neumann_entropy(apply_projective(state, basis, 0)) - von_neumann_entropy(state);
}

double discord_rewriting_residual(const DensityMatrix& state, const ProjectiveBasis& basis) {
    double conditional = 0.0;
    for (const auto& outcome : measurement_outcomes(state, basis, 0))
        if (outcome.state) conditional += outcome.probability * von_neumann_entropy(*outcome.state);

    const int keep_a[] = {0};
    const DensityMatrix rho_a = partial_trace(state, keep_a);
    const double rhs = von_neumann_entropy(apply_projective(state, basis, 0)) -
                       von_neumann_entropy(apply_projective(rho_a, basis, 0));
    return std::abs(conditional - rhs);
}

CorrelationResult quantum_discord(const DensityMatrix& state, const OptimizerConfig& config) {
    const SplitContext ctx = SplitContext::make(state);
    auto result = minimize_over_bases(
        [&](const ProjectiveBasis& basis) { return ctx.discord(basis); }, ctx.dA, config,
        {marginal_eigenbasis(ctx.rhoA)});
    return package(ObjectiveKind::Discord, std::move(result));
}

CorrelationResult information_deficit(const DensityMatrix& state, const OptimizerConfig& config) {
    const SplitContext ctx = SplitContext::make(state);
    auto result = minimize_over_bases(
        [&](const ProjectiveBasis& basis) { return ctx.deficit(basis); }, ctx.dA, config,
        {marginal_eigenbasis(ctx.rhoA)});
    return package(ObjectiveKind::Deficit, std::move(result));
}

CorrelationResult generalized_deficit(const DensityMatrix& state, MeasureKind measure,
                                      const OptimizerConfig& config) {
    if (measure == MeasureKind::ClosedForm) {
        // By the matching bounds, the certified entanglement of the coupled
        // state equals the deficit objective basis by basis.
        CorrelationResult result = information_deficit(state, config);
        result.kind = ObjectiveKind::GeneralizedDeficit;
        result.measure = MeasureKind::ClosedForm;
        return result;
    }

    const SplitContext ctx = SplitContext::make(state);
    GeometricConfig geo;
    geo.outer = config;
    auto result = minimize_over_bases(
        [&](const ProjectiveBasis& basis) {
            return 1.0 - best_cq_fidelity(state, basis, geo).fidelity;
        },
        ctx.dA, config, {marginal_eigenbasis(ctx.rhoA)});
    CorrelationResult packaged = package(ObjectiveKind::GeneralizedDeficit, std::move(result));
    packaged.measure = MeasureKind::Geometric;
    return packaged;
}

CorrelationResult generalized_discord(const DensityMatrix& state, MeasureKind measure,
                                      const OptimizerConfig& config) {
    if (measure == MeasureKind::ClosedForm) {
        // Partial entanglement equals the discord objective basis by
        // basis, so the minimizations coincide.
        CorrelationResult result = quantum_discord(state, config);
        result.kind = ObjectiveKind::GeneralizedDiscord;
        result.measure = MeasureKind::ClosedForm;
        return result;
    }

    const SplitContext ctx = SplitContext::make(state);
    const DensityMatrix rho_a = DensityMatrix::trusted(ctx.rhoA, {ctx.dA});
    GeometricConfig geo;
    geo.outer = config;
    auto result = minimize_over_bases(
        [&](const ProjectiveBasis& basis) {
            const double joint = 1.0 - best_cq_fidelity(state, basis, geo).fidelity;
            const double marginal = 1.0 - best_cq_fidelity(rho_a, basis, geo).fidelity;
            // The true per-basis partial entanglement is nonnegative
            // (tracing out B is local); the clamp removes subtraction
            // noise between the two inner solves.
            return std::max(joint - marginal, 0.0);
        },
        ctx.dA, config, {marginal_eigenbasis(ctx.rhoA)});
    CorrelationResult packaged = package(ObjectiveKind::GeneralizedDiscord, std::move(result));
    packaged.measure = MeasureKind::Geometric;
    return packaged;
}

CorrelationResult povm_discord(const DensityMatrix& state, int extended_dim,
                               const OptimizerConfig& config) {
    const int dA = state.dims()[0];
    if (extended_dim < dA)
        throw InvalidDimension("extended dim below the measured factor dim");
    if (extended_dim == dA) {
        // Identity embedding: the extended definition degenerates to the
        // projective discord.
        CorrelationResult result = quantum_discord(state, config);
        result.kind = ObjectiveKind::PovmDiscord;
        return result;
    }

    const SplitContext original = SplitContext::make(state);
    const DensityMatrix embedded = naimark_embed(state, extended_dim);
    const SplitContext ext = SplitContext::make(embedded);

    // Seed the search with the projective argmin lifted to the extended
    // space; the extended feasible set then cannot report a larger
    // minimum.
    const CorrelationResult projective = quantum_discord(state, config);
    Matrix lifted = Matrix::Identity(extended_dim, extended_dim);
    lifted.topLeftCorner(dA, dA) = projective.argmin.front().columns();

    auto result = minimize_over_bases(
        [&](const ProjectiveBasis& basis) {
            return original.entropy_A - original.entropy_AB +
                   ext.conditional_entropy_term(basis);
        },
        extended_dim, config,
        {ProjectiveBasis(std::move(lifted)), marginal_eigenbasis(ext.rhoA)});
    return package(ObjectiveKind::PovmDiscord, std::move(result));
}

CorrelationResult multipartite_deficit(const DensityMatrix& state,
                                       const std::vector<int>& partition,
                                       const OptimizerConfig& config) {
    check_partition(state, partition);
    const SplitContext ctx = SplitContext::make(state);
    auto result = minimize_over_product_bases(
        [&](const std::vector<ProjectiveBasis>& bases) {
            return ctx.deficit(product_basis(bases));
        },
        partition, config, part_eigenbasis_seed(state, partition));
    return package(ObjectiveKind::MultipartiteDeficit, std::move(result));
}

CorrelationResult multipartite_discord(const DensityMatrix& state,
                                       const std::vector<int>& partition,
                                       const OptimizerConfig& config) {
    check_partition(state, partition);
    const SplitContext ctx = SplitContext::make(state);
    auto result = minimize_over_product_bases(
        [&](const std::vector<ProjectiveBasis>& bases) {
            const ProjectiveBasis joint = product_basis(bases);
            return ctx.dephased_joint_entropy(joint) - ctx.dephased_marginal_entropy(joint) -
                   ctx.entropy_AB + ctx.entropy_A;
        },
        partition, config, part_eigenbasis_seed(state, partition));
    return package(ObjectiveKind::MultipartiteDiscord, std::move(result));
}

std::optional<double> attach_oracle_gap(CorrelationResult& result, const DensityMatrix& state) {
    if (state.dims()[0] != 2) return std::nullopt;
    if (result.measure && *result.measure != MeasureKind::ClosedForm) return std::nullopt;

    BasisObjective objective;
    switch (result.kind) {
        case ObjectiveKind::Discord:
        case ObjectiveKind::GeneralizedDiscord:
            objective = [&](const ProjectiveBasis& b) { return discord_objective(state, b); };
            break;
        case ObjectiveKind::Deficit:
        case ObjectiveKind::GeneralizedDeficit:
            objective = [&](const ProjectiveBasis& b) { return deficit_objective(state, b); };
            break;
        default:
            return std::nullopt;
    }
    const double gap = std::abs(result.value - grid_oracle_qubit(objective, 2));
    result.oracle_gap = gap;
    result.optimization.oracle_gap = gap;
    return gap;
}

ClassicalityCertificate is_classical_quantum(const DensityMatrix& state, double structural_tol,
                                             double optimizer_tol) {
    const int keep_a[] = {0};
    const DensityMatrix rho_a = partial_trace(state, keep_a);
    const SpectralDecomposition spec = spectral(rho_a);
    const int dA = rho_a.dim();
    const int dB = state.dim() / dA;

    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < dA; ++i)
        min_gap = std::min(min_gap, spec.eigenvalues(i) - spec.eigenvalues(i + 1));

    if (dA == 1 || min_gap > 1e-7) {
        // Nondegenerate rho^A: a CQ decomposition can only use the
        // eigenbasis, so check the off-diagonal blocks there.
        const Matrix lift = kron(spec.eigenvectors, Matrix::Identity(dB, dB));
        const Matrix rotated = lift.adjoint() * state.matrix() * lift;
        double off = 0.0;
        for (int i = 0; i < dA; ++i)
            for (int j = 0; j < dA; ++j) {
                if (i == j) continue;
                off = std::max(off, rotated.block(i * dB, j * dB, dB, dB).cwiseAbs().maxCoeff());
            }
        ClassicalityCertificate cert;
        cert.classical = off <= structural_tol;
        cert.structural = true;
        if (cert.classical) cert.basis = ProjectiveBasis(spec.eigenvectors);
        return cert;
    }

    OptimizerConfig config;
    config.seed = kClassicalitySeed;
    const CorrelationResult deficit = information_deficit(state, config);
    ClassicalityCertificate cert;
    cert.classical = deficit.value < optimizer_tol;
    cert.structural = false;
    if (cert.classical) {
        cert.basis = deficit.argmin.front();
        // Polish the witness: on a CQ state every B-sandwich
        // (1 x <phi|) rho (1 x |phi>) is diagonal in the classical basis,
        // so a generic sandwich pair recovers it exactly where the
        // optimizer only localizes it to its flat-bottom precision.
        GaussianSource gauss(mix_seed(kClassicalitySeed, 77));
        Matrix sandwich = Matrix::Zero(dA, dA);
        for (int draw = 0; draw < 2; ++draw) {
            Vector phi(dB);
            for (int b = 0; b < dB; ++b) phi(b) = gauss.complex_normal();
            phi.normalize();
            const double weight = draw == 0 ? 1.0 : 0.37215;
            for (int a = 0; a < dA; ++a)
                for (int ap = 0; ap < dA; ++ap)
                    sandwich(a, ap) +=
                        weight * (phi.adjoint() *
                                  state.matrix().block(a * dB, ap * dB, dB, dB) * phi)(0, 0);
        }
        sandwich = 0.5 * (sandwich + sandwich.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> sandwich_solver(sandwich);
        const ProjectiveBasis polished(sandwich_solver.eigenvectors());
        const double residual =
            (apply_projective(state, polished, 0).matrix() - state.matrix())
                .cwiseAbs()
                .maxCoeff();
        if (residual <= structural_tol) cert.basis = polished;
    }
    return cert;
}

} // namespace qcorr
