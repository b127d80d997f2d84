#pragma once

#include "qcorr/entanglement.hpp"

#include <optional>
#include <vector>

namespace qcorr {

enum class ObjectiveKind {
    Discord,
    Deficit,
    GeneralizedDeficit,
    GeneralizedDiscord,
    PovmDiscord,
    MultipartiteDeficit,
    MultipartiteDiscord,
};

/// Entanglement measure plugged into the generalized quantities: the
/// certified closed form (distillable/relative-entropy, which coincide on
/// measurement-generated states) or the fidelity-based geometric measure.
enum class MeasureKind { ClosedForm, Geometric };

const char* to_string(ObjectiveKind kind);
const char* to_string(MeasureKind measure);

/// A minimized correlation quantity. Values are certified upper bounds on
/// the true minima (multistart heuristic); diagnostics carry per-restart
/// statistics and, when a harness fills it, the qubit grid-oracle gap.
struct CorrelationResult {
    double value = 0.0;
    /// Argmin: one basis, or one per part for multipartite quantities.
    std::vector<ProjectiveBasis> argmin;
    ObjectiveKind kind = ObjectiveKind::Discord;
    /// Selector used by the generalized quantities.
    std::optional<MeasureKind> measure;
    OptimizationResult optimization;
    std::optional<double> oracle_gap;
};

/// Discord objective at a fixed basis (no minimization), in bits:
/// S(rho^A) - S(rho^AB) + sum_i p_i S(rho_i), null outcomes skipped.
double discord_objective(const DensityMatrix& state, const ProjectiveBasis& basis);

/// Deficit objective at a fixed basis, in bits:
/// S(Lambda(rho^AB)) - S(rho^AB).
double deficit_objective(const DensityMatrix& state, const ProjectiveBasis& basis);

/// Residual of the discord rewriting identity
/// sum_i p_i S(rho_i) = S(Lambda(rho^AB)) - S(Lambda_A(rho^A)),
/// evaluated through independent code paths; contract: <= 1e-9.
double discord_rewriting_residual(const DensityMatrix& state, const ProjectiveBasis& basis);

CorrelationResult quantum_discord(const DensityMatrix& state, const OptimizerConfig& config);

CorrelationResult information_deficit(const DensityMatrix& state, const OptimizerConfig& config);

/// Minimal entanglement of the coupled state over bases, under the chosen
/// measure. The closed-form selector coincides with information_deficit.
CorrelationResult generalized_deficit(const DensityMatrix& state, MeasureKind measure,
                                      const OptimizerConfig& config);

/// Minimal partial entanglement over bases under the chosen measure. The
/// closed-form selector reproduces quantum_discord.
CorrelationResult generalized_discord(const DensityMatrix& state, MeasureKind measure,
                                      const OptimizerConfig& config);

/// Discord with the conditional term minimized over rank-one projective
/// bases of the Naimark-extended space. The marginal entropy terms are
/// taken from the original state (an isometric embedding leaves them
/// unchanged anyway).
CorrelationResult povm_discord(const DensityMatrix& state, int extended_dim,
                               const OptimizerConfig& config);

/// Minimal entropy increase under a sequence of projective measurements,
/// one per part of factor 0; product bases are optimized jointly.
CorrelationResult multipartite_deficit(const DensityMatrix& state,
                                       const std::vector<int>& partition,
                                       const OptimizerConfig& config);

/// min over product bases of S(Lambda(rho^AB)) - S(Lambda(rho^A)) -
/// S(rho^AB) + S(rho^A).
CorrelationResult multipartite_discord(const DensityMatrix& state,
                                       const std::vector<int>& partition,
                                       const OptimizerConfig& config);

/// Grid-oracle gap |result.value - oracle| for qubit-A closed-form
/// results (discord/deficit kinds at d_A = 2); empty when no oracle
/// applies. Also stores the gap into result.oracle_gap.
std::optional<double> attach_oracle_gap(CorrelationResult& result, const DensityMatrix& state);

struct ClassicalityCertificate {
    bool classical = false;
    /// Witnessing basis when classical.
    std::optional<ProjectiveBasis> basis;
    /// True when decided by the spectral block test, false when decided
    /// by deficit minimization (degenerate rho^A).
    bool structural = true;
};

/// Zero-discord test: spectral block criterion when rho^A is
/// nondegenerate (eigenvalue gaps > 1e-7), deficit minimization below
/// `optimizer_tol` otherwise.
ClassicalityCertificate is_classical_quantum(const DensityMatrix& state,
                                             double structural_tol = 1e-7,
                                             double optimizer_tol = 1e-6);

} // namespace qcorr
