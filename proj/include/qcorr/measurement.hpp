#pragma once

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"

#include <optional>
#include <vector>

namespace qcorr {

/// Probability threshold below which a measurement outcome is null (its
/// conditional state is omitted and it is skipped in entropy averages).
inline constexpr double kNullOutcome = 1e-12;

struct MeasurementOutcome {
    double probability = 0.0;
    /// Joint post-measurement state; absent for null outcomes.
    std::optional<DensityMatrix> state;
};

/// Projective dephasing sum_i (Pi_i x 1) rho (Pi_i x 1) on the addressed
/// factor. Trace preserving and idempotent.
DensityMatrix apply_projective(const DensityMatrix& state, const ProjectiveBasis& basis,
                               int subsystem);

/// Outcome probabilities p_i = Tr[Pi_i rho Pi_i] and conditional states
/// rho_i = Pi_i rho Pi_i / p_i for the rank-one projectors of `basis`.
std::vector<MeasurementOutcome> measurement_outcomes(const DensityMatrix& state,
                                                     const ProjectiveBasis& basis,
                                                     int subsystem);

/// Tripartite M x A x B state produced by unitarily coupling a pointer
/// register M (dim d_A, initial state the first computational vector) to
/// the measured subsystem A. Assembled directly from the source blocks
/// O_ij = <i^A| rho |j^A> in the measurement basis; the coupling unitary
/// is never materialized since any completion off the relevant subspace
/// yields the same state.
class ApparatusState {
public:
    ApparatusState(DensityMatrix tripartite, ProjectiveBasis basis,
                   std::vector<Matrix> blocks, int source_dA, int source_dB);

    /// The coupled state with dims [d_A, d_A, d_B], factor order M, A, B.
    const DensityMatrix& state() const { return state_; }
    const ProjectiveBasis& basis() const { return basis_; }

    /// O_ij = <i^A| rho^AB |j^A>, an operator on B.
    const Matrix& block(int i, int j) const {
        return blocks_[static_cast<std::size_t>(i) * source_dA_ + j];
    }

    int source_dA() const { return source_dA_; }
    int source_dB() const { return source_dB_; }

private:
    DensityMatrix state_;
    ProjectiveBasis basis_;
    std::vector<Matrix> blocks_;
    int source_dA_;
    int source_dB_;
};

/// Couples the apparatus to factor 0 of `state` (remaining factors are
/// treated as B, which may be trivial).
ApparatusState couple_apparatus(const DensityMatrix& state, const ProjectiveBasis& basis);

/// Isometric embedding of factor 0 into an extended_dim-dimensional space
/// as the leading block. Marginals on the remaining factors are unchanged.
/// Throws InvalidDimension when extended_dim < d_A.
DensityMatrix naimark_embed(const DensityMatrix& state, int extended_dim);

/// Sequence of projective dephasings on the parts of factor 0 split as
/// `partition` (one basis per part). Equals dephasing in the product basis
/// and is independent of the part order.
/// Throws PartitionMismatch.
DensityMatrix sequential_measure(const DensityMatrix& state, const std::vector<int>& partition,
                                 const std::vector<ProjectiveBasis>& bases);

/// Kronecker product basis of the per-part bases.
ProjectiveBasis product_basis(const std::vector<ProjectiveBasis>& bases);

} // namespace qcorr
