#pragma once

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"

#include <cstdint>
#include <vector>

namespace qcorr {

/// Ginibre-induced mixed state G G^dagger / Tr with G a (prod dims) x rank
/// complex Gaussian matrix; rank 1 gives a Haar-random pure state.
/// Each generator draws from its own stream keyed by (seed, generator
/// label), so ensembles reproduce independently of evaluation order.
/// Throws InvalidRank.
DensityMatrix ginibre_mixed(const std::vector<int>& dims, int rank, std::uint64_t seed);

/// Haar-random pure state (rank-one Ginibre).
DensityMatrix haar_pure(const std::vector<int>& dims, std::uint64_t seed);

/// Exactly classical-quantum state sum_i p_i |i><i| x rho_i^B.
/// Throws InvalidProbabilities, DimensionMismatch.
DensityMatrix cq_state(const std::vector<double>& probabilities, const ProjectiveBasis& basis,
                       const std::vector<DensityMatrix>& conditionals);

/// Werner family p |Psi^-><Psi^-| + (1-p) I/4.
/// Throws OutOfRange for p outside [0, 1].
DensityMatrix werner(double p);

/// Random classical-quantum state: a Haar-random basis, flat-simplex
/// probabilities and independent full-rank Ginibre conditionals through
/// cq_state.
DensityMatrix random_cq(int dA, int dB, std::uint64_t seed);

/// Classically correlated two-qubit fixture
/// (|00><00| + |11><11|) / 2.
DensityMatrix rho_cc();

/// Maximally entangled fixture |Phi^+><Phi^+|,
/// |Phi^+> = (|00> + |11>)/sqrt(2).
DensityMatrix bell_phi_plus();

} // namespace qcorr
