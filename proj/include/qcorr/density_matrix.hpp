#pragma once

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"

#include <span>
#include <vector>

namespace qcorr {

/// Validation tolerance for Hermiticity, trace and eigenvalue positivity.
inline constexpr double kStateTol = 1e-9;

/// Eigenvalues below this are treated as exact zeros inside entropy and
/// logarithm evaluations (separates numerical noise from rank deficiency).
inline constexpr double kSpectrumFloor = 1e-12;

/// Hermitian, PSD, unit-trace complex matrix over an explicit tensor
/// factorization. The composite index convention is row-major with the
/// left factor slowest: index = sum_k idx_k * prod_{l>k} dims[l].
class DensityMatrix {
public:
    /// Validating constructor; see validate_density for the contract.
    DensityMatrix(Matrix entries, std::vector<int> dims, double tol = kStateTol);

    /// Wraps entries known to satisfy the invariants (outputs of
    /// trace-preserving maps applied to already-valid states).
    static DensityMatrix trusted(Matrix entries, std::vector<int> dims);

    const Matrix& matrix() const { return entries_; }
    const std::vector<int>& dims() const { return dims_; }

    /// Total dimension (product of the factor dimensions).
    int dim() const { return static_cast<int>(entries_.rows()); }

    /// Same entries under a different factorization of the same total
    /// dimension. Valid because all factorizations share one index
    /// convention.
    DensityMatrix reshaped(std::vector<int> dims) const;

private:
    struct TrustedTag {};
    DensityMatrix(TrustedTag, Matrix entries, std::vector<int> dims);

    Matrix entries_;
    std::vector<int> dims_;
};

/// Eigensystem of a state, eigenvalues descending, eigenvectors as
/// matching unitary columns.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;
};

SpectralDecomposition spectral(const DensityMatrix& state);

/// Checks Hermiticity, unit trace and positivity of `raw` at tolerance
/// `tol`. Eigenvalues in [-tol, 0) are clamped to zero and the state is
/// renormalized; eigenvalues below -tol are rejected.
///
/// Throws DimensionMismatch, NonHermitian, NonUnitTrace,
/// NegativeEigenvalue.
DensityMatrix validate_density(const Matrix& raw, std::vector<int> dims,
                               double tol = kStateTol);

/// Kronecker product state; dims are concatenated.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the kept factors, factor order preserved.
/// Throws EmptyKeepSet, IndexOutOfRange.
DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep);

/// -sum lambda log2 lambda over the spectrum, in bits; entries below
/// kSpectrumFloor contribute zero.
double entropy_of_spectrum(const RealVector& eigenvalues);

/// Von Neumann entropy S(rho) = -Tr[rho log2 rho], in bits.
double von_neumann_entropy(const DensityMatrix& state);

/// Quantum relative entropy S(rho||sigma) in bits. Returns +infinity when
/// sigma has an eigenvalue below kSpectrumFloor whose eigenspace carries
/// rho-weight above 1e-9 (the support-violation signal).
/// Throws DimensionMismatch.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1].
/// Throws DimensionMismatch.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

} // namespace qcorr
