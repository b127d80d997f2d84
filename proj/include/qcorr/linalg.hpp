#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>

namespace qcorr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Kronecker product in the left-factor-slowest index convention.
Matrix kron(const Matrix& a, const Matrix& b);

/// Eigenvalues of a Hermitian matrix, ascending. Closed form for 1x1 and
/// 2x2, SelfAdjointEigenSolver otherwise.
RealVector hermitian_eigenvalues(const Matrix& m);

/// Square root of a PSD Hermitian matrix via its spectral decomposition.
/// Small negative eigenvalue noise is clamped to zero.
Matrix hermitian_sqrt(const Matrix& m);

/// Derives an independent seed for stream `stream` of a base seed
/// (splitmix64 finalizer over the combined words).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Deterministic standard normal samples (Marsaglia polar method over
/// mt19937_64). The exact sequence is fixed by this implementation, not by
/// the standard library's distribution internals.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed) : rng_(seed) {}

    double operator()();

    /// z with independent N(0,1) real and imaginary parts.
    Complex complex_normal();

private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qcorr
