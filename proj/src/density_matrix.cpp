#include "qcorr/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qcorr {

namespace {

long dims_product(const std::vector<int>& dims) {
    long p = 1;
    for (int d : dims) p *= d;
    return p;
}

void check_dims(const Matrix& entries, const std::vector<int>& dims) {
    if (dims.empty())
        throw DimensionMismatch("dims list must be nonempty");
    for (int d : dims)
        if (d < 1) throw DimensionMismatch("subsystem dimensions must be positive");
    if (entries.rows() != entries.cols())
        throw DimensionMismatch("density matrix must be square");
    if (entries.rows() != dims_product(dims))
        throw DimensionMismatch("matrix side " + std::to_string(entries.rows()) +
                                " does not match dims product " +
                                std::to_string(dims_product(dims)));
}

/// Composite-index offsets spanned by the `subset` factors (all other
/// factor indices held at zero), in lexicographic order of the subset
/// multi-index.
std::vector<long> subspace_offsets(const std::vector<int>& dims,
                                   const std::vector<int>& subset) {
    std::vector<long> strides(dims.size(), 1);
    for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
        strides[k] = strides[k + 1] * dims[k + 1];

    std::vector<long> offsets{0};
    for (int factor : subset) {
        std::vector<long> next;
        next.reserve(offsets.size() * dims[factor]);
        for (long base : offsets)
            for (int i = 0; i < dims[factor]; ++i)
                next.push_back(base + i * strides[factor]);
        offsets = std::move(next);
    }
    return offsets;
}

} // namespace

DensityMatrix::DensityMatrix(Matrix entries, std::vector<int> dims, double tol)
    : DensityMatrix(validate_density(entries, std::move(dims), tol)) {}

DensityMatrix::DensityMatrix(TrustedTag, Matrix entries, std::vector<int> dims)
    : entries_(std::move(entries)), dims_(std::move(dims)) {}

DensityMatrix DensityMatrix::trusted(Matrix entries, std::vector<int> dims) {
    check_dims(entries, dims);
    return DensityMatrix(TrustedTag{}, std::move(entries), std::move(dims));
}

DensityMatrix DensityMatrix::reshaped(std::vector<int> dims) const {
    if (dims_product(dims) != dim())
        throw DimensionMismatch("reshape must preserve the total dimension");
    return DensityMatrix(TrustedTag{}, entries_, std::move(dims));
}

SpectralDecomposition spectral(const DensityMatrix& state) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(state.matrix());
    const Eigen::Index n = state.matrix().rows();
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = Matrix(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        out.eigenvectors.col(j) = solver.eigenvectors().col(n - 1 - j);
    return out;
}

DensityMatrix validate_density(const Matrix& raw, std::vector<int> dims, double tol) {
    check_dims(raw, dims);

    const double herm_residual = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
    if (herm_residual > tol)
        throw NonHermitian("max |rho - rho^dagger| = " + std::to_string(herm_residual));

    const double trace = raw.trace().real();
    if (std::abs(trace - 1.0) > tol)
        throw NonUnitTrace("trace = " + std::to_string(trace));

    Eigen::SelfAdjointEigenSolver<Matrix> solver(raw);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol)
        throw NegativeEigenvalue("minimum eigenvalue = " + std::to_string(min_eig));

    if (min_eig < 0.0) {
        // Clamp the negative tail and renormalize.
        RealVector clamped = solver.eigenvalues().cwiseMax(0.0);
        clamped /= clamped.sum();
        Matrix rebuilt = solver.eigenvectors() * clamped.asDiagonal() *
                         solver.eigenvectors().adjoint();
        return DensityMatrix::trusted(std::move(rebuilt), std::move(dims));
    }
    return DensityMatrix::trusted(raw, std::move(dims));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix::trusted(kron(a.matrix(), b.matrix()), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& state, std::span<const int> keep) {
    const auto& dims = state.dims();
    if (keep.empty()) throw EmptyKeepSet("keep set must be nonempty");

    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.front() < 0 || kept.back() >= static_cast<int>(dims.size()))
        throw IndexOutOfRange("keep index outside the factor list");

    std::vector<int> traced;
    for (int k = 0; k < static_cast<int>(dims.size()); ++k)
        if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

    const std::vector<long> kept_off = subspace_offsets(dims, kept);
    const std::vector<long> traced_off = subspace_offsets(dims, traced);

    std::vector<int> out_dims;
    out_dims.reserve(kept.size());
    for (int k : kept) out_dims.push_back(dims[k]);

    const long n = static_cast<long>(kept_off.size());
    Matrix out = Matrix::Zero(n, n);
    const Matrix& m = state.matrix();
    for (long r = 0; r < n; ++r)
        for (long c = 0; c < n; ++c) {
            Complex sum = 0.0;
            for (long t : traced_off) sum += m(kept_off[r] + t, kept_off[c] + t);
            out(r, c) = sum;
        }
    return DensityMatrix::trusted(std::move(out), std::move(out_dims));
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        const double lambda = eigenvalues(i);
        if (lambda >= kSpectrumFloor) s -= lambda * std::log2(lambda);
    }
    return s;
}

double von_neumann_entropy(const DensityMatrix& state) {
    return entropy_of_spectrum(hermitian_eigenvalues(state.matrix()));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("relative entropy needs equal total dimension");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(sigma.matrix());
    const RealVector& s = solver.eigenvalues();
    const Matrix& v = solver.eigenvectors();

    double cross = 0.0; // Tr[rho log2 sigma]
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        const double weight =
            std::max(0.0, (v.col(j).adjoint() * rho.matrix() * v.col(j))(0, 0).real());
        if (s(j) < kSpectrumFloor) {
            if (weight > 1e-9)
                return std::numeric_limits<double>::infinity();
            continue;
        }
        cross += weight * std::log2(s(j));
    }
    return -von_neumann_entropy(rho) - cross;
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim())
        throw DimensionMismatch("fidelity needs equal total dimension");

    const Matrix root = hermitian_sqrt(rho.matrix());
    const Matrix inner = root * sigma.matrix() * root;
    const RealVector eig = hermitian_eigenvalues(inner).cwiseMax(0.0);
    const double trace_root = eig.cwiseSqrt().sum();
    return std::clamp(trace_root * trace_root, 0.0, 1.0);
}

} // namespace qcorr
