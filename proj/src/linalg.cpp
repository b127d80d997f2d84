#include "qcorr/linalg.hpp"

#include <cmath>

namespace qcorr {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    const Eigen::Index n = m.rows();
    if (n == 1) {
        RealVector v(1);
        v(0) = m(0, 0).real();
        return v;
    }
    if (n == 2) {
        const double a = m(0, 0).real();
        const double d = m(1, 1).real();
        const double mean = 0.5 * (a + d);
        const double half = 0.5 * (a - d);
        const double r = std::sqrt(half * half + std::norm(m(0, 1)));
        RealVector v(2);
        v(0) = mean - r;
        v(1) = mean + r;
        return v;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

Matrix hermitian_sqrt(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    RealVector roots = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() *
           solver.eigenvectors().adjoint();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double GaussianSource::operator()() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Marsaglia polar method; uniform doubles from explicit 53-bit draws.
    auto uniform = [this]() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    };
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    have_spare_ = true;
    return u * scale;
}

Complex GaussianSource::complex_normal() {
    const double re = (*this)();
    const double im = (*this)();
    return {re, im};
}

} // namespace qcorr
