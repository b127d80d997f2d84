#include "qcorr/random_states.hpp"

#include "qcorr/linalg.hpp"
#include "qcorr/optimizer.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qcorr {

namespace {

// Stream labels keying the per-generator substreams of a seed.
constexpr std::uint64_t kGinibreStream = 0x67696e69;

} // namespace

DensityMatrix ginibre_mixed(const std::vector<int>& dims, int rank, std::uint64_t seed) {
    long total = 1;
    for (int d : dims) total *= d;
    if (rank < 1 || rank > total)
        throw InvalidRank("rank " + std::to_string(rank) + " outside [1, " +
                          std::to_string(total) + "]");

    GaussianSource gauss(mix_seed(seed, kGinibreStream));
    Matrix g(total, rank);
    for (long r = 0; r < total; ++r)
        for (int c = 0; c < rank; ++c) g(r, c) = gauss.complex_normal();

    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return validate_density(rho, dims);
}

DensityMatrix haar_pure(const std::vector<int>& dims, std::uint64_t seed) {
    return ginibre_mixed(dims, 1, seed);
}

DensityMatrix cq_state(const std::vector<double>& probabilities, const ProjectiveBasis& basis,
                       const std::vector<DensityMatrix>& conditionals) {
    if (static_cast<int>(probabilities.size()) != basis.dim())
        throw DimensionMismatch("need one probability per basis vector");
    if (conditionals.size() != probabilities.size())
        throw DimensionMismatch("need one conditional state per basis vector");

    double sum = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) throw InvalidProbabilities("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InvalidProbabilities("probabilities sum to " + std::to_string(sum));

    const int dB = conditionals.front().dim();
    for (const auto& c : conditionals)
        if (c.dim() != dB) throw DimensionMismatch("conditional states must share one dimension");

    Matrix out = Matrix::Zero(static_cast<long>(basis.dim()) * dB,
                              static_cast<long>(basis.dim()) * dB);
    for (int i = 0; i < basis.dim(); ++i)
        out += probabilities[static_cast<std::size_t>(i)] *
               kron(basis.projector(i), conditionals[static_cast<std::size_t>(i)].matrix());

    std::vector<int> dims{basis.dim()};
    const auto& cond_dims = conditionals.front().dims();
    dims.insert(dims.end(), cond_dims.begin(), cond_dims.end());
    return DensityMatrix::trusted(std::move(out), std::move(dims));
}

DensityMatrix werner(double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRange("werner parameter outside [0, 1]");
    Vector singlet = Vector::Zero(4);
    singlet(1) = 1.0 / std::sqrt(2.0);
    singlet(2) = -1.0 / std::sqrt(2.0);
    Matrix rho = p * (singlet * singlet.adjoint()).eval() +
                 (1.0 - p) * 0.25 * Matrix::Identity(4, 4);
    return DensityMatrix::trusted(std::move(rho), {2, 2});
}

DensityMatrix random_cq(int dA, int dB, std::uint64_t seed) {
    if (dA < 1 || dB < 1) throw InvalidDimension("subsystem dims must be positive");
    ProjectiveBasis basis(haar_random_unitary(dA, mix_seed(seed, 0xba515)));

    // Flat Dirichlet weights from chi-squared(2) draws.
    GaussianSource gauss(mix_seed(seed, 0xd112c));
    std::vector<double> probabilities(static_cast<std::size_t>(dA));
    double sum = 0.0;
    for (auto& p : probabilities) {
        const double a = gauss();
        const double b = gauss();
        p = a * a + b * b;
        sum += p;
    }
    for (auto& p : probabilities) p /= sum;

    std::vector<DensityMatrix> conditionals;
    conditionals.reserve(static_cast<std::size_t>(dA));
    for (int i = 0; i < dA; ++i)
        conditionals.push_back(
            ginibre_mixed({dB}, dB, mix_seed(seed, 0xc011d + static_cast<std::uint64_t>(i))));
    return cq_state(probabilities, basis, conditionals);
}

DensityMatrix rho_cc() {
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 0.5;
    rho(3, 3) = 0.5;
    return DensityMatrix::trusted(std::move(rho), {2, 2});
}

DensityMatrix bell_phi_plus() {
    Vector phi = Vector::Zero(4);
    phi(0) = 1.0 / std::sqrt(2.0);
    phi(3) = 1.0 / std::sqrt(2.0);
    return DensityMatrix::trusted(phi * phi.adjoint(), {2, 2});
}

} // namespace qcorr
