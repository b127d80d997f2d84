#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcorr {

namespace {

const int kKeepAB[] = {1, 2};

double fidelity_raw(const Matrix& sqrt_rho, const Matrix& sigma) {
    const Matrix inner = sqrt_rho * sigma * sqrt_rho;
    const double trace_root = hermitian_eigenvalues(inner).cwiseMax(0.0).cwiseSqrt().sum();
    return std::clamp(trace_root * trace_root, 0.0, 1.0);
}

} // namespace

double coherent_info_lower(const ApparatusState& apparatus) {
    const DensityMatrix reduced = partial_trace(apparatus.state(), kKeepAB);
    const double value =
        von_neumann_entropy(reduced) - von_neumann_entropy(apparatus.state());
    return std::max(value, 0.0);
}

DensityMatrix dephased_separable_sigma(const ApparatusState& apparatus) {
    return apply_projective(apparatus.state(),
                            ProjectiveBasis::computational(apparatus.source_dA()), 0);
}

double relative_entropy_upper(const ApparatusState& apparatus) {
    const double value =
        relative_entropy(apparatus.state(), dephased_separable_sigma(apparatus));
    if (std::isinf(value))
        throw SupportViolation("dephased sigma lost support of the coupled state");
    return value;
}

EntanglementCertificate measurement_entanglement(const DensityMatrix& state,
                                                 const ProjectiveBasis& basis) {
    EntanglementCertificate cert;
    cert.certified_value =
        von_neumann_entropy(apply_projective(state, basis, 0)) - von_neumann_entropy(state);

    const ApparatusState apparatus = couple_apparatus(state, basis);
    cert.lower_bound = coherent_info_lower(apparatus);
    cert.upper_bound = relative_entropy_upper(apparatus);
    cert.gap = cert.upper_bound - cert.lower_bound;
    return cert;
}

double partial_entanglement(const DensityMatrix& state, const ProjectiveBasis& basis) {
    const int keep_a[] = {0};
    const DensityMatrix rho_a = partial_trace(state, keep_a);

    const double joint = von_neumann_entropy(apply_projective(state, basis, 0)) -
                         von_neumann_entropy(state);
    const double marginal = von_neumann_entropy(apply_projective(rho_a, basis, 0)) -
                            von_neumann_entropy(rho_a);
    return joint - marginal;
}

CqFit best_cq_fidelity(const DensityMatrix& state, const ProjectiveBasis& basis,
                       const GeometricConfig& config) {
    const int dA = basis.dim();
    const int dB = state.dim() / dA;
    if (dA * dB != state.dim())
        throw DimensionMismatch("basis does not divide the state dimension");

    const Matrix sqrt_rho = hermitian_sqrt(state.matrix());
    const Matrix& rho = state.matrix();

    // Dephased blocks of the input at this basis seed the search.
    std::vector<Matrix> blocks(static_cast<std::size_t>(dA));
    std::vector<double> block_weight(static_cast<std::size_t>(dA));
    for (int i = 0; i < dA; ++i) {
        Matrix block = Matrix::Zero(dB, dB);
        for (int a = 0; a < dA; ++a)
            for (int ap = 0; ap < dA; ++ap) {
                const Complex w =
                    std::conj(basis.columns()(a, i)) * basis.columns()(ap, i);
                block += w * rho.block(a * dB, ap * dB, dB, dB);
            }
        block_weight[static_cast<std::size_t>(i)] = std::max(block.trace().real(), 0.0);
        blocks[static_cast<std::size_t>(i)] = std::move(block);
    }

    const int factor_params = dB > 1 ? 2 * dB * dB : 0;
    const int total_params = dA + dA * factor_params;

    auto conditional_from_params = [&](const Eigen::VectorXd& x, int i) -> Matrix {
        if (dB == 1) return Matrix::Identity(1, 1);
        Matrix l(dB, dB);
        int at = dA + i * factor_params;
        for (int r = 0; r < dB; ++r)
            for (int c = 0; c < dB; ++c) {
                l(r, c) = Complex(x(at), x(at + 1));
                at += 2;
            }
        Matrix product = l * l.adjoint();
        const double trace = product.trace().real();
        if (trace < 1e-300) return Matrix::Identity(dB, dB) / dB;
        return product / trace;
    };

    auto sigma_from_params = [&](const Eigen::VectorXd& x) -> Matrix {
        RealVector logits = x.head(dA);
        const double top = logits.maxCoeff();
        RealVector p = (logits.array() - top).exp();
        p /= p.sum();
        Matrix sigma = Matrix::Zero(state.dim(), state.dim());
        for (int i = 0; i < dA; ++i) {
            const Matrix marker = basis.column(i) * basis.column(i).adjoint();
            sigma += p(i) * kron(marker, conditional_from_params(x, i));
        }
        return sigma;
    };

    Eigen::VectorXd start = Eigen::VectorXd::Zero(total_params);
    for (int i = 0; i < dA; ++i) {
        start(i) = std::log(std::max(block_weight[static_cast<std::size_t>(i)], 1e-12));
        if (dB > 1) {
            const Matrix conditional =
                block_weight[static_cast<std::size_t>(i)] > kNullOutcome
                    ? Matrix(blocks[static_cast<std::size_t>(i)] /
                             block_weight[static_cast<std::size_t>(i)])
                    : Matrix(Matrix::Identity(dB, dB) / dB);
            const Matrix factor = hermitian_sqrt(conditional);
            int at = dA + i * factor_params;
            for (int r = 0; r < dB; ++r)
                for (int c = 0; c < dB; ++c) {
                    start(at) = factor(r, c).real();
                    start(at + 1) = factor(r, c).imag();
                    at += 2;
                }
        }
    }

    NelderMeadOptions nm;
    nm.max_iterations = config.inner_max_iterations;
    nm.tolerance = config.inner_tolerance;
    nm.step = 0.25;
    const NelderMeadResult run = nelder_mead(
        [&](const Eigen::VectorXd& x) { return -fidelity_raw(sqrt_rho, sigma_from_params(x)); },
        start, nm);

    CqFit fit{-run.value, DensityMatrix::trusted(sigma_from_params(run.x), state.dims())};
    return fit;
}

GeometricResult geometric_cq_distance(const DensityMatrix& state, const GeometricConfig& config) {
    const int dA = state.dims()[0];
    const int keep_a[] = {0};
    const DensityMatrix rho_a = partial_trace(state, keep_a);

    std::vector<ProjectiveBasis> seeds{ProjectiveBasis::computational(dA),
                                       ProjectiveBasis(spectral(rho_a).eigenvectors)};

    const OptimizationResult outer = minimize_over_bases(
        [&](const ProjectiveBasis& basis) {
            return 1.0 - best_cq_fidelity(state, basis, config).fidelity;
        },
        dA, config.outer, seeds);

    const ProjectiveBasis& best_basis = outer.bases.front();
    CqFit fit = best_cq_fidelity(state, best_basis, config);

    GeometricResult result{1.0 - fidelity(state, fit.sigma), best_basis, std::move(fit.sigma),
                           outer};
    return result;
}

} // namespace qcorr
