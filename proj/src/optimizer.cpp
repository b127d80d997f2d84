#include "qcorr/optimizer.hpp"

#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qcorr {

namespace {

void check_config(const OptimizerConfig& config) {
    if (config.restarts < 1 || config.max_iterations < 1 ||
        config.objective_tolerance <= 0.0 || config.step_scale <= 0.0)
        throw OutOfRange("optimizer config fields must be positive");
}

ProjectiveBasis decode_qubit(double theta, double phi) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const Complex phase = std::polar(1.0, phi);
    Matrix columns(2, 2);
    columns(0, 0) = c;
    columns(1, 0) = phase * s;
    columns(0, 1) = -s;
    columns(1, 1) = phase * c;
    return ProjectiveBasis(std::move(columns));
}

/// Fills the Hermitian generator from d^2 reals: the diagonal first, then
/// (re, im) pairs for the upper triangle in row-major order.
Matrix generator_from_params(std::span<const double> params, int d) {
    Matrix h = Matrix::Zero(d, d);
    int at = 0;
    for (int k = 0; k < d; ++k) h(k, k) = params[at++];
    for (int r = 0; r < d; ++r)
        for (int c = r + 1; c < d; ++c) {
            const double re = params[at++];
            const double im = params[at++];
            h(r, c) = Complex(re, im);
            h(c, r) = Complex(re, -im);
        }
    return h;
}

std::vector<double> params_from_generator(const Matrix& h) {
    const int d = static_cast<int>(h.rows());
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(d) * d);
    for (int k = 0; k < d; ++k) params.push_back(h(k, k).real());
    for (int r = 0; r < d; ++r)
        for (int c = r + 1; c < d; ++c) {
            params.push_back(h(r, c).real());
            params.push_back(h(r, c).imag());
        }
    return params;
}

} // namespace

int basis_parameter_count(int d) {
    if (d < 1) throw InvalidDimension("basis dimension must be positive");
    if (d == 1) return 0;
    if (d == 2) return 2;
    return d * d;
}

ProjectiveBasis decode_basis(std::span<const double> params, int d) {
    if (static_cast<int>(params.size()) != basis_parameter_count(d))
        throw ParameterCountMismatch("expected " + std::to_string(basis_parameter_count(d)) +
                                     " parameters for d = " + std::to_string(d) + ", got " +
                                     std::to_string(params.size()));
    if (d == 1) return ProjectiveBasis::computational(1);
    if (d == 2) return decode_qubit(params[0], params[1]);

    const Matrix h = generator_from_params(params, d);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Vector phases(d);
    for (int k = 0; k < d; ++k) phases(k) = std::polar(1.0, solver.eigenvalues()(k));
    Matrix u = solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
    return ProjectiveBasis(std::move(u));
}

std::vector<double> encode_unitary(const Matrix& unitary) {
    const int d = static_cast<int>(unitary.rows());
    if (d == 1) return {};
    if (d == 2) {
        const Complex a = unitary(0, 0);
        const Complex b = unitary(1, 0);
        const double theta = 2.0 * std::atan2(std::abs(b), std::abs(a));
        const double phi = (std::abs(b) < 1e-14 || std::abs(a) < 1e-14)
                               ? 0.0
                               : std::arg(b * std::conj(a));
        return {theta, phi};
    }
    // U is normal, so its Schur form is diagonal and the Schur vectors are
    // an orthonormal eigenbasis.
    Eigen::ComplexSchur<Matrix> schur(unitary);
    Matrix h = Matrix::Zero(d, d);
    RealVector angles(d);
    for (int k = 0; k < d; ++k) angles(k) = std::arg(schur.matrixT()(k, k));
    h = schur.matrixU() * angles.cast<Complex>().asDiagonal() * schur.matrixU().adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    return params_from_generator(h);
}

Matrix haar_random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw InvalidDimension("unitary dimension must be positive");
    GaussianSource gauss(seed);
    Matrix g(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = gauss.complex_normal();

    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const Complex diag = r(k, k);
        const Complex phase = std::abs(diag) < 1e-300 ? Complex(1.0) : diag / std::abs(diag);
        q.col(k) *= phase;
    }
    return q;
}

OptimizationResult minimize_over_product_bases(
    const ProductBasisObjective& objective, const std::vector<int>& dims,
    const OptimizerConfig& config,
    const std::vector<std::vector<ProjectiveBasis>>& candidate_starts) {
    check_config(config);
    if (dims.empty()) throw InvalidDimension("need at least one measured part");

    std::vector<int> offsets{0};
    for (int d : dims) offsets.push_back(offsets.back() + basis_parameter_count(d));
    const int total_params = offsets.back();

    auto decode_all = [&](const Eigen::VectorXd& x) {
        std::vector<ProjectiveBasis> bases;
        bases.reserve(dims.size());
        for (std::size_t k = 0; k < dims.size(); ++k)
            bases.push_back(decode_basis(
                std::span<const double>(x.data() + offsets[k],
                                        static_cast<std::size_t>(offsets[k + 1] - offsets[k])),
                dims[k]));
        return bases;
    };
    auto wrapped = [&](const Eigen::VectorXd& x) { return objective(decode_all(x)); };

    // Start points: computational bases, caller-provided candidates, then
    // Haar-random draws up to the configured restart count.
    std::vector<Eigen::VectorXd> starts;
    starts.emplace_back(Eigen::VectorXd::Zero(total_params));
    for (const auto& candidate : candidate_starts) {
        if (candidate.size() != dims.size())
            throw ParameterCountMismatch("candidate start must provide one basis per part");
        Eigen::VectorXd x(total_params);
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const auto params = encode_unitary(candidate[k].columns());
            for (std::size_t j = 0; j < params.size(); ++j) x(offsets[k] + static_cast<int>(j)) = params[j];
        }
        starts.push_back(std::move(x));
    }
    const int total_restarts = std::max<int>(config.restarts, static_cast<int>(starts.size()));
    for (int restart = static_cast<int>(starts.size()); restart < total_restarts; ++restart) {
        Eigen::VectorXd x(total_params);
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const Matrix u = haar_random_unitary(
                dims[k], mix_seed(config.seed, static_cast<std::uint64_t>(restart) * 97 + k));
            const auto params = encode_unitary(u);
            for (std::size_t j = 0; j < params.size(); ++j) x(offsets[k] + static_cast<int>(j)) = params[j];
        }
        starts.push_back(std::move(x));
    }

    NelderMeadOptions nm;
    nm.max_iterations = config.max_iterations;
    nm.tolerance = config.objective_tolerance;
    nm.step = config.step_scale;

    OptimizationResult result;
    result.value = std::numeric_limits<double>::infinity();
    std::vector<std::vector<ProjectiveBasis>> restart_bases;
    restart_bases.reserve(starts.size());

    for (std::size_t r = 0; r < starts.size(); ++r) {
        const NelderMeadResult run = nelder_mead(wrapped, starts[r], nm);
        RestartDiagnostic diag;
        diag.restart = static_cast<int>(r);
        diag.value = run.value;
        diag.converged = run.converged;
        diag.iterations = run.iterations;
        diag.evaluations = run.evaluations;
        result.restarts.push_back(diag);
        restart_bases.push_back(decode_all(run.x));
        if (run.converged) result.converged = true;
        if (run.value < result.value) {
            result.value = run.value;
            result.bases = restart_bases.back();
        }
    }

    // Flat-landscape detection: near-best restarts that disagree on the
    // argmin projectors.
    const double flat_window = 10.0 * config.objective_tolerance;
    for (std::size_t r = 0; r < restart_bases.size(); ++r) {
        if (result.restarts[r].value > result.value + flat_window) continue;
        for (std::size_t k = 0; k < dims.size(); ++k)
            if (projector_distance(restart_bases[r][k], result.bases[k]) > 1e-3)
                result.flat_landscape = true;
    }
    return result;
}

OptimizationResult minimize_over_bases(const BasisObjective& objective, int d,
                                       const OptimizerConfig& config,
                                       const std::vector<ProjectiveBasis>& candidate_starts) {
    std::vector<std::vector<ProjectiveBasis>> candidates;
    candidates.reserve(candidate_starts.size());
    for (const auto& b : candidate_starts) candidates.push_back({b});
    return minimize_over_product_bases(
        [&](const std::vector<ProjectiveBasis>& bases) { return objective(bases.front()); },
        {d}, config, candidates);
}

double grid_oracle_qubit(const BasisObjective& objective, int d,
                         const GridResolution& resolution) {
    if (d != 2) throw UnsupportedDimension("grid oracle supports d = 2 only");
    if (resolution.theta < 30 || resolution.phi < 30)
        throw OutOfRange("grid oracle needs at least 30 points per angle");

    double best = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    const double dtheta = std::numbers::pi / (resolution.theta - 1);
    const double dphi = 2.0 * std::numbers::pi / (resolution.phi - 1);
    for (int i = 0; i < resolution.theta; ++i) {
        const double theta = i * dtheta;
        for (int j = 0; j < resolution.phi; ++j) {
            const double phi = j * dphi;
            const double value = objective(decode_qubit(theta, phi));
            if (value < best) {
                best = value;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }

    NelderMeadOptions nm;
    nm.max_iterations = 200;
    nm.tolerance = 1e-12;
    nm.step = 0.5 * std::max(dtheta, dphi);
    Eigen::VectorXd start(2);
    start << best_theta, best_phi;
    const NelderMeadResult refined = nelder_mead(
        [&](const Eigen::VectorXd& x) { return objective(decode_qubit(x(0), x(1))); }, start, nm);
    return std::min(best, refined.value);
}

} // namespace qcorr
