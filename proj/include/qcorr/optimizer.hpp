#pragma once

#include "qcorr/basis.hpp"
#include "qcorr/nelder_mead.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qcorr {

/// Multistart search configuration. The seed is mandatory: all restart
/// initial points derive from it deterministically.
struct OptimizerConfig {
    int restarts = 20;
    int max_iterations = 2000;
    double objective_tolerance = 1e-8;
    double step_scale = 0.35;
    std::uint64_t seed = 0;
};

struct RestartDiagnostic {
    int restart = 0;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    long evaluations = 0;
};

struct OptimizationResult {
    double value = 0.0;
    /// Argmin basis per measured part (a single entry unless optimizing
    /// product bases).
    std::vector<ProjectiveBasis> bases;
    std::vector<RestartDiagnostic> restarts;
    /// At least one restart met the objective tolerance.
    bool converged = false;
    /// Restart values agree within tolerance while the argmin bases
    /// differ; the landscape has flat directions (degenerate spectra).
    bool flat_landscape = false;
    std::optional<double> oracle_gap;
};

/// Parameter count of the basis map for local dimension d: two Bloch
/// angles for d = 2, d^2 reals (a Hermitian generator) otherwise.
int basis_parameter_count(int d);

/// Decodes parameters into an orthonormal basis. For d = 2 the map is
/// (theta, phi) -> {cos(t/2)|0> + e^{i phi} sin(t/2)|1>, ...} and covers
/// every projector pair; for d > 2 the parameters fill a Hermitian
/// generator H and the basis is the column set of exp(iH).
/// Throws ParameterCountMismatch.
ProjectiveBasis decode_basis(std::span<const double> params, int d);

/// Approximate inverse of decode_basis for restart initialization; exact
/// on the projector level for d = 2.
std::vector<double> encode_unitary(const Matrix& unitary);

/// Haar-distributed random unitary (Ginibre QR with phase fixing),
/// deterministic per seed.
Matrix haar_random_unitary(int d, std::uint64_t seed);

using BasisObjective = std::function<double(const ProjectiveBasis&)>;
using ProductBasisObjective = std::function<double(const std::vector<ProjectiveBasis>&)>;

/// Multistart simplex minimization of `objective` over product bases on
/// the listed local dimensions. Restart 0 starts from the computational
/// bases, then any caller-provided candidate starts, then Haar-random
/// initial points; the reported minimum is the first-seen best in that
/// deterministic order.
OptimizationResult minimize_over_product_bases(
    const ProductBasisObjective& objective, const std::vector<int>& dims,
    const OptimizerConfig& config,
    const std::vector<std::vector<ProjectiveBasis>>& candidate_starts = {});

/// Single-subsystem convenience wrapper.
OptimizationResult minimize_over_bases(const BasisObjective& objective, int d,
                                       const OptimizerConfig& config,
                                       const std::vector<ProjectiveBasis>& candidate_starts = {});

struct GridResolution {
    int theta = 181;
    int phi = 361;
};

/// Brute-force minimum of a qubit-basis objective over the (theta, phi)
/// grid, followed by one simplex refinement (at most 200 iterations) from
/// the best grid point. The independent ground truth at d = 2.
/// Throws UnsupportedDimension (d != 2), OutOfRange (resolution < 30).
double grid_oracle_qubit(const BasisObjective& objective, int d,
                         const GridResolution& resolution = {});

} // namespace qcorr
