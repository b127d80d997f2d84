#pragma once

#include <Eigen/Dense>

#include <functional>

namespace qcorr {

struct NelderMeadOptions {
    int max_iterations = 2000;
    /// Convergence threshold on the simplex value spread.
    double tolerance = 1e-8;
    /// Initial simplex edge length.
    double step = 0.35;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    long evaluations = 0;
};

/// Derivative-free downhill simplex minimization. Chosen over
/// gradient-based search because the objectives here pass through
/// eigendecompositions with kinks at spectral degeneracies.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options);

} // namespace qcorr
