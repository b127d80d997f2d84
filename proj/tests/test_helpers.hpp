#pragma once

#include "qcorr/density_matrix.hpp"
#include "qcorr/random_states.hpp"

#include <doctest.h>

namespace qcorr::test {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

inline DensityMatrix pure_state(const Vector& amplitudes, std::vector<int> dims) {
    const Vector normalized = amplitudes / amplitudes.norm();
    return DensityMatrix::trusted(normalized * normalized.adjoint(), std::move(dims));
}

inline DensityMatrix qubit_zero() {
    Vector v(2);
    v << 1.0, 0.0;
    return pure_state(v, {2});
}

inline DensityMatrix qubit_plus() {
    Vector v(2);
    v << 1.0, 1.0;
    return pure_state(v, {2});
}

inline DensityMatrix maximally_mixed(int d) {
    return DensityMatrix::trusted(Matrix::Identity(d, d) / d, {d});
}

} // namespace qcorr::test
