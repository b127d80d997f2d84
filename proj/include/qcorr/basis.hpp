#pragma once

#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

/// Orthonormal basis of a measured subsystem; column i is the vector of
/// the rank-one projector Pi_i. Columns form a unitary matrix, checked at
/// construction (Gram within 1e-9 of identity; completeness follows for
/// square column sets).
class ProjectiveBasis {
public:
    explicit ProjectiveBasis(Matrix columns);

    static ProjectiveBasis computational(int d);

    int dim() const { return static_cast<int>(columns_.cols()); }
    const Matrix& columns() const { return columns_; }
    Vector column(int i) const { return columns_.col(i); }
    Matrix projector(int i) const {
        return columns_.col(i) * columns_.col(i).adjoint();
    }

private:
    Matrix columns_;
};

/// Max-norm distance between the projector sets of two bases (order
/// sensitive); zero iff the bases define the same projectors.
double projector_distance(const ProjectiveBasis& a, const ProjectiveBasis& b);

} // namespace qcorr
