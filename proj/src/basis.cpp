#include "qcorr/basis.hpp"

#include <string>

namespace qcorr {

ProjectiveBasis::ProjectiveBasis(Matrix columns) : columns_(std::move(columns)) {
    if (columns_.rows() != columns_.cols() || columns_.rows() == 0)
        throw DimensionMismatch("basis must be a square nonempty column set");
    const double gram_residual =
        (columns_.adjoint() * columns_ - Matrix::Identity(columns_.cols(), columns_.cols()))
            .cwiseAbs()
            .maxCoeff();
    if (gram_residual > 1e-9)
        throw DimensionMismatch("basis columns are not orthonormal, Gram residual = " +
                                std::to_string(gram_residual));
}

ProjectiveBasis ProjectiveBasis::computational(int d) {
    return ProjectiveBasis(Matrix::Identity(d, d));
}

double projector_distance(const ProjectiveBasis& a, const ProjectiveBasis& b) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("bases live on different dimensions");
    double worst = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        worst = std::max(worst, (a.projector(i) - b.projector(i)).cwiseAbs().maxCoeff());
    return worst;
}

} // namespace qcorr
