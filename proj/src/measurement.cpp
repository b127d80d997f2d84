#include "qcorr/measurement.hpp"

#include <numeric>
#include <string>

namespace qcorr {

namespace {

Matrix embedded_projector(const std::vector<int>& dims, int subsystem, const Matrix& local) {
    long pre = 1, post = 1;
    for (int k = 0; k < subsystem; ++k) pre *= dims[k];
    for (int k = subsystem + 1; k < static_cast<int>(dims.size()); ++k) post *= dims[k];
    Matrix embedded = local;
    if (pre > 1) embedded = kron(Matrix::Identity(pre, pre), embedded);
    if (post > 1) embedded = kron(embedded, Matrix::Identity(post, post));
    return embedded;
}

void check_subsystem(const DensityMatrix& state, const ProjectiveBasis& basis, int subsystem) {
    if (subsystem < 0 || subsystem >= static_cast<int>(state.dims().size()))
        throw IndexOutOfRange("subsystem index " + std::to_string(subsystem));
    if (state.dims()[subsystem] != basis.dim())
        throw DimensionMismatch("basis dim " + std::to_string(basis.dim()) +
                                " does not match factor dim " +
                                std::to_string(state.dims()[subsystem]));
}

} // namespace

DensityMatrix apply_projective(const DensityMatrix& state, const ProjectiveBasis& basis,
                               int subsystem) {
    check_subsystem(state, basis, subsystem);
    Matrix out = Matrix::Zero(state.dim(), state.dim());
    for (int i = 0; i < basis.dim(); ++i) {
        const Matrix p = embedded_projector(state.dims(), subsystem, basis.projector(i));
        out += p * state.matrix() * p;
    }
    return DensityMatrix::trusted(std::move(out), state.dims());
}

std::vector<MeasurementOutcome> measurement_outcomes(const DensityMatrix& state,
                                                     const ProjectiveBasis& basis,
                                                     int subsystem) {
    check_subsystem(state, basis, subsystem);
    std::vector<MeasurementOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(basis.dim()));
    for (int i = 0; i < basis.dim(); ++i) {
        const Matrix p = embedded_projector(state.dims(), subsystem, basis.projector(i));
        Matrix sandwiched = p * state.matrix() * p;
        MeasurementOutcome outcome;
        outcome.probability = sandwiched.trace().real();
        if (outcome.probability > kNullOutcome)
            outcome.state =
                DensityMatrix::trusted(sandwiched / outcome.probability, state.dims());
        outcomes.push_back(std::move(outcome));
    }
    return outcomes;
}

ApparatusState::ApparatusState(DensityMatrix tripartite, ProjectiveBasis basis,
                               std::vector<Matrix> blocks, int source_dA, int source_dB)
    : state_(std::move(tripartite)),
      basis_(std::move(basis)),
      blocks_(std::move(blocks)),
      source_dA_(source_dA),
      source_dB_(source_dB) {}

ApparatusState couple_apparatus(const DensityMatrix& state, const ProjectiveBasis& basis) {
    const auto& dims = state.dims();
    const int dA = dims[0];
    const int dB = state.dim() / dA;
    if (basis.dim() != dA)
        throw DimensionMismatch("basis dim does not match the measured factor");

    // O_ij = <i^A| rho |j^A>, contracted over the A factor only.
    std::vector<Matrix> blocks(static_cast<std::size_t>(dA) * dA);
    const Matrix& m = state.matrix();
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            Matrix block = Matrix::Zero(dB, dB);
            for (int a = 0; a < dA; ++a)
                for (int ap = 0; ap < dA; ++ap) {
                    const Complex w = std::conj(basis.columns()(a, i)) * basis.columns()(ap, j);
                    if (w != Complex(0.0, 0.0))
                        block += w * m.block(a * dB, ap * dB, dB, dB);
                }
            blocks[static_cast<std::size_t>(i) * dA + j] = std::move(block);
        }

    const long total = static_cast<long>(dA) * dA * dB;
    Matrix coupled = Matrix::Zero(total, total);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            Matrix pointer = Matrix::Zero(dA, dA);
            pointer(i, j) = 1.0;
            const Matrix system = basis.column(i) * basis.column(j).adjoint();
            coupled += kron(pointer, kron(system, blocks[static_cast<std::size_t>(i) * dA + j]));
        }

    return ApparatusState(DensityMatrix::trusted(std::move(coupled), {dA, dA, dB}), basis,
                          std::move(blocks), dA, dB);
}

DensityMatrix naimark_embed(const DensityMatrix& state, int extended_dim) {
    const int dA = state.dims()[0];
    if (extended_dim < dA)
        throw InvalidDimension("extended dim " + std::to_string(extended_dim) +
                               " below measured factor dim " + std::to_string(dA));
    if (extended_dim == dA) return state;

    const int rest = state.dim() / dA;
    Matrix out = Matrix::Zero(static_cast<long>(extended_dim) * rest,
                              static_cast<long>(extended_dim) * rest);
    out.topLeftCorner(state.dim(), state.dim()) = state.matrix();

    std::vector<int> dims = state.dims();
    dims[0] = extended_dim;
    return DensityMatrix::trusted(std::move(out), std::move(dims));
}

ProjectiveBasis product_basis(const std::vector<ProjectiveBasis>& bases) {
    Matrix columns = Matrix::Identity(1, 1);
    for (const auto& b : bases) columns = kron(columns, b.columns());
    return ProjectiveBasis(std::move(columns));
}

DensityMatrix sequential_measure(const DensityMatrix& state, const std::vector<int>& partition,
                                 const std::vector<ProjectiveBasis>& bases) {
    if (partition.empty() || partition.size() != bases.size())
        throw PartitionMismatch("need one basis per partition part");
    long part_product = 1;
    for (int p : partition) {
        if (p < 1) throw PartitionMismatch("partition dims must be positive");
        part_product *= p;
    }
    if (part_product != state.dims()[0])
        throw PartitionMismatch("partition product " + std::to_string(part_product) +
                                " does not match the measured factor dim " +
                                std::to_string(state.dims()[0]));
    for (std::size_t k = 0; k < partition.size(); ++k)
        if (bases[k].dim() != partition[k])
            throw PartitionMismatch("basis dim does not match its partition part");

    std::vector<int> split = partition;
    split.insert(split.end(), state.dims().begin() + 1, state.dims().end());

    DensityMatrix current = state.reshaped(split);
    for (std::size_t k = 0; k < bases.size(); ++k)
        current = apply_projective(current, bases[k], static_cast<int>(k));
    return current.reshaped(state.dims());
}

} // namespace qcorr
