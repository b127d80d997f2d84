#pragma once

#include "qcorr/measurement.hpp"
#include "qcorr/optimizer.hpp"

namespace qcorr {

/// Matching distillable-entanglement bounds for a measurement-generated
/// state, all in bits. The hashing lower bound and the relative-entropy
/// upper bound coincide on this class, which is what makes the certified
/// value exact; the module never computes distillable entanglement for
/// arbitrary states.
struct EntanglementCertificate {
    /// Coherent information S(Tr_M rho_2) - S(rho_2), clamped at 0.
    double lower_bound = 0.0;
    /// S(rho_2 || sigma) against the pointer-dephased separable sigma.
    double upper_bound = 0.0;
    /// Closed form S(Lambda(rho)) - S(rho).
    double certified_value = 0.0;
    double gap = 0.0;
};

/// Hashing-type lower bound on E_D across the M | AB cut, in bits.
double coherent_info_lower(const ApparatusState& apparatus);

/// sigma = sum_i Pi_i^M rho_2 Pi_i^M; block diagonal across the pointer
/// register and separable with respect to M | AB by construction.
DensityMatrix dephased_separable_sigma(const ApparatusState& apparatus);

/// Relative-entropy upper bound S(rho_2 || sigma), in bits. Finite by
/// construction; an infinite value signals degenerate numerics.
/// Throws SupportViolation in that case.
double relative_entropy_upper(const ApparatusState& apparatus);

/// Both bounds plus the closed form for the entanglement created when
/// measuring factor 0 of `state` in `basis`.
EntanglementCertificate measurement_entanglement(const DensityMatrix& state,
                                                 const ProjectiveBasis& basis);

/// P = E^{M|AB} - E^{M|A} for the same measurement, in bits. The M x A
/// marginal of the coupled state is itself measurement-generated, so its
/// entanglement has the closed form S(Lambda_A(rho^A)) - S(rho^A).
double partial_entanglement(const DensityMatrix& state, const ProjectiveBasis& basis);

/// Configuration of the nested fidelity search: an outer basis search and
/// an inner concave maximization of F over the classical-quantum states
/// with that basis.
struct GeometricConfig {
    OptimizerConfig outer;
    int inner_max_iterations = 500;
    double inner_tolerance = 1e-11;
};

/// Best classical-quantum approximation at a fixed basis: the maximum of
/// F(rho, sigma) over sigma = sum_i p_i |i><i| x rho_i^B together with the
/// achieving sigma. Probabilities are parameterized through a softmax and
/// conditional B-states through unit-trace factor products, so the search
/// space is unconstrained.
struct CqFit {
    double fidelity = 0.0;
    DensityMatrix sigma;
};

CqFit best_cq_fidelity(const DensityMatrix& state, const ProjectiveBasis& basis,
                       const GeometricConfig& config);

struct GeometricResult {
    /// Certified upper bound on min over CQ sigma of 1 - F(rho, sigma),
    /// recomputed from the achieving sigma.
    double value = 0.0;
    ProjectiveBasis basis;
    DensityMatrix sigma;
    OptimizationResult diagnostics;
};

/// Fidelity distance from the zero-discord states: the numerical minimum
/// of 1 - F(rho, sigma) over classical-quantum sigma.
GeometricResult geometric_cq_distance(const DensityMatrix& state, const GeometricConfig& config);

} // namespace qcorr
