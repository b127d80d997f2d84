#pragma once

#include "qcorr/correlations.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qcorr {

/// Completeness-checked operator-sum description of a quantum operation
/// on B. Operators are d_out x d_in; output and input dimensions may
/// differ (isometries and coarse-grainings are operations on B too).
class KrausChannel {
public:
    explicit KrausChannel(std::vector<Matrix> operators);

    int in_dim() const { return static_cast<int>(operators_.front().cols()); }
    int out_dim() const { return static_cast<int>(operators_.front().rows()); }
    const std::vector<Matrix>& operators() const { return operators_; }

private:
    std::vector<Matrix> operators_;
};

/// sum_i (1_A x V_i) rho (1_A x V_i^dagger) on the merged remainder of
/// factor 0. Output is bipartite [d_A, d_out].
DensityMatrix apply_channel_B(const DensityMatrix& state, const KrausChannel& channel);

struct InstrumentOutcome {
    double probability = 0.0;
    /// Post-state on A x B'; absent for null outcomes.
    std::optional<DensityMatrix> state;
};

/// Outcome-resolved application: q_i = Tr[V_i rho V_i^dagger],
/// sigma_i = V_i rho V_i^dagger / q_i. The q-weighted average equals
/// apply_channel_B.
std::vector<InstrumentOutcome> instrument_on_B(const DensityMatrix& state,
                                               const KrausChannel& channel);

/// Channel drawn from a Haar-random Stinespring isometry into a k-fold
/// environment; k = 1 gives a Haar-random unitary.
KrausChannel random_channel(int d_in, int kraus_count, std::uint64_t seed, int d_out = 0);

enum class Verdict { Pass, Fail, Inconclusive };

const char* to_string(Verdict verdict);

/// Correlation quantity monitored by the monotonicity harnesses. The
/// closed-form quantities are grid-oracle-backed at d_A = 2; the
/// geometric ones are heuristic only and can never produce a FAIL.
enum class MonotoneQuantity { Deficit, Discord, GeometricDeficit, GeometricDiscord };

const char* to_string(MonotoneQuantity quantity);

struct MonotonicityReport {
    double before = 0.0;
    double after = 0.0;
    std::optional<double> before_oracle;
    std::optional<double> after_oracle;
    /// after - before, oracle values when available.
    double margin = 0.0;
    bool oracle_backed = false;
    Verdict verdict = Verdict::Inconclusive;
};

/// Checks quantity(Lambda_B(rho)) <= quantity(rho) + tol for a
/// deterministic channel on B. Only oracle-backed comparisons can FAIL;
/// heuristic violations are INCONCLUSIVE because a heuristic upper bound
/// on the left against one on the right certifies nothing.
MonotonicityReport check_monotonicity(const DensityMatrix& state, const KrausChannel& channel,
                                      MonotoneQuantity quantity, const OptimizerConfig& config,
                                      double tol = 1e-6);

/// Checks sum_i q_i quantity(sigma_i) <= quantity(rho) + tol for an
/// instrument on B, null outcomes omitted.
MonotonicityReport check_average_monotonicity(const DensityMatrix& state,
                                              const KrausChannel& channel,
                                              MonotoneQuantity quantity,
                                              const OptimizerConfig& config, double tol = 1e-6);

} // namespace qcorr
