#pragma once

#include "qcorr/channels.hpp"
#include "qcorr/density_matrix.hpp"

#include <json.hpp>

#include <string>

namespace qcorr {

/// Shared wire encoding: complex matrices as nested arrays of
/// [real, imaginary] pairs, row-major.
nlohmann::json matrix_to_pairs(const Matrix& m);
Matrix matrix_from_pairs(const nlohmann::json& j);

/// State files carry fields `dims` and `matrix`; validation (with the
/// standard tolerances) is applied when parsing.
nlohmann::json state_to_json(const DensityMatrix& state);
DensityMatrix state_from_json(const nlohmann::json& j);
DensityMatrix load_state(const std::string& path);
void save_state(const DensityMatrix& state, const std::string& path);

/// Channel files carry `dims` = [d_in, d_out, k] and `kraus`, a list of k
/// matrices in the shared pair encoding.
nlohmann::json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const nlohmann::json& j);
KrausChannel load_channel(const std::string& path);
void save_channel(const KrausChannel& channel, const std::string& path);

/// Bases serialize as their column list in the shared pair encoding.
nlohmann::json basis_to_json(const ProjectiveBasis& basis);
ProjectiveBasis basis_from_json(const nlohmann::json& j);

} // namespace qcorr
