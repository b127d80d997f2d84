#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qcorr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "qcorr.report/1";

/// Rounds to 12 significant digits, the precision at which all report
/// values are serialized.
double round_to_reported_precision(double value);

/// Recursively rounds every floating-point value in a json tree to the
/// reported precision.
nlohmann::json rounded(nlohmann::json j);

/// Line-delimited report: a header record (schema version, tool version,
/// config echo, seed), one record per case in index order, and a summary
/// record last. The CSV export mirrors the scalar fields of the case
/// records for plotting.
class ReportWriter {
public:
    ReportWriter(std::string command, nlohmann::json config, std::uint64_t seed);

    void add_case(nlohmann::json record);
    void set_summary(nlohmann::json summary);

    std::string records() const;
    std::string csv() const;

    /// format is "records" or "csv".
    void write(const std::string& path, const std::string& format) const;

private:
    nlohmann::json header_;
    std::vector<nlohmann::json> cases_;
    nlohmann::json summary_;
};

} // namespace qcorr
