#include "qcorr/report.hpp"

#include "qcorr/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qcorr {

double round_to_reported_precision(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return std::strtod(buffer, nullptr);
}

nlohmann::json rounded(nlohmann::json j) {
    if (j.is_number_float())
        return round_to_reported_precision(j.get<double>());
    if (j.is_object() || j.is_array())
        for (auto& element : j) element = rounded(element);
    return j;
}

ReportWriter::ReportWriter(std::string command, nlohmann::json config, std::uint64_t seed) {
    header_ = {{"record", "header"},
               {"schema", kReportSchema},
               {"tool_version", kToolVersion},
               {"command", std::move(command)},
               {"config", rounded(std::move(config))},
               {"seed", seed}};
}

void ReportWriter::add_case(nlohmann::json record) {
    record["record"] = "case";
    record["index"] = static_cast<int>(cases_.size());
    cases_.push_back(rounded(std::move(record)));
}

void ReportWriter::set_summary(nlohmann::json summary) {
    summary["record"] = "summary";
    summary_ = rounded(std::move(summary));
}

std::string ReportWriter::records() const {
    std::ostringstream out;
    out << header_.dump() << '\n';
    for (const auto& record : cases_) out << record.dump() << '\n';
    if (!summary_.is_null()) out << summary_.dump() << '\n';
    return out.str();
}

std::string ReportWriter::csv() const {
    // Column set: union of scalar case fields, alphabetical (nlohmann
    // objects iterate in key order, so this is deterministic).
    std::set<std::string> columns;
    for (const auto& record : cases_)
        for (const auto& [key, value] : record.items())
            if (value.is_primitive()) columns.insert(key);

    std::ostringstream out;
    bool first = true;
    for (const auto& column : columns) {
        if (!first) out << ',';
        out << column;
        first = false;
    }
    out << '\n';
    for (const auto& record : cases_) {
        first = true;
        for (const auto& column : columns) {
            if (!first) out << ',';
            first = false;
            if (!record.contains(column)) continue;
            const auto& value = record.at(column);
            if (value.is_string())
                out << value.get<std::string>();
            else if (!value.is_null())
                out << value.dump();
        }
        out << '\n';
    }
    return out.str();
}

void ReportWriter::write(const std::string& path, const std::string& format) const {
    if (format != "records" && format != "csv")
        throw OutOfRange("unknown report format: " + format);
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << (format == "csv" ? csv() : records());
}

} // namespace qcorr
