#include "qcorr/state_io.hpp"

#include <fstream>

namespace qcorr {

namespace {

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

void write_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

} // namespace

nlohmann::json matrix_to_pairs(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_pairs(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ParseError("ragged matrix rows");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_array() || entry.size() != 2)
                throw ParseError("matrix entries must be [real, imaginary] pairs");
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

nlohmann::json state_to_json(const DensityMatrix& state) {
    return {{"dims", state.dims()}, {"matrix", matrix_to_pairs(state.matrix())}};
}

DensityMatrix state_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j.contains("matrix"))
        throw ParseError("state document needs `dims` and `matrix` fields");
    std::vector<int> dims;
    try {
        dims = j.at("dims").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad dims field: ") + e.what());
    }
    return validate_density(matrix_from_pairs(j.at("matrix")), std::move(dims));
}

DensityMatrix load_state(const std::string& path) { return state_from_json(parse_file(path)); }

void save_state(const DensityMatrix& state, const std::string& path) {
    write_file(state_to_json(state), path);
}

nlohmann::json channel_to_json(const KrausChannel& channel) {
    nlohmann::json kraus = nlohmann::json::array();
    for (const auto& op : channel.operators()) kraus.push_back(matrix_to_pairs(op));
    return {{"dims",
             {channel.in_dim(), channel.out_dim(),
              static_cast<int>(channel.operators().size())}},
            {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const nlohmann::json& j) {
    if (!j.contains("dims") || !j.contains("kraus"))
        throw ParseError("channel document needs `dims` and `kraus` fields");
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() != 3) throw ParseError("channel dims must be [d_in, d_out, k]");
    const auto& kraus = j.at("kraus");
    if (!kraus.is_array() || static_cast<int>(kraus.size()) != dims[2])
        throw ParseError("kraus list does not match the declared count");
    std::vector<Matrix> operators;
    operators.reserve(kraus.size());
    for (const auto& op : kraus) {
        Matrix m = matrix_from_pairs(op);
        if (m.rows() != dims[1] || m.cols() != dims[0])
            throw ParseError("kraus operator shape does not match the declared dims");
        operators.push_back(std::move(m));
    }
    return KrausChannel(std::move(operators));
}

KrausChannel load_channel(const std::string& path) {
    return channel_from_json(parse_file(path));
}

void save_channel(const KrausChannel& channel, const std::string& path) {
    write_file(channel_to_json(channel), path);
}

nlohmann::json basis_to_json(const ProjectiveBasis& basis) {
    nlohmann::json columns = nlohmann::json::array();
    for (int i = 0; i < basis.dim(); ++i) {
        nlohmann::json column = nlohmann::json::array();
        for (int r = 0; r < basis.dim(); ++r)
            column.push_back({basis.columns()(r, i).real(), basis.columns()(r, i).imag()});
        columns.push_back(std::move(column));
    }
    return {{"dim", basis.dim()}, {"columns", std::move(columns)}};
}

ProjectiveBasis basis_from_json(const nlohmann::json& j) {
    const int d = j.at("dim").get<int>();
    const auto& columns = j.at("columns");
    if (!columns.is_array() || static_cast<int>(columns.size()) != d)
        throw ParseError("basis needs d columns");
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& column = columns[static_cast<std::size_t>(i)];
        if (static_cast<int>(column.size()) != d) throw ParseError("ragged basis column");
        for (int r = 0; r < d; ++r)
            m(r, i) = Complex(column[static_cast<std::size_t>(r)][0].get<double>(),
                              column[static_cast<std::size_t>(r)][1].get<double>());
    }
    return ProjectiveBasis(std::move(m));
}

} // namespace qcorr
