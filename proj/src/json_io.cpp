#include "tcpda/json_io.hpp"

#include <fstream>

namespace tcpda {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty()) {
        throw InvalidInput(std::string(what) + " must be a non-empty array of rows");
    }
    const auto cols = rows.front().size();
    Matrix M(static_cast<Index>(rows.size()), static_cast<Index>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != cols) {
            throw InvalidInput(std::string(what) + " rows have inconsistent lengths");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            M(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j].get<double>();
        }
    }
    return M;
}

}  // namespace

json to_json(const DAParams& params) {
    json classes = json::array();
    for (const auto& c : params.classes()) {
        json mean = json::array();
        for (Index d = 0; d < c.dim(); ++d) mean.push_back(c.mean()(d));
        classes.push_back({{"prior", c.prior()},
                           {"mean", std::move(mean)},
                           {"covariance", matrix_to_json(c.covariance())}});
    }
    return {{"shared_covariance", params.shared_covariance()},
            {"lambda", params.regularization()},
            {"classes", std::move(classes)}};
}

DAParams params_from_json(const json& doc) {
    try {
        const bool shared = doc.at("shared_covariance").get<bool>();
        const double lambda = doc.at("lambda").get<double>();
        const json& classes = doc.at("classes");
        if (!classes.is_array() || classes.empty()) {
            throw InvalidInput("model needs a non-empty \"classes\" array");
        }
        std::vector<ClassParams> out;
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const json& c = classes[k];
            const auto mean_values = c.at("mean").get<std::vector<double>>();
            Vector mean = Eigen::Map<const Vector>(mean_values.data(),
                                                   static_cast<Index>(mean_values.size()));
            out.emplace_back(c.at("prior").get<double>(), std::move(mean),
                             matrix_from_json(c.at("covariance"), "covariance"), k);
        }
        return DAParams(std::move(out), shared, lambda);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed model document: ") + e.what());
    }
}

json to_json(const TCPConfig& config) {
    return {{"lambda", config.lambda},
            {"max_iters", config.max_iters},
            {"base_rate", config.base_rate ? json(*config.base_rate) : json(nullptr)},
            {"tolerance", config.tolerance},
            {"q_init", std::string(to_string(config.q_init))}};
}

json to_json(const TCPResult& result, const TCPConfig& config) {
    json doc = to_json(result.params);
    doc["q_star"] = matrix_to_json(result.worst_case_labels.values());
    doc["trace"] = result.tcp_risk_trace;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["tcp_risk"] = result.tcp_risk;
    doc["max_contrast"] = result.max_contrast;
    doc["kept_source"] = result.kept_source;
    TCPConfig used = config;
    used.base_rate = result.base_rate;
    doc["config"] = to_json(used);
    return doc;
}

TCPResult result_from_json(const json& doc) {
    DAParams params = params_from_json(doc);
    try {
        LabelMatrix q(matrix_from_json(doc.at("q_star"), "q_star"));
        auto trace = doc.at("trace").get<std::vector<double>>();
        if (trace.empty()) throw InvalidInput("result has an empty trace");
        return TCPResult{std::move(params),
                         std::move(q),
                         std::move(trace),
                         doc.at("iterations").get<std::size_t>(),
                         doc.at("converged").get<bool>(),
                         doc.at("config").at("base_rate").get<double>(),
                         doc.at("tcp_risk").get<double>(),
                         doc.at("max_contrast").get<double>(),
                         doc.at("kept_source").get<bool>()};
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed result document: ") + e.what());
    }
}

json to_json(const EvalReport& report) {
    return {{"auc", report.auc},
            {"error_rate", report.error_rate},
            {"target_risk_source", report.target_risk_source},
            {"target_risk_tcp", report.target_risk_tcp},
            {"contrast", report.contrast}};
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw IngestionError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

}  // namespace tcpda
