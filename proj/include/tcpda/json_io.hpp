#pragma once

// JSON documents exchanged by the CLI:
//
//   model:  {"shared_covariance": bool, "lambda": float,
//            "classes": [{"prior": f, "mean": [f], "covariance": [[f]]}]}
//   result: the model fields plus "q_star" (m x K), "trace", "iterations",
//           "converged" and the solver "config".
//   report: {"auc", "error_rate", "target_risk_source", "target_risk_tcp",
//            "contrast"}

#include "tcpda/da.hpp"
#include "tcpda/metrics.hpp"
#include "tcpda/tcp.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace tcpda {

nlohmann::json to_json(const DAParams& params);
DAParams params_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const TCPConfig& config);
nlohmann::json to_json(const TCPResult& result, const TCPConfig& config);
TCPResult result_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const EvalReport& report);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace tcpda
