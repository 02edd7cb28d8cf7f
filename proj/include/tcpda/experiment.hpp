#pragma once

#include "tcpda/da.hpp"
#include "tcpda/data.hpp"
#include "tcpda/metrics.hpp"
#include "tcpda/tcp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tcpda {

enum class ModelFamily { LDA, QDA };

std::string_view to_string(ModelFamily family);
ModelFamily parse_model_family(std::string_view text);

/// Source classifier: closed-form estimate from one-hot labels.
DAParams train_source(const DomainDataset& source, ModelFamily family, double lambda);

/// Classifier variants reported per domain pair, in report order.
enum class Variant { SourceLDA, SourceQDA, TcpLDA, TcpQDA };

std::string_view to_string(Variant variant);

struct MatrixRow {
    std::string source;
    std::string target;
    Variant variant = Variant::SourceLDA;
    EvalReport report;
    /// Empty on success; otherwise the failure that replaced the row.
    std::string error;
};

/// Everything one (source, target, family) adaptation produced, kept for
/// checks that need more than the report columns.
struct PairFit {
    DAParams source_model;
    TCPResult tcp;
    EvalReport source_report;  // source model scored on the target
    EvalReport tcp_report;     // TCP model scored on the target
};

PairFit fit_pair(const DomainDataset& source, const DomainDataset& target,
                 ModelFamily family, const TCPConfig& config, int positive_class);

struct MatrixOptions {
    std::vector<ModelFamily> families = {ModelFamily::LDA, ModelFamily::QDA};
    TCPConfig config;
    int positive_class = 1;
    /// Worker threads for domain pairs; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

/// Runs every ordered (source, target) pair of distinct domains. Rows come
/// back ordered by source, target (domain order of the input) and variant,
/// independent of completion order. Failures become rows with error set.
std::vector<MatrixRow> run_matrix(const std::vector<DomainDataset>& domains,
                                  const MatrixOptions& options);

/// CSV with header source,target,classifier,auc,error_rate,risk_source,
/// risk_tcp,contrast,error.
std::string matrix_csv(const std::vector<MatrixRow>& rows);

}  // namespace tcpda
