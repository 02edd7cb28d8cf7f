#pragma once

#include "tcpda/common.hpp"
#include "tcpda/da.hpp"

#include <span>
#include <string>

namespace tcpda {

/// Area under the ROC curve via the Mann-Whitney statistic: the fraction of
/// (positive, negative) pairs ranked correctly, ties counting one half.
/// labels are 0/1; throws UndefinedMetric when only one class is present.
double auc(std::span<const double> scores, std::span<const int> labels);

/// Macro-averaged one-vs-rest AUC over the columns of a posterior matrix.
/// Classes absent from labels (or present in every row) are skipped.
double macro_auc(const Matrix& posteriors, std::span<const int> labels);

double error_rate(std::span<const int> predictions, std::span<const int> labels);

struct EvalReport {
    double auc = 0.0;
    double error_rate = 0.0;
    double target_risk_source = 0.0;
    double target_risk_tcp = 0.0;
    double contrast = 0.0;
};

/// Scores a TCP model against the source model on labeled target data.
/// For two classes the AUC uses the posterior of positive_class as the
/// score; with more classes it is the macro one-vs-rest average.
EvalReport evaluate(const DAParams& tcp_model, const DAParams& source_model,
                    const Matrix& Z, std::span<const int> labels,
                    int positive_class = 1);

/// CSV header matching eval_report_csv_row.
std::string eval_report_csv_header();
std::string eval_report_csv_row(const EvalReport& report);

}  // namespace tcpda
