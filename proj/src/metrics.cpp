#include "tcpda/metrics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tcpda {

double auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw InvalidInput("auc: " + std::to_string(scores.size()) + " scores but " +
                           std::to_string(labels.size()) + " labels");
    }
    const std::size_t n = scores.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] != 0 && labels[i] != 1) {
            throw InvalidInput("auc labels must be 0 or 1");
        }
        if (std::isnan(scores[i])) throw InvalidInput("auc score is NaN");
    }
    const auto n_pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw UndefinedMetric("auc is undefined unless both classes are present");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Sum of (1-based, mid-ranked) positive ranks.
    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1) pos_rank_sum += mid_rank;
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
    return u / (np * static_cast<double>(n_neg));
}

double macro_auc(const Matrix& posteriors, std::span<const int> labels) {
    if (posteriors.rows() != static_cast<Index>(labels.size())) {
        throw InvalidInput("macro_auc: posterior rows do not match label count");
    }
    double total = 0.0;
    int used = 0;
    std::vector<double> scores(labels.size());
    std::vector<int> binary(labels.size());
    for (Index k = 0; k < posteriors.cols(); ++k) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            scores[j] = posteriors(static_cast<Index>(j), k);
            binary[j] = labels[j] == k ? 1 : 0;
        }
        const auto positives = std::count(binary.begin(), binary.end(), 1);
        if (positives == 0 || positives == static_cast<long>(binary.size())) continue;
        total += auc(scores, binary);
        ++used;
    }
    if (used == 0) throw UndefinedMetric("macro auc needs at least two classes present");
    return total / used;
}

double error_rate(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw InvalidInput("error_rate: " + std::to_string(predictions.size()) +
                           " predictions but " + std::to_string(labels.size()) +
                           " labels");
    }
    if (labels.empty()) throw InvalidInput("error_rate needs at least one sample");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (predictions[i] != labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

EvalReport evaluate(const DAParams& tcp_model, const DAParams& source_model,
                    const Matrix& Z, std::span<const int> labels, int positive_class) {
    if (Z.rows() != static_cast<Index>(labels.size())) {
        throw InvalidInput("evaluate: data rows do not match label count");
    }
    const Index K = tcp_model.num_classes();

    EvalReport report;
    if (K == 2) {
        if (positive_class < 0 || positive_class >= K) {
            throw InvalidInput("positive class out of range");
        }
        // Log-odds rank exactly like the positive posterior but do not
        // saturate to 0/1 far from the boundary.
        const Matrix logp = log_density_matrix(tcp_model, Z);
        const Index negative_class = 1 - positive_class;
        std::vector<double> scores(labels.size());
        std::vector<int> binary(labels.size());
        for (std::size_t j = 0; j < labels.size(); ++j) {
            const auto row = static_cast<Index>(j);
            scores[j] = logp(row, positive_class) - logp(row, negative_class);
            binary[j] = labels[j] == positive_class ? 1 : 0;
        }
        report.auc = auc(scores, binary);
    } else {
        report.auc = macro_auc(posterior(tcp_model, Z).values(), labels);
    }
    report.error_rate = error_rate(predict(tcp_model, Z), labels);

    const LabelMatrix truth = LabelMatrix::one_hot(labels, K);
    report.target_risk_source = risk(source_model, Z, truth);
    report.target_risk_tcp = risk(tcp_model, Z, truth);
    report.contrast = report.target_risk_tcp - report.target_risk_source;
    return report;
}

std::string eval_report_csv_header() {
    return "auc,error_rate,risk_source,risk_tcp,contrast";
}

std::string eval_report_csv_row(const EvalReport& r) {
    return fmt::format("{},{},{},{},{}", r.auc, r.error_rate, r.target_risk_source,
                       r.target_risk_tcp, r.contrast);
}

}  // namespace tcpda
