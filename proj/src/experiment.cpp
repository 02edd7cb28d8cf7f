#include "tcpda/experiment.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <thread>

namespace tcpda {

std::string_view to_string(ModelFamily family) {
    return family == ModelFamily::LDA ? "lda" : "qda";
}

ModelFamily parse_model_family(std::string_view text) {
    if (text == "lda" || text == "LDA") return ModelFamily::LDA;
    if (text == "qda" || text == "QDA") return ModelFamily::QDA;
    throw InvalidConfig("unknown model '" + std::string(text) + "' (expected lda or qda)");
}

std::string_view to_string(Variant variant) {
    switch (variant) {
        case Variant::SourceLDA: return "source-LDA";
        case Variant::SourceQDA: return "source-QDA";
        case Variant::TcpLDA: return "TCP-LDA";
        case Variant::TcpQDA: return "TCP-QDA";
    }
    return "?";
}

DAParams train_source(const DomainDataset& source, ModelFamily family, double lambda) {
    if (source.labels.size() != static_cast<std::size_t>(source.size())) {
        throw InvalidInput("source domain '" + source.name + "' is unlabeled");
    }
    const auto q = LabelMatrix::one_hot(source.labels, source.num_classes());
    return estimate(source.features, q, lambda, family == ModelFamily::LDA);
}

PairFit fit_pair(const DomainDataset& source, const DomainDataset& target,
                 ModelFamily family, const TCPConfig& config, int positive_class) {
    if (source.features.cols() != target.features.cols()) {
        throw InvalidInput("domains '" + source.name + "' and '" + target.name +
                           "' have different feature counts");
    }
    DAParams source_model = train_source(source, family, config.lambda);
    TCPResult tcp = fit(source_model, target.features, config);
    EvalReport source_report =
        evaluate(source_model, source_model, target.features, target.labels, positive_class);
    EvalReport tcp_report =
        evaluate(tcp.params, source_model, target.features, target.labels, positive_class);
    return PairFit{std::move(source_model), std::move(tcp), source_report, tcp_report};
}

namespace {

struct Task {
    std::size_t source;
    std::size_t target;
    ModelFamily family;
};

}  // namespace

std::vector<MatrixRow> run_matrix(const std::vector<DomainDataset>& domains,
                                  const MatrixOptions& options) {
    if (domains.size() < 2) throw InvalidInput("the domain matrix needs at least two domains");
    options.config.validate();

    std::vector<Task> tasks;
    for (std::size_t s = 0; s < domains.size(); ++s) {
        for (std::size_t t = 0; t < domains.size(); ++t) {
            if (s == t) continue;
            for (ModelFamily f : options.families) tasks.push_back({s, t, f});
        }
    }

    // Two rows per task: source variant, then TCP variant.
    std::vector<std::pair<MatrixRow, MatrixRow>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            const Task& task = tasks[i];
            const auto& src = domains[task.source];
            const auto& tgt = domains[task.target];
            const bool lda = task.family == ModelFamily::LDA;
            MatrixRow source_row{src.name, tgt.name,
                                 lda ? Variant::SourceLDA : Variant::SourceQDA, {}, {}};
            MatrixRow tcp_row{src.name, tgt.name, lda ? Variant::TcpLDA : Variant::TcpQDA,
                              {}, {}};
            try {
                const PairFit pair =
                    fit_pair(src, tgt, task.family, options.config, options.positive_class);
                source_row.report = pair.source_report;
                source_row.report.target_risk_tcp = pair.tcp_report.target_risk_tcp;
                source_row.report.contrast = pair.tcp_report.contrast;
                tcp_row.report = pair.tcp_report;
            } catch (const std::exception& e) {
                spdlog::error("{} -> {} ({}): {}", src.name, tgt.name, to_string(task.family),
                              e.what());
                source_row.error = e.what();
                tcp_row.error = e.what();
            }
            results[i] = {std::move(source_row), std::move(tcp_row)};
        }
    };

    unsigned threads = options.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
    }

    std::vector<MatrixRow> rows;
    rows.reserve(2 * results.size());
    for (auto& [s, t] : results) {
        rows.push_back(std::move(s));
        rows.push_back(std::move(t));
    }
    // Report order: source domain, target domain (input order), variant.
    auto domain_pos = [&](const std::string& name) {
        return std::find_if(domains.begin(), domains.end(),
                            [&](const auto& d) { return d.name == name; }) -
               domains.begin();
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const MatrixRow& a, const MatrixRow& b) {
        const auto ka = std::make_tuple(domain_pos(a.source), domain_pos(a.target),
                                        static_cast<int>(a.variant));
        const auto kb = std::make_tuple(domain_pos(b.source), domain_pos(b.target),
                                        static_cast<int>(b.variant));
        return ka < kb;
    });
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

std::string matrix_csv(const std::vector<MatrixRow>& rows) {
    std::string out =
        "source,target,classifier,auc,error_rate,risk_source,risk_tcp,contrast,error\n";
    for (const auto& r : rows) {
        out += csv_field(r.source) + ',' + csv_field(r.target) + ',' +
               std::string(to_string(r.variant)) + ',';
        if (r.error.empty()) {
            out += eval_report_csv_row(r.report) + ",\n";
        } else {
            out += ",,,,," + csv_field(r.error) + '\n';
        }
    }
    return out;
}

}  // namespace tcpda
