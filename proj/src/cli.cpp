#include "tcpda/cli.hpp"

#include "tcpda/experiment.hpp"
#include "tcpda/json_io.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace tcpda::cli {

namespace {

constexpr int kExitError = 1;
constexpr int kExitDiverged = 3;

// Flags shared by every subcommand that reads a CSV file.
struct DataFlags {
    std::string path;
    std::string label_col;
    std::string domain_col;
    std::vector<std::string> drop;
    std::vector<std::string> features;
    bool reject_categorical = false;
    bool no_zscore = false;

    void add_to(CLI::App& cmd, bool label_required) {
        cmd.add_option("data", path, "CSV file with a header row")
            ->required()
            ->check(CLI::ExistingFile);
        auto* label = cmd.add_option("--label-col", label_col, "Label column");
        if (label_required) label->required();
        cmd.add_option("--domain-col", domain_col, "Domain column")->required();
        cmd.add_option("--drop", drop, "Columns to ignore")->delimiter(',');
        cmd.add_option("--features", features, "Keep only these feature columns")
            ->delimiter(',');
        cmd.add_flag("--reject-categorical", reject_categorical,
                     "Fail on non-numeric feature columns instead of one-hot encoding");
        cmd.add_flag("--no-zscore", no_zscore, "Skip per-domain z-scoring");
    }

    std::vector<DomainDataset> load() const {
        CsvOptions options;
        options.label_column = label_col;
        options.domain_column = domain_col;
        options.drop_columns = drop;
        options.feature_columns = features;
        options.categorical =
            reject_categorical ? CategoricalPolicy::Reject : CategoricalPolicy::OneHot;
        auto domains = load_csv(path, options);
        if (!no_zscore) {
            for (auto& d : domains) d = zscore(d).data;
        }
        return domains;
    }
};

struct SolverFlags {
    TCPConfig config;
    std::string q_init = "source_posterior";

    void add_to(CLI::App& cmd) {
        cmd.add_option("--max-iters", config.max_iters, "Iteration budget")
            ->capture_default_str();
        cmd.add_option("--rate", config.base_rate,
                       "Base learning rate a0, step a0/(t+1) (default: number of target samples)")
            ->check(CLI::PositiveNumber);
        cmd.add_option("--tol", config.tolerance, "Stop when the TCP risk changes less")
            ->capture_default_str();
        cmd.add_option("--q-init", q_init, "Initial labeling")
            ->check(CLI::IsMember({"source_posterior", "uniform"}))
            ->capture_default_str();
    }

    TCPConfig resolve() const {
        TCPConfig out = config;
        out.q_init = parse_q_init(q_init);
        return out;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IngestionError("cannot write '" + path + "'");
    out << text;
}

void write_normalized(const std::string& path, const std::vector<DomainDataset>& domains,
                      const DataFlags& flags) {
    if (path.ends_with(".json")) {
        write_json(domains, path);
    } else {
        write_csv(domains, path, flags.label_col.empty() ? "label" : flags.label_col,
                  flags.domain_col);
    }
}

}  // namespace

void configure_logging() {
    static const bool once = [] {
        auto logger = spdlog::stderr_color_mt("tcpda");
        spdlog::set_default_logger(logger);
        return true;
    }();
    (void)once;
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("TCP_LOG")) {
        level = spdlog::level::from_str(env);
    }
    spdlog::set_level(level);
}

int run(const std::vector<std::string>& args) {
    configure_logging();

    CLI::App app{"Target contrastive pessimistic discriminant analysis"};
    app.require_subcommand(1);

    // train-source
    DataFlags train_data;
    std::string train_domain;
    std::string train_model = "lda";
    double train_lambda = 1.0;
    std::string train_out;
    std::string train_normalized;
    auto* train = app.add_subcommand("train-source", "Fit LDA/QDA on one labeled domain");
    train_data.add_to(*train, true);
    train->add_option("--domain", train_domain, "Source domain")->required();
    train->add_option("--model", train_model, "lda or qda")
        ->check(CLI::IsMember({"lda", "qda"}))
        ->capture_default_str();
    train->add_option("--lambda", train_lambda, "Covariance regularization")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    train->add_option("--out", train_out, "Model JSON to write")->required();
    train->add_option("--normalized-out", train_normalized,
                      "Also write the preprocessed data (.csv or .json)");

    // adapt
    std::string adapt_model;
    DataFlags adapt_data;
    std::string adapt_domain;
    SolverFlags adapt_solver;
    std::optional<double> adapt_lambda;
    std::string adapt_out;
    auto* adapt = app.add_subcommand("adapt", "Adapt a source model to an unlabeled domain");
    adapt->add_option("model", adapt_model, "Source model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    adapt_data.add_to(*adapt, false);
    adapt->add_option("--target-domain", adapt_domain, "Target domain")->required();
    adapt_solver.add_to(*adapt);
    adapt->add_option("--lambda", adapt_lambda,
                      "Regularization (defaults to the source model's)");
    adapt->add_option("--out", adapt_out, "Result JSON to write")->required();

    // evaluate
    std::string eval_model;
    std::string eval_source;
    DataFlags eval_data;
    std::string eval_domain;
    int eval_positive = 1;
    std::string eval_out;
    bool eval_csv = false;
    auto* evaluate_cmd =
        app.add_subcommand("evaluate", "Score an adapted model against its source model");
    evaluate_cmd->add_option("model", eval_model, "Adapted model or result JSON")
        ->required()
        ->check(CLI::ExistingFile);
    eval_data.add_to(*evaluate_cmd, true);
    evaluate_cmd->add_option("--source", eval_source, "Source model JSON")
        ->required()
        ->check(CLI::ExistingFile);
    evaluate_cmd->add_option("--domain", eval_domain, "Labeled target domain")->required();
    evaluate_cmd->add_option("--positive-class", eval_positive,
                             "Class index scored as positive for AUC")
        ->capture_default_str();
    evaluate_cmd->add_option("--out", eval_out, "Report JSON (stdout if omitted)");
    evaluate_cmd->add_flag("--csv", eval_csv, "Print a CSV row instead of JSON");

    // matrix
    DataFlags matrix_data;
    std::vector<std::string> matrix_models = {"lda", "qda"};
    std::vector<std::string> matrix_domains;
    SolverFlags matrix_solver;
    int matrix_positive = 1;
    unsigned matrix_threads = 0;
    std::string matrix_out;
    std::string matrix_normalized;
    auto* matrix = app.add_subcommand("matrix", "Evaluate all ordered domain pairs");
    matrix_data.add_to(*matrix, true);
    matrix->add_option("--models", matrix_models, "Model families")
        ->delimiter(',')
        ->check(CLI::IsMember({"lda", "qda"}))
        ->capture_default_str();
    matrix->add_option("--domains", matrix_domains, "Restrict to these domains")
        ->delimiter(',');
    matrix_solver.add_to(*matrix);
    matrix->add_option("--lambda", matrix_solver.config.lambda, "Covariance regularization")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    matrix->add_option("--positive-class", matrix_positive,
                       "Class index scored as positive for AUC")
        ->capture_default_str();
    matrix->add_option("--threads", matrix_threads, "Worker threads (0 = all cores)");
    matrix->add_option("--out-csv", matrix_out, "Report CSV to write")->required();
    matrix->add_option("--normalized-out", matrix_normalized,
                       "Also write the preprocessed data (.csv or .json)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (train->parsed()) {
            const auto domains = train_data.load();
            const auto& source = find_domain(domains, train_domain);
            const DAParams model =
                train_source(source, parse_model_family(train_model), train_lambda);
            write_json_file(train_out, to_json(model));
            if (!train_normalized.empty()) write_normalized(train_normalized, domains, train_data);
            return 0;
        }

        if (adapt->parsed()) {
            const DAParams source = params_from_json(read_json_file(adapt_model));
            const auto domains = adapt_data.load();
            const auto& target = find_domain(domains, adapt_domain);
            TCPConfig config = adapt_solver.resolve();
            config.lambda = adapt_lambda.value_or(source.regularization());
            try {
                const TCPResult result = fit(source, target.features, config);
                write_json_file(adapt_out, to_json(result, config));
            } catch (const DivergedOptimization& e) {
                nlohmann::json dump = {{"diverged", true},
                                       {"iteration", e.iteration()},
                                       {"trace", e.trace()},
                                       {"config", to_json(config)}};
                write_json_file(adapt_out, dump);
                std::cerr << "error: " << e.what() << "\ntrace: " << dump["trace"].dump()
                          << '\n';
                return kExitDiverged;
            }
            return 0;
        }

        if (evaluate_cmd->parsed()) {
            const DAParams model = params_from_json(read_json_file(eval_model));
            const DAParams source = params_from_json(read_json_file(eval_source));
            const auto domains = eval_data.load();
            const auto& target = find_domain(domains, eval_domain);
            const EvalReport report =
                evaluate(model, source, target.features, target.labels, eval_positive);
            const std::string text =
                eval_csv ? eval_report_csv_header() + "\n" + eval_report_csv_row(report) + "\n"
                         : to_json(report).dump(2) + "\n";
            if (eval_out.empty()) {
                std::cout << text;
            } else {
                write_text(eval_out, text);
            }
            return 0;
        }

        if (matrix->parsed()) {
            auto domains = matrix_data.load();
            if (!matrix_domains.empty()) {
                std::vector<DomainDataset> selected;
                for (const auto& name : matrix_domains) {
                    selected.push_back(find_domain(domains, name));
                }
                domains = std::move(selected);
            }
            MatrixOptions options;
            options.families.clear();
            for (const auto& m : matrix_models) options.families.push_back(parse_model_family(m));
            options.config = matrix_solver.resolve();
            options.positive_class = matrix_positive;
            options.threads = matrix_threads;
            const auto rows = run_matrix(domains, options);
            write_text(matrix_out, matrix_csv(rows));
            if (!matrix_normalized.empty()) {
                write_normalized(matrix_normalized, domains, matrix_data);
            }
            const auto failures = std::count_if(rows.begin(), rows.end(),
                                                [](const auto& r) { return !r.error.empty(); });
            if (failures > 0) {
                std::cerr << "error: " << failures << " report rows failed\n";
                return kExitError;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace tcpda::cli
