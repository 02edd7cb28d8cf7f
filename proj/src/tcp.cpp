#include "tcpda/tcp.hpp"

#include "tcpda/simplex.hpp"

#include <spdlog/spdlog.h>

#include <cmath>

namespace tcpda {

std::string_view to_string(QInit init) {
    switch (init) {
        case QInit::SourcePosterior: return "source_posterior";
        case QInit::Uniform: return "uniform";
    }
    return "source_posterior";
}

QInit parse_q_init(std::string_view text) {
    if (text == "source_posterior") return QInit::SourcePosterior;
    if (text == "uniform") return QInit::Uniform;
    throw InvalidConfig("unknown q initialization '" + std::string(text) +
                        "' (expected source_posterior or uniform)");
}

void TCPConfig::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidConfig("lambda must be a finite value >= 0");
    }
    if (base_rate && (!(*base_rate > 0.0) || !std::isfinite(*base_rate))) {
        throw InvalidConfig("base rate must be a finite value > 0");
    }
    if (!(tolerance >= 0.0)) {
        throw InvalidConfig("tolerance must be >= 0");
    }
}

namespace {

void require_same_structure(const DAParams& theta, const DAParams& source) {
    if (!theta.same_structure(source)) {
        throw InvalidInput(
            "TCP contrast needs parameter sets with the same classes, "
            "dimension and covariance sharing");
    }
}

}  // namespace

double tcp_risk(const DAParams& theta, const DAParams& source, const Matrix& Z,
                const LabelMatrix& q) {
    require_same_structure(theta, source);
    return risk(theta, Z, q) - risk(source, Z, q);
}

Matrix grad_q(const DAParams& theta, const DAParams& source, const Matrix& Z) {
    require_same_structure(theta, source);
    const double m = static_cast<double>(Z.rows());
    return (loss_matrix(theta, Z) - loss_matrix(source, Z)) / m;
}

double max_contrast(const DAParams& theta, const DAParams& source, const Matrix& Z) {
    require_same_structure(theta, source);
    return (loss_matrix(theta, Z) - loss_matrix(source, Z)).rowwise().maxCoeff().mean();
}

TCPResult fit(const DAParams& source, const Matrix& Z, const TCPConfig& config) {
    config.validate();
    if (Z.rows() < 1) throw InvalidInput("TCP fit needs at least one target sample");
    if (Z.cols() != source.dim()) {
        throw InvalidInput("target data has " + std::to_string(Z.cols()) +
                           " features, source model expects " +
                           std::to_string(source.dim()));
    }
    const bool shared = source.shared_covariance();
    double lambda = config.lambda;
    if (!shared && lambda < kMinQdaLambda) {
        spdlog::warn("raising QDA lambda from {} to {}", lambda, kMinQdaLambda);
        lambda = kMinQdaLambda;
    }
    if (lambda != source.regularization()) {
        spdlog::warn("TCP lambda {} differs from the source model's {}; the "
                     "risk guarantee assumes they match",
                     lambda, source.regularization());
    }

    LabelMatrix q = config.q_init == QInit::Uniform
                        ? LabelMatrix::uniform(Z.rows(), source.num_classes())
                        : posterior(source, Z);
    const Matrix source_loss = loss_matrix(source, Z);
    const double m = static_cast<double>(Z.rows());
    const double base_rate = config.base_rate.value_or(m);

    std::vector<double> trace;
    trace.reserve(config.max_iters + 1);
    auto record = [&](double value) {
        trace.push_back(value);
        if (!std::isfinite(value)) {
            throw DivergedOptimization(trace.size() - 1, trace);
        }
    };

    // Best visited estimate by its worst case over all labelings.
    struct Candidate {
        DAParams theta;
        LabelMatrix q;
        double value;
        double worst;
    };
    std::optional<Candidate> best;
    auto consider = [&](DAParams theta, const Matrix& difference, const LabelMatrix& labels,
                        double value) {
        const double worst = difference.rowwise().maxCoeff().mean();
        if (!best || worst < best->worst) best = Candidate{std::move(theta), labels, value, worst};
    };

    std::size_t t = 0;
    bool converged = false;
    for (; t < config.max_iters; ++t) {
        DAParams theta = estimate(Z, q, lambda, shared);
        const Matrix difference = loss_matrix(theta, Z) - source_loss;
        const double value = difference.cwiseProduct(q.values()).sum() / m;
        record(value);
        spdlog::debug("tcp iteration {}: risk {:.12g}", t, value);
        consider(std::move(theta), difference, q, value);
        if (t > 0 && std::abs(value - trace[trace.size() - 2]) < config.tolerance) {
            converged = true;
            ++t;
            break;
        }
        const double rate = base_rate / static_cast<double>(t + 1);
        q = project_rows(q.values() + (rate / m) * difference);
    }

    if (!converged) {
        // Budget exhausted: the last ascent step gets its own theta.
        DAParams theta = estimate(Z, q, lambda, shared);
        const Matrix difference = loss_matrix(theta, Z) - source_loss;
        const double value = difference.cwiseProduct(q.values()).sum() / m;
        record(value);
        consider(std::move(theta), difference, q, value);
    }

    TCPResult result{std::move(best->theta), std::move(best->q), std::move(trace), t,
                     converged, base_rate, best->value, best->worst, false};
    if (config.max_iters > 0 && result.max_contrast > 0.0) {
        spdlog::info("no estimate improves on the source model for every labeling "
                     "(best worst case {:.3g}); keeping the source parameters",
                     result.max_contrast);
        result.params = source;
        result.worst_case_labels = std::move(q);
        result.tcp_risk = 0.0;
        result.max_contrast = 0.0;
        result.kept_source = true;
    }
    spdlog::debug("tcp fit: {} iterations, converged={}, risk {:.12g}", t, converged,
                  result.tcp_risk);
    return result;
}

}  // namespace tcpda
