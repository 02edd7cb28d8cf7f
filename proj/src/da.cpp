#include "tcpda/da.hpp"

#include <cmath>

namespace tcpda {

LabelMatrix::LabelMatrix(Matrix values) : values_(std::move(values)) {
    if (values_.rows() == 0 || values_.cols() == 0) {
        throw InvalidInput("label matrix must be non-empty");
    }
    if (!values_.allFinite()) {
        throw InvalidInput("label matrix contains non-finite values");
    }
    if (values_.minCoeff() < 0.0 || values_.maxCoeff() > 1.0) {
        throw InvalidInput("label matrix entries must lie in [0, 1]");
    }
    const Vector sums = values_.rowwise().sum();
    for (Index j = 0; j < sums.size(); ++j) {
        if (std::abs(sums(j) - 1.0) > kRowSumTolerance) {
            throw InvalidInput("label matrix row " + std::to_string(j) +
                               " sums to " + std::to_string(sums(j)));
        }
    }
}

LabelMatrix LabelMatrix::one_hot(std::span<const int> labels, Index num_classes) {
    if (num_classes < 1) throw InvalidInput("need at least one class");
    Matrix Y = Matrix::Zero(static_cast<Index>(labels.size()), num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= num_classes) {
            throw InvalidInput("label " + std::to_string(labels[i]) +
                               " out of range for " + std::to_string(num_classes) +
                               " classes");
        }
        Y(static_cast<Index>(i), labels[i]) = 1.0;
    }
    return LabelMatrix(std::move(Y));
}

LabelMatrix LabelMatrix::uniform(Index rows, Index num_classes) {
    if (num_classes < 1) throw InvalidInput("need at least one class");
    return LabelMatrix(Matrix::Constant(rows, num_classes,
                                        1.0 / static_cast<double>(num_classes)));
}

DAParams::DAParams(std::vector<ClassParams> classes, bool shared_covariance,
                   double regularization)
    : classes_(std::move(classes)),
      shared_(shared_covariance),
      lambda_(regularization) {
    if (classes_.empty()) throw InvalidInput("model needs at least one class");
    if (!(lambda_ >= 0.0) || !std::isfinite(lambda_)) {
        throw InvalidConfig("regularization lambda must be a finite value >= 0");
    }
    double prior_sum = 0.0;
    for (const auto& c : classes_) {
        if (c.dim() != dim()) {
            throw InvalidInput("all classes must share the feature dimension");
        }
        prior_sum += c.prior();
    }
    if (std::abs(prior_sum - 1.0) > kPriorSumTolerance) {
        throw InvalidInput("class priors sum to " + std::to_string(prior_sum));
    }
    if (shared_) {
        for (const auto& c : classes_) {
            if (c.covariance() != classes_.front().covariance()) {
                throw InvalidInput("shared-covariance model has differing covariances");
            }
        }
    }
}

Vector DAParams::total_mean() const {
    Vector mu = Vector::Zero(dim());
    for (const auto& c : classes_) mu += c.prior() * c.mean();
    return mu;
}

bool DAParams::same_structure(const DAParams& other) const noexcept {
    return num_classes() == other.num_classes() && dim() == other.dim() &&
           shared_ == other.shared_;
}

DAParams estimate(const Matrix& Z, const LabelMatrix& q, double lambda,
                  bool shared_covariance) {
    const Index m = Z.rows();
    const Index D = Z.cols();
    const Index K = q.cols();
    if (m < 1 || D < 1) throw InvalidInput("estimate needs a non-empty data matrix");
    if (q.rows() != m) {
        throw InvalidInput("label matrix has " + std::to_string(q.rows()) +
                           " rows, data has " + std::to_string(m));
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidConfig("regularization lambda must be a finite value >= 0");
    }
    if (!Z.allFinite()) throw InvalidInput("data contains non-finite values");

    const Matrix& Q = q.values();
    const Vector global_mean = Z.colwise().mean().transpose();
    const Vector weights = Q.colwise().sum().transpose();

    std::vector<double> priors(K);
    std::vector<Vector> means(K);
    std::vector<Matrix> covs(K);
    for (Index k = 0; k < K; ++k) {
        priors[k] = weights(k) / static_cast<double>(m);
        if (weights(k) < kEmptyClassWeight) {
            means[k] = global_mean;
            covs[k] = lambda * Matrix::Identity(D, D);
            continue;
        }
        const Vector w = Q.col(k);
        means[k] = Z.transpose() * w / weights(k);
        const Matrix centered = Z.rowwise() - means[k].transpose();
        const Matrix scatter =
            centered.transpose() * w.asDiagonal() * centered / weights(k);
        covs[k] = regularize_covariance(scatter, lambda);
    }

    if (shared_covariance) {
        Matrix pooled = Matrix::Zero(D, D);
        for (Index k = 0; k < K; ++k) pooled += priors[k] * covs[k];
        pooled = regularize_covariance(pooled, 0.0);
        for (auto& c : covs) c = pooled;
    }

    std::vector<ClassParams> classes;
    classes.reserve(static_cast<std::size_t>(K));
    for (Index k = 0; k < K; ++k) {
        classes.emplace_back(priors[k], std::move(means[k]), std::move(covs[k]),
                             static_cast<std::size_t>(k));
    }
    return DAParams(std::move(classes), shared_covariance, lambda);
}

Matrix log_density_matrix(const DAParams& params, const Matrix& X) {
    if (X.cols() != params.dim()) {
        throw InvalidInput("data has " + std::to_string(X.cols()) +
                           " features, model expects " + std::to_string(params.dim()));
    }
    Matrix out(X.rows(), params.num_classes());
    for (Index k = 0; k < params.num_classes(); ++k) {
        out.col(k) = params[static_cast<std::size_t>(k)].log_density_rows(X);
    }
    return out;
}

Matrix loss_matrix(const DAParams& params, const Matrix& Z) {
    Matrix L = -log_density_matrix(params, Z);
    const double half_lambda = 0.5 * params.regularization();
    if (half_lambda > 0.0) {
        for (Index k = 0; k < params.num_classes(); ++k) {
            L.col(k).array() +=
                half_lambda * params[static_cast<std::size_t>(k)].trace_inverse();
        }
    }
    return L;
}

double risk(const DAParams& params, const Matrix& Z, const LabelMatrix& q) {
    if (q.rows() != Z.rows() || q.cols() != params.num_classes()) {
        throw InvalidInput("label matrix is " + std::to_string(q.rows()) + "x" +
                           std::to_string(q.cols()) + ", expected " +
                           std::to_string(Z.rows()) + "x" +
                           std::to_string(params.num_classes()));
    }
    const Matrix L = loss_matrix(params, Z);
    return L.cwiseProduct(q.values()).sum() / static_cast<double>(Z.rows());
}

LabelMatrix posterior(const DAParams& params, const Matrix& X) {
    Matrix logp = log_density_matrix(params, X);
    for (Index j = 0; j < logp.rows(); ++j) {
        const double shift = logp.row(j).maxCoeff();
        logp.row(j) = (logp.row(j).array() - shift).exp();
        logp.row(j) /= logp.row(j).sum();
    }
    return LabelMatrix(std::move(logp));
}

std::vector<int> predict(const DAParams& params, const Matrix& X) {
    const Matrix logp = log_density_matrix(params, X);
    std::vector<int> out(static_cast<std::size_t>(logp.rows()));
    for (Index j = 0; j < logp.rows(); ++j) {
        Index best = 0;
        for (Index k = 1; k < logp.cols(); ++k) {
            if (logp(j, k) > logp(j, best)) best = k;
        }
        out[static_cast<std::size_t>(j)] = static_cast<int>(best);
    }
    return out;
}

}  // namespace tcpda
