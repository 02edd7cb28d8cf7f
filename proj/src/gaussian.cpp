#include "tcpda/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace tcpda {

namespace {

constexpr double kPriorSlack = 1e-12;

}  // namespace

ClassParams::ClassParams(double prior, Vector mean, Matrix covariance,
                         std::size_t class_index)
    : prior_(prior),
      mean_(std::move(mean)),
      covariance_(std::move(covariance)),
      class_index_(class_index) {
    const Index D = mean_.size();
    if (D == 0) {
        throw InvalidInput("class parameters need at least one feature");
    }
    if (covariance_.rows() != D || covariance_.cols() != D) {
        throw InvalidInput("covariance must be " + std::to_string(D) + "x" +
                           std::to_string(D));
    }
    if (!std::isfinite(prior_) || prior_ < -kPriorSlack ||
        prior_ > 1.0 + kPriorSlack) {
        throw InvalidInput("prior must lie in [0, 1], got " +
                           std::to_string(prior_));
    }
    prior_ = std::clamp(prior_, 0.0, 1.0);
    if (!mean_.allFinite() || !covariance_.allFinite()) {
        throw InvalidInput("class parameters contain non-finite values");
    }
    if ((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() >
        kSymmetryTolerance) {
        throw InvalidInput("covariance is not symmetric");
    }

    // A prior of exactly zero is floored so the log stays finite.
    log_prior_ = std::log(std::max(prior_, std::numeric_limits<double>::min()));

    Eigen::LLT<Matrix> llt(covariance_);
    if (llt.info() != Eigen::Success) return;
    const double log_det =
        2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    if (!std::isfinite(log_det) || log_det < std::log(kMinDeterminant)) return;

    log_det_ = log_det;
    trace_inverse_ = llt.solve(Matrix::Identity(D, D)).trace();
    factor_ = std::move(llt);
}

void ClassParams::require_factor() const {
    if (!factor_) {
        throw EstimationError(class_index_,
                              "covariance is singular (determinant below 1e-300)");
    }
}

double ClassParams::log_det() const {
    require_factor();
    return log_det_;
}

double ClassParams::trace_inverse() const {
    require_factor();
    return trace_inverse_;
}

double ClassParams::log_density(const Eigen::Ref<const Vector>& x) const {
    require_factor();
    if (x.size() != dim()) {
        throw InvalidInput("sample has dimension " + std::to_string(x.size()) +
                           ", expected " + std::to_string(dim()));
    }
    const Vector diff = x - mean_;
    const Vector white = factor_->matrixL().solve(diff);
    const double D = static_cast<double>(dim());
    return log_prior_ - 0.5 * D * std::log(2.0 * std::numbers::pi) -
           0.5 * log_det_ - 0.5 * white.squaredNorm();
}

Vector ClassParams::log_density_rows(const Matrix& X) const {
    require_factor();
    if (X.cols() != dim()) {
        throw InvalidInput("data has " + std::to_string(X.cols()) +
                           " columns, expected " + std::to_string(dim()));
    }
    // Whiten all rows in one triangular solve.
    const Matrix centered = (X.rowwise() - mean_.transpose()).transpose();
    const Matrix white = factor_->matrixL().solve(centered);
    const double D = static_cast<double>(dim());
    const double offset = log_prior_ -
                          0.5 * D * std::log(2.0 * std::numbers::pi) -
                          0.5 * log_det_;
    return (offset - 0.5 * white.colwise().squaredNorm().array()).matrix().transpose();
}

Matrix regularize_covariance(const Matrix& S, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw InvalidConfig("regularization lambda must be a finite value >= 0");
    }
    if (S.rows() != S.cols()) {
        throw InvalidInput("covariance must be square");
    }
    if (!S.allFinite()) {
        throw InvalidInput("covariance contains non-finite values");
    }
    const Matrix sym = 0.5 * (S + S.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
    Matrix out;
    if (eig.eigenvalues().minCoeff() >= 0.0) {
        // Already PSD: skip the reconstruction and its rounding.
        out = sym;
    } else {
        const Vector clamped = eig.eigenvalues().cwiseMax(0.0);
        out = eig.eigenvectors() * clamped.asDiagonal() *
              eig.eigenvectors().transpose();
        out = 0.5 * (out + out.transpose());
    }
    out.diagonal().array() += lambda;
    return out;
}

}  // namespace tcpda
