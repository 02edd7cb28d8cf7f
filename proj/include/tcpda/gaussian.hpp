#pragma once

#include "tcpda/common.hpp"

#include <optional>

namespace tcpda {

/// Prior-weighted Gaussian component theta_k = (prior, mean, covariance).
///
/// The covariance is factorized once at construction so that log_density is
/// O(D^2). A covariance that is not positive definite, or whose determinant
/// falls below 1e-300, is accepted at construction (the estimator may
/// legitimately produce one for an empty class with lambda = 0) but any
/// attempt to evaluate the density raises EstimationError.
class ClassParams {
public:
    ClassParams(double prior, Vector mean, Matrix covariance,
                std::size_t class_index = 0);

    double prior() const noexcept { return prior_; }
    const Vector& mean() const noexcept { return mean_; }
    const Matrix& covariance() const noexcept { return covariance_; }
    Index dim() const noexcept { return mean_.size(); }
    std::size_t class_index() const noexcept { return class_index_; }

    bool singular() const noexcept { return !factor_.has_value(); }

    /// log|Sigma|. Throws EstimationError when singular.
    double log_det() const;

    /// trace(Sigma^-1). Throws EstimationError when singular.
    double trace_inverse() const;

    /// log[prior * N(x | mean, covariance)].
    double log_density(const Eigen::Ref<const Vector>& x) const;

    /// log_density applied to every row of X.
    Vector log_density_rows(const Matrix& X) const;

private:
    void require_factor() const;

    double prior_;
    Vector mean_;
    Matrix covariance_;
    std::size_t class_index_;
    std::optional<Eigen::LLT<Matrix>> factor_;
    double log_det_ = 0.0;
    double trace_inverse_ = 0.0;
    double log_prior_ = 0.0;
};

/// Symmetrize S, clamp negative eigenvalues to zero and add lambda * I.
Matrix regularize_covariance(const Matrix& S, double lambda);

inline constexpr double kSymmetryTolerance = 1e-10;
inline constexpr double kMinDeterminant = 1e-300;

}  // namespace tcpda
