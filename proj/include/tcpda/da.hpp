#pragma once

#include "tcpda/common.hpp"
#include "tcpda/gaussian.hpp"

#include <span>

namespace tcpda {

/// Row-stochastic m x K matrix of (soft) class memberships.
///
/// Hard labels are the one-hot special case. Construction validates that
/// every entry lies in [0, 1] and every row sums to one within 1e-10.
class LabelMatrix {
public:
    explicit LabelMatrix(Matrix values);

    static LabelMatrix one_hot(std::span<const int> labels, Index num_classes);
    static LabelMatrix uniform(Index rows, Index num_classes);

    const Matrix& values() const noexcept { return values_; }
    Index rows() const noexcept { return values_.rows(); }
    Index cols() const noexcept { return values_.cols(); }
    double operator()(Index j, Index k) const { return values_(j, k); }

    static constexpr double kRowSumTolerance = 1e-10;

private:
    Matrix values_;
};

/// Discriminant analysis parameter set: one ClassParams per class.
///
/// With shared_covariance (LDA) every class carries the same pooled matrix.
/// regularization is the lambda used at estimation time; it also sets the
/// weight of the covariance penalty in the regularized risk.
class DAParams {
public:
    DAParams(std::vector<ClassParams> classes, bool shared_covariance,
             double regularization);

    const std::vector<ClassParams>& classes() const noexcept { return classes_; }
    const ClassParams& operator[](std::size_t k) const { return classes_[k]; }
    Index num_classes() const noexcept { return static_cast<Index>(classes_.size()); }
    Index dim() const noexcept { return classes_.front().dim(); }
    bool shared_covariance() const noexcept { return shared_; }
    double regularization() const noexcept { return lambda_; }

    /// Sum_k prior_k * mean_k.
    Vector total_mean() const;

    /// True when both sets have the same K, D and covariance sharing.
    bool same_structure(const DAParams& other) const noexcept;

    static constexpr double kPriorSumTolerance = 1e-10;

private:
    std::vector<ClassParams> classes_;
    bool shared_;
    double lambda_;
};

/// Total label weight below which a class is treated as empty.
inline constexpr double kEmptyClassWeight = 1e-12;

/// Closed-form weighted maximum-likelihood estimate from soft labels.
///
/// Priors are the mean label weight, means and covariances the
/// label-weighted sample moments (population normalization). Every class
/// covariance goes through regularize_covariance(., lambda). For LDA the
/// regularized class covariances are pooled with the priors as weights.
/// A class whose total weight is below kEmptyClassWeight gets the global
/// mean and lambda * I.
DAParams estimate(const Matrix& Z, const LabelMatrix& q, double lambda,
                  bool shared_covariance);

/// Per-sample, per-class regularized loss:
///   L(j, k) = -log[prior_k N(z_j | mean_k, Sigma_k)] + lambda/2 * tr(Sigma_k^-1)
/// With lambda = 0 this is the plain negative log-likelihood.
Matrix loss_matrix(const DAParams& params, const Matrix& Z);

/// (1/m) sum_j sum_k q_jk L(j, k). The penalty term makes estimate() the
/// exact minimizer of this risk for fixed q.
double risk(const DAParams& params, const Matrix& Z, const LabelMatrix& q);

/// Class posteriors from the prior-weighted densities (log-sum-exp).
LabelMatrix posterior(const DAParams& params, const Matrix& X);

/// Argmax class per row; ties go to the lowest index.
std::vector<int> predict(const DAParams& params, const Matrix& X);

/// Log-densities log[prior_k N(x_j | theta_k)] as an n x K matrix.
Matrix log_density_matrix(const DAParams& params, const Matrix& X);

}  // namespace tcpda
