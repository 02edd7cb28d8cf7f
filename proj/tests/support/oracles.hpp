#pragma once

// Reference computations for the test suites. Nothing here calls into the
// library's numerical code: densities, inverses and determinants are
// computed with plain loops so that they can check the Eigen-based paths.

#include <cstddef>
#include <vector>

namespace tcpda::oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // row-major, Mat[i][j]

/// Gauss-Jordan inverse with partial pivoting; also returns the determinant.
Mat inverse(const Mat& A, double* determinant = nullptr);

/// log[prior * N(x | mean, cov)] evaluated term by term.
double log_density(const Vec& x, double prior, const Vec& mean, const Mat& cov);

struct ClassModel {
    double prior;
    Vec mean;
    Mat cov;
};

/// (1/m) sum_j sum_k q_jk [-log_density + lambda/2 tr(cov^-1)].
double risk(const std::vector<ClassModel>& model, double lambda, const Mat& Z,
            const Mat& q);

/// Label-weighted class statistics (no regularization):
/// prior = mean of the column, mean and population scatter weighted by q.
struct WeightedStats {
    Vec prior;
    Mat means;
    std::vector<Mat> scatter;
};
WeightedStats weighted_stats(const Mat& Z, const Mat& q);

/// Exact Euclidean projection onto the simplex by enumerating active sets
/// and keeping the feasible KKT point closest to v.
Vec simplex_projection_by_enumeration(const Vec& v);

/// AUC by counting all (positive, negative) pairs, ties worth one half.
double auc_by_pairs(const Vec& scores, const std::vector<int>& labels);

/// Minimizes over a full DA parameter set (priors via softmax, means,
/// covariances via Cholesky factors with log diagonals) with GSL's
/// Nelder-Mead simplex, restarting until the objective stops improving.
/// Returns the minimal value of risk(model, lambda, Z, q).
double minimize_risk_numerically(const Mat& Z, const Mat& q, double lambda, bool shared,
                                 std::size_t num_classes);

}  // namespace tcpda::oracle
