#pragma once

// Seeded synthetic domain-adaptation problems and small conversion helpers
// shared by the test binaries.

#include "oracles.hpp"
#include "tcpda/common.hpp"
#include "tcpda/da.hpp"

#include <random>
#include <vector>

namespace tcpda::synth {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Index rows, Index cols, double scale = 1.0) {
    std::normal_distribution<double> normal(0.0, scale);
    Matrix M(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) M(i, j) = normal(rng);
    }
    return M;
}

/// Random SPD matrix I + A A^T.
inline Matrix random_spd(Rng& rng, Index D, double scale = 0.5) {
    const Matrix A = random_matrix(rng, D, D, scale);
    return Matrix::Identity(D, D) + A * A.transpose();
}

/// Random row-stochastic matrix with entries bounded away from zero.
inline LabelMatrix random_labels(Rng& rng, Index m, Index K) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    Matrix Q(m, K);
    for (Index j = 0; j < m; ++j) {
        for (Index k = 0; k < K; ++k) Q(j, k) = unif(rng);
        Q.row(j) /= Q.row(j).sum();
    }
    return LabelMatrix(std::move(Q));
}

struct LabeledSample {
    Matrix X;
    std::vector<int> y;
};

/// Draws n samples from a K-class Gaussian mixture with equal priors.
inline LabeledSample sample_mixture(Rng& rng, const std::vector<Vector>& means,
                                    const std::vector<Matrix>& covs, Index n) {
    const auto K = static_cast<int>(means.size());
    const Index D = means.front().size();
    std::uniform_int_distribution<int> pick(0, K - 1);
    std::normal_distribution<double> normal;
    std::vector<Matrix> factors;
    for (const auto& c : covs) factors.push_back(Eigen::LLT<Matrix>(c).matrixL());
    LabeledSample s{Matrix(n, D), std::vector<int>(static_cast<std::size_t>(n))};
    for (Index i = 0; i < n; ++i) {
        const int k = pick(rng);
        Vector e(D);
        for (Index d = 0; d < D; ++d) e(d) = normal(rng);
        s.X.row(i) = (means[static_cast<std::size_t>(k)] + factors[static_cast<std::size_t>(k)] * e).transpose();
        s.y[static_cast<std::size_t>(i)] = k;
    }
    return s;
}

/// Two-class source/target pair: class means 0 and 1 (all coordinates),
/// class covariances I + A_k A_k^T, and a random shift of both target
/// class means.
struct ShiftProblem {
    LabeledSample source;
    LabeledSample target;
};

inline ShiftProblem make_shift_problem(Rng& rng, Index D, Index n, Index m,
                                       double shift_scale = 1.0) {
    const std::vector<Vector> means = {Vector::Zero(D), Vector::Ones(D)};
    const std::vector<Matrix> covs = {random_spd(rng, D, 0.3), random_spd(rng, D, 0.3)};
    const Vector shift = random_matrix(rng, D, 1, shift_scale);
    std::vector<Vector> shifted = means;
    for (auto& mu : shifted) mu += shift;
    ShiftProblem p;
    p.source = sample_mixture(rng, means, covs, n);
    p.target = sample_mixture(rng, shifted, covs, m);
    return p;
}

inline oracle::Mat to_rows(const Matrix& M) {
    oracle::Mat out(static_cast<std::size_t>(M.rows()),
                    oracle::Vec(static_cast<std::size_t>(M.cols())));
    for (Index i = 0; i < M.rows(); ++i) {
        for (Index j = 0; j < M.cols(); ++j) {
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = M(i, j);
        }
    }
    return out;
}

inline oracle::Vec to_vec(const Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

inline std::vector<oracle::ClassModel> to_oracle(const DAParams& params) {
    std::vector<oracle::ClassModel> out;
    for (const auto& c : params.classes()) {
        out.push_back({c.prior(), to_vec(c.mean()), to_rows(c.covariance())});
    }
    return out;
}

}  // namespace tcpda::synth
