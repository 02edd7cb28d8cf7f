#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tcpda/gaussian.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace tcpda;
using tcpda::synth::Rng;

namespace {

ClassParams scalar_class(double prior, double mean, double var) {
    return ClassParams(prior, Vector::Constant(1, mean), Matrix::Constant(1, 1, var));
}

}  // namespace

TEST(LogDensity, StandardNormalAtMean) {
    const auto c = scalar_class(1.0, 0.0, 1.0);
    EXPECT_NEAR(c.log_density(Vector::Zero(1)), -0.5 * std::log(2.0 * std::numbers::pi), 1e-14);
    EXPECT_NEAR(c.log_density(Vector::Zero(1)), -0.918939, 1e-6);
}

TEST(LogDensity, PriorScalesDensity) {
    const auto c = scalar_class(0.5, 0.0, 1.0);
    EXPECT_NEAR(c.log_density(Vector::Zero(1)), -1.612086, 1e-6);
}

TEST(LogDensity, TwoDimensionalMatchesScalarFormula) {
    const ClassParams c(1.0, Vector{{1.0, 2.0}}, Matrix::Identity(2, 2));
    const double expected = oracle::log_density({2.0, 2.0}, 1.0, {1.0, 2.0}, {{1, 0}, {0, 1}});
    EXPECT_NEAR(c.log_density(Vector{{2.0, 2.0}}), expected, 1e-12);
}

TEST(LogDensity, RandomInstancesMatchScalarFormula) {
    Rng rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const Index D = 1 + trial % 5;
        const Matrix S = synth::random_spd(rng, D);
        const Vector mu = synth::random_matrix(rng, D, 1);
        const Vector x = synth::random_matrix(rng, D, 1, 2.0);
        const double prior = 0.1 + 0.035 * trial;
        const ClassParams c(prior, mu, S);
        const double expected = oracle::log_density(synth::to_vec(x), prior,
                                                    synth::to_vec(mu), synth::to_rows(S));
        EXPECT_NEAR(c.log_density(x), expected, 1e-10);
        EXPECT_NEAR(c.log_density_rows(x.transpose())(0), expected, 1e-10);
    }
}

TEST(LogDensity, SingularCovarianceNamesClass) {
    const ClassParams c(0.5, Vector::Zero(2), Matrix::Zero(2, 2), 3);
    EXPECT_TRUE(c.singular());
    try {
        (void)c.log_density(Vector::Zero(2));
        FAIL() << "expected EstimationError";
    } catch (const EstimationError& e) {
        EXPECT_EQ(e.class_index(), 3u);
        EXPECT_NE(std::string(e.what()).find("class 3"), std::string::npos);
    }
}

TEST(LogDensity, DeterminantBelowThresholdIsSingular) {
    // Positive definite, but det = 1e-320 underflows the threshold.
    Matrix S = Matrix::Identity(4, 4) * 1e-80;
    const ClassParams c(1.0, Vector::Zero(4), S);
    EXPECT_TRUE(c.singular());
    EXPECT_THROW((void)c.log_density(Vector::Zero(4)), EstimationError);
}

TEST(LogDensity, RejectsBadParameters) {
    EXPECT_THROW(ClassParams(1.5, Vector::Zero(1), Matrix::Identity(1, 1)), InvalidInput);
    Matrix asym{{1.0, 0.1}, {0.0, 1.0}};
    EXPECT_THROW(ClassParams(1.0, Vector::Zero(2), asym), InvalidInput);
    const auto c = scalar_class(1.0, 0.0, 1.0);
    EXPECT_THROW((void)c.log_density(Vector::Zero(2)), InvalidInput);
}

TEST(LogDensity, IntegratesToPrior) {
    // Trapezoidal quadrature over +-12 standard deviations.
    for (double prior : {1.0, 0.3}) {
        const auto c = scalar_class(prior, 0.7, 2.5);
        const double sd = std::sqrt(2.5);
        const int n = 20000;
        const double a = 0.7 - 12 * sd;
        const double h = 24 * sd / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            sum += w * std::exp(c.log_density(Vector::Constant(1, a + i * h)));
        }
        EXPECT_NEAR(sum * h, prior, 1e-4);
    }
}

TEST(LogDensity, InvariantUnderRotation) {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const Index D = 2 + trial % 4;
        const Matrix S = synth::random_spd(rng, D);
        const Vector mu = synth::random_matrix(rng, D, 1);
        const Vector x = synth::random_matrix(rng, D, 1);
        const Matrix R = Eigen::HouseholderQR<Matrix>(synth::random_matrix(rng, D, D))
                             .householderQ();
        const ClassParams plain(0.4, mu, S);
        Matrix rotated_cov = R * S * R.transpose();
        rotated_cov = 0.5 * (rotated_cov + rotated_cov.transpose());
        const ClassParams rotated(0.4, R * mu, rotated_cov);
        EXPECT_NEAR(plain.log_density(x), rotated.log_density(R * x), 1e-8);
    }
}

TEST(RegularizeCovariance, IdentityPlusLambda) {
    const Matrix out = regularize_covariance(Matrix::Identity(2, 2), 1.0);
    EXPECT_TRUE(out.isApprox(2.0 * Matrix::Identity(2, 2), 1e-14));
}

TEST(RegularizeCovariance, ClampsNegativeEigenvalues) {
    const Matrix S = Vector{{3.0, -2.0}}.asDiagonal();
    const Matrix out = regularize_covariance(S, 0.5);
    const Matrix expected = Vector{{3.5, 0.5}}.asDiagonal();
    EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RegularizeCovariance, EigenvaluesAtLeastLambda) {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix A = synth::random_matrix(rng, 4, 4);
        const Matrix S = 0.5 * (A + A.transpose());
        const Matrix out = regularize_covariance(S, 1.0);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(out);
        EXPECT_GE(eig.eigenvalues().minCoeff(), 1.0 - 1e-8);
        EXPECT_LT((out - out.transpose()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(RegularizeCovariance, IdempotentAtZeroLambda) {
    Rng rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix A = synth::random_matrix(rng, 5, 5);
        const Matrix once = regularize_covariance(0.5 * (A + A.transpose()), 0.3);
        const Matrix twice = regularize_covariance(once, 0.0);
        EXPECT_LT((once - twice).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(RegularizeCovariance, PsdInputUnchangedAtZeroLambda) {
    Rng rng(8);
    const Matrix S = synth::random_spd(rng, 3);
    EXPECT_LT((regularize_covariance(S, 0.0) - S).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RegularizeCovariance, RejectsNegativeLambda) {
    EXPECT_THROW(regularize_covariance(Matrix::Identity(2, 2), -0.1), InvalidConfig);
}
