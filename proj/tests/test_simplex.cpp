#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "tcpda/simplex.hpp"

#include <gtest/gtest.h>

#include <limits>

using namespace tcpda;
using tcpda::synth::Rng;

namespace {

Vector random_vector(Rng& rng, Index K, double scale = 1.0) {
    return synth::random_matrix(rng, K, 1, scale);
}

bool on_simplex(const Vector& b) {
    return b.minCoeff() >= 0.0 && std::abs(b.sum() - 1.0) < 1e-10;
}

}  // namespace

TEST(Simplex, PointOnSimplexUnchanged) {
    const Vector v{{0.2, 0.3, 0.5}};
    EXPECT_LT((project_to_simplex(v) - v).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Simplex, SymmetricPair) {
    const Vector b = project_to_simplex(Vector{{1.0, 1.0}});
    EXPECT_DOUBLE_EQ(b(0), 0.5);
    EXPECT_DOUBLE_EQ(b(1), 0.5);
}

TEST(Simplex, VertexMatchesGridSearch) {
    const Vector v{{2.0, 0.0}};
    double best_t = -1.0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 10000; ++i) {
        const double t = i / 10000.0;
        const double dist = (v - Vector{{t, 1.0 - t}}).squaredNorm();
        if (dist < best_dist) {
            best_dist = dist;
            best_t = t;
        }
    }
    EXPECT_EQ(best_t, 1.0);
    const Vector b = project_to_simplex(v);
    EXPECT_DOUBLE_EQ(b(0), 1.0);
    EXPECT_DOUBLE_EQ(b(1), 0.0);
}

TEST(Simplex, RejectsNonFinite) {
    EXPECT_THROW(project_to_simplex(Vector{{0.5, std::numeric_limits<double>::quiet_NaN()}}),
                 InvalidInput);
    EXPECT_THROW(project_to_simplex(Vector{{std::numeric_limits<double>::infinity(), 0.0}}),
                 InvalidInput);
    EXPECT_THROW(project_to_simplex(Vector(0)), InvalidInput);
}

TEST(Simplex, MatchesActiveSetEnumeration) {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const Index K = 1 + trial % 6;
        const Vector v = random_vector(rng, K, 2.0);
        const Vector b = project_to_simplex(v);
        const auto expected = oracle::simplex_projection_by_enumeration(synth::to_vec(v));
        for (Index k = 0; k < K; ++k) EXPECT_NEAR(b(k), expected[static_cast<std::size_t>(k)], 1e-12);
    }
}

TEST(Simplex, Idempotent) {
    Rng rng(32);
    for (int trial = 0; trial < 500; ++trial) {
        const Vector once = project_to_simplex(random_vector(rng, 2 + trial % 5, 3.0));
        EXPECT_TRUE(on_simplex(once));
        EXPECT_LT((project_to_simplex(once) - once).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Simplex, NonExpansive) {
    Rng rng(33);
    for (int trial = 0; trial < 500; ++trial) {
        const Index K = 2 + trial % 5;
        const Vector u = random_vector(rng, K, 2.0);
        const Vector v = random_vector(rng, K, 2.0);
        EXPECT_LE((project_to_simplex(u) - project_to_simplex(v)).norm(), (u - v).norm() + 1e-12);
    }
}

TEST(Simplex, ClosestPointOfSimplex) {
    Rng rng(34);
    std::exponential_distribution<double> expo(1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const Index K = 2 + trial % 5;
        const Vector v = random_vector(rng, K, 2.0);
        Vector b(K);
        for (Index k = 0; k < K; ++k) b(k) = expo(rng);
        b /= b.sum();
        EXPECT_LE((v - project_to_simplex(v)).norm(), (v - b).norm() + 1e-12);
    }
}

TEST(Simplex, InvariantToShiftAlongOnes) {
    Rng rng(35);
    std::uniform_real_distribution<double> shift(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Index K = 2 + trial % 5;
        const Vector v = random_vector(rng, K);
        const Vector moved = (v.array() + shift(rng)).matrix();
        EXPECT_LT((project_to_simplex(moved) - project_to_simplex(v)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ProjectRows, OneHotRowsUnchanged) {
    const Matrix I = Matrix::Identity(3, 3);
    EXPECT_EQ(project_rows(I).values(), I);
}

TEST(ProjectRows, ZeroRowBecomesUniform) {
    const LabelMatrix q = project_rows(Matrix::Zero(1, 3));
    for (Index k = 0; k < 3; ++k) EXPECT_NEAR(q(0, k), 1.0 / 3.0, 1e-15);
}

TEST(ProjectRows, MatchesPerRowProjection) {
    Rng rng(36);
    const Matrix Q = synth::random_matrix(rng, 10, 4, 2.0);
    const LabelMatrix out = project_rows(Q);
    for (Index j = 0; j < 10; ++j) {
        const Vector row = project_to_simplex(Q.row(j).transpose());
        EXPECT_EQ(out.values().row(j), row.transpose());
    }
}
