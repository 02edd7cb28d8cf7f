#include "tcpda/simplex.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace tcpda {

Vector project_to_simplex(const Eigen::Ref<const Vector>& v) {
    const Index K = v.size();
    if (K < 1) throw InvalidInput("cannot project an empty vector onto the simplex");
    if (!v.allFinite()) throw InvalidInput("simplex projection input is not finite");

    std::vector<double> sorted(v.data(), v.data() + K);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());

    // Largest r with sorted[r] - (sum_{i<=r} sorted[i] - 1) / (r + 1) > 0.
    double cumulative = 0.0;
    double tau = 0.0;
    for (Index r = 0; r < K; ++r) {
        cumulative += sorted[static_cast<std::size_t>(r)];
        const double candidate = (cumulative - 1.0) / static_cast<double>(r + 1);
        if (sorted[static_cast<std::size_t>(r)] - candidate > 0.0) tau = candidate;
    }

    Vector out = (v.array() - tau).cwiseMax(0.0);
    // Remove the last bit of rounding so rows sum to one.
    const double total = out.sum();
    if (total > 0.0) out /= total;
    return out;
}

LabelMatrix project_rows(const Matrix& Q) {
    Matrix out(Q.rows(), Q.cols());
    for (Index j = 0; j < Q.rows(); ++j) {
        out.row(j) = project_to_simplex(Q.row(j).transpose()).transpose();
    }
    return LabelMatrix(std::move(out));
}

}  // namespace tcpda
