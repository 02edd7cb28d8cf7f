#pragma once

#include "tcpda/common.hpp"
#include "tcpda/da.hpp"

namespace tcpda {

/// Euclidean projection of v onto the probability simplex
/// {b : b >= 0, sum(b) = 1}, by sorting and thresholding.
Vector project_to_simplex(const Eigen::Ref<const Vector>& v);

/// Applies project_to_simplex to every row of Q.
LabelMatrix project_rows(const Matrix& Q);

}  // namespace tcpda
