#pragma once

#include "tcpda/common.hpp"
#include "tcpda/da.hpp"

#include <optional>
#include <string_view>

namespace tcpda {

enum class QInit { SourcePosterior, Uniform };

std::string_view to_string(QInit init);
QInit parse_q_init(std::string_view text);

/// Settings for the saddle-point solver.
struct TCPConfig {
    double lambda = 1.0;
    std::size_t max_iters = 500;
    /// alpha_0 in the step-size schedule alpha_t = alpha_0 / (t + 1). Unset
    /// means the number of target samples, which cancels the 1/m of the
    /// gradient so every row moves by (loss difference) / (t + 1).
    std::optional<double> base_rate;
    /// Stop once the TCP risk changes by less than this between iterations.
    double tolerance = 1e-9;
    QInit q_init = QInit::SourcePosterior;

    /// Throws InvalidConfig when a field is out of range.
    void validate() const;
};

/// Smallest lambda accepted for QDA fits.
inline constexpr double kMinQdaLambda = 1e-12;

struct TCPResult {
    DAParams params;
    LabelMatrix worst_case_labels;
    /// TCP risk of every theta step, in order.
    std::vector<double> tcp_risk_trace;
    std::size_t iterations = 0;
    bool converged = false;
    /// alpha_0 actually used.
    double base_rate = 1.0;
    /// tcp_risk(params, source, Z, worst_case_labels).
    double tcp_risk = 0.0;
    /// max over all labelings q of tcp_risk(params, source, Z, q). Never
    /// positive after at least one iteration.
    double max_contrast = 0.0;
    /// True when no visited estimate had a non-positive max_contrast and the
    /// source parameters were returned instead.
    bool kept_source = false;

    double final_tcp_risk() const { return tcp_risk; }
};

/// Contrast risk(theta) - risk(theta_source) on Z under labeling q.
double tcp_risk(const DAParams& theta, const DAParams& source, const Matrix& Z,
                const LabelMatrix& q);

/// Gradient of tcp_risk with respect to q. It does not depend on q.
Matrix grad_q(const DAParams& theta, const DAParams& source, const Matrix& Z);

/// max over q of tcp_risk(theta, source, Z, q): the mean over rows of the
/// largest per-class loss difference.
double max_contrast(const DAParams& theta, const DAParams& source, const Matrix& Z);

/// Minimize over theta / maximize over q the TCP risk.
///
/// Each iteration fits theta in closed form to the current q (the exact
/// minimizer, since the source term does not depend on theta), records the
/// TCP risk, then takes a projected gradient ascent step on q.
///
/// Of the visited estimates, the one with the smallest max_contrast is
/// returned together with the labeling it was fitted to. If every visited
/// estimate could do worse than the source model for some labeling, the
/// source parameters are returned (kept_source). With max_iters = 0 the
/// estimate from the initial labeling is returned as is.
TCPResult fit(const DAParams& source, const Matrix& Z, const TCPConfig& config);

}  // namespace tcpda
