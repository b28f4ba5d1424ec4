#include <cmath>
#include <limits>

#include "kweave/kframe.hpp"

namespace kweave {

namespace {

double majorization_tolerance(double g1_max, double g2_max, double mu) {
    return 1e-12 * (1.0 + g1_max + mu * g2_max);
}

}  // namespace

std::optional<double> majorization_infimum(const Matrix& g1, const Matrix& g2,
                                           double g2_sigma_min_pos) {
    if (g1.rows() != g2.rows() || g1.rows() != g1.cols() || g2.rows() != g2.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "G1 and G2 must be square of equal size");
    }
    const double g1_max = std::max(0.0, lambda_max(g1));
    const double g2_max = std::max(0.0, lambda_max(g2));
    auto feasible = [&](double mu) {
        return lambda_min(mu * g2 - g1) >= -majorization_tolerance(g1_max, g2_max, mu);
    };
    if (feasible(0.0)) return 0.0;
    if (g2_sigma_min_pos <= 0.0) return std::nullopt;

    double lo = 0.0;
    double hi = g1_max / g2_sigma_min_pos + 1.0;
    if (!feasible(hi)) return std::nullopt;
    for (int step = 0; step < 200 && hi - lo > 1e-12 * hi; ++step) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

DouglasReport douglas_check(const Matrix& l1, const Matrix& l2) {
    if (l1.rows() != l2.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "L1 and L2 must map into the same space");
    }
    if (!l1.allFinite() || !l2.allFinite()) {
        throw Error(ErrorCode::NonFinite, "operator has NaN/Inf entries");
    }
    Matrix joined(l2.rows(), l2.cols() + l1.cols());
    joined << l2, l1;
    const RealVector joined_sv = singular_values(joined);
    const RealVector l2_sv = singular_values(l2);
    const double cut =
        joined_sv.size() == 0 ? 0.0 : rank_threshold(joined.rows(), joined.cols(), joined_sv(0));
    const auto rank_joined = (joined_sv.array() > cut).count();
    const auto rank_l2 = (l2_sv.array() > cut).count();

    DouglasReport report;
    report.range_included = rank_joined == rank_l2;
    if (!report.range_included) {
        report.lambda_sq = std::numeric_limits<double>::infinity();
        return report;
    }

    Matrix c = pseudo_inverse(l2) * l1;
    const double norm = operator_norm(c);
    report.factor_c = std::move(c);
    report.factor_norm_sq = norm * norm;

    double l2_min_pos = 0.0;
    for (Eigen::Index i = 0; i < l2_sv.size(); ++i) {
        if (l2_sv(i) > cut) l2_min_pos = l2_sv(i);
    }
    const Matrix g1 = l1 * l1.adjoint();
    const Matrix g2 = l2 * l2.adjoint();
    const auto mu = majorization_infimum(g1, g2, l2_min_pos * l2_min_pos);
    report.lambda_sq = mu.value_or(std::numeric_limits<double>::infinity());
    return report;
}

}  // namespace kweave
