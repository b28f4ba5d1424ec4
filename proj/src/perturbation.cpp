#include "kweave/perturbation.hpp"

#include <cmath>
#include <random>

namespace kweave {

OrthogonalityCheck check_orthogonal_alpha(const Frame& f1) {
    const Matrix& t = f1.vectors();
    const RealVector norms_sq = t.colwise().squaredNorm().transpose();
    OrthogonalityCheck out;
    const double max_norm_sq = norms_sq.maxCoeff();
    bool any_zero = false;
    double alpha = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < norms_sq.size(); ++j) {
        if (norms_sq(j) == 0.0) {
            any_zero = true;
        } else {
            alpha = std::min(alpha, norms_sq(j));
        }
    }
    out.alpha_max = std::isfinite(alpha) ? alpha : 0.0;

    const Matrix gram = t.adjoint() * t;
    double off = 0.0;
    for (Eigen::Index j = 0; j < gram.rows(); ++j) {
        for (Eigen::Index k = 0; k < gram.cols(); ++k) {
            if (j != k) off = std::max(off, std::abs(gram(j, k)));
        }
    }
    out.orthogonal = !any_zero && off <= 1e-9 * max_norm_sq;
    return out;
}

double synthesis_gap(const Frame& f1, const Frame& f2) {
    if (f1.dim() != f2.dim() || f1.count() != f2.count()) {
        throw Error(ErrorCode::ShapeMismatch, "frames differ in shape");
    }
    return operator_norm(f1.vectors() - f2.vectors());
}

std::optional<double> predicted_lower_bound(double lhs, double rhs, double b1, double b2) {
    if (!(lhs < rhs - 1e-12 * rhs)) return std::nullopt;
    const double gap = rhs - lhs;
    return gap * gap / (b1 + b2);
}

PerturbationReport perturbation_condition(const Frame& f1, const Frame& f2, const KOperator& k,
                                          const PerturbationParams& params,
                                          const PerturbationOptions& options) {
    if (f1.dim() != f2.dim() || f1.count() != f2.count()) {
        throw Error(ErrorCode::ShapeMismatch, "frames differ in shape");
    }
    if (f1.dim() != k.dim()) throw Error(ErrorCode::ShapeMismatch, "K acts on a different space");
    if (!(params.lambda >= 0 && params.mu >= 0 && params.nu >= 0)) {
        throw Error(ErrorCode::InvalidArgument, "lambda, mu, nu must be nonnegative");
    }
    if (!(params.alpha > 0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    if (k.is_zero()) throw Error(ErrorCode::ZeroK, "K = 0");

    PerturbationReport report;
    const auto ortho = check_orthogonal_alpha(f1);
    report.alpha_max = ortho.alpha_max;
    if (!ortho.orthogonal) {
        throw Error(ErrorCode::HypothesesViolated,
                    "orthogonality: first frame is not an orthogonal set of nonzero vectors");
    }
    if (params.alpha > ortho.alpha_max) {
        throw Error(ErrorCode::HypothesesViolated,
                    "alpha: " + std::to_string(params.alpha) + " exceeds min squared norm " +
                        std::to_string(ortho.alpha_max));
    }
    const double a1_opt = kframe_lower_bound(f1, k);
    report.a1 = a1_opt;
    if (options.a1_override) {
        if (*options.a1_override > a1_opt * (1 + 1e-9)) {
            throw Error(ErrorCode::HypothesesViolated,
                        "A1: override exceeds the optimal lower K-frame bound " +
                            std::to_string(a1_opt));
        }
        report.a1 = *options.a1_override;
    }
    if (!(report.a1 > 0)) {
        throw Error(ErrorCode::HypothesesViolated, "A1: first frame is not a K-frame (A1 = 0)");
    }

    report.b1 = frame_bounds(f1).upper;
    report.b2 = frame_bounds(f2).upper;
    report.sigma_min_pos = k.sigma_min_pos();
    const double sb1 = std::sqrt(report.b1);
    const double sb2 = std::sqrt(report.b2);
    report.lhs_27 =
        (sb1 + sb2) * (params.lambda + params.mu * sb1 + params.nu * sb2) / report.sigma_min_pos;
    report.rhs_27 = std::sqrt(params.alpha * report.a1);
    report.predicted_lower = predicted_lower_bound(report.lhs_27, report.rhs_27, report.b1, report.b2);
    report.condition_27_ok = report.predicted_lower.has_value();
    report.predicted_upper = report.b1 + report.b2;

    const Matrix t1 = f1.vectors();
    const Matrix t2 = f2.vectors();
    const Matrix diff = t1 - t2;
    if (params.mu == 0.0 && params.nu == 0.0) {
        report.verification_mode = VerificationMode::Exact;
        const double gap = operator_norm(diff);
        report.hypotheses_ok = gap <= params.lambda + 1e-12 * (1.0 + params.lambda);
        report.violations = report.hypotheses_ok ? 0 : 1;
    } else {
        report.verification_mode = VerificationMode::Sampled;
        report.samples = options.samples;
        std::mt19937_64 rng(options.seed);
        std::normal_distribution<double> gauss;
        Vector a(f1.count());
        for (std::uint64_t s = 0; s < options.samples; ++s) {
            for (Eigen::Index j = 0; j < a.size(); ++j) a(j) = Complex(gauss(rng), gauss(rng));
            a.normalize();
            const double lhs = (diff * a).norm();
            const double rhs =
                params.lambda + params.mu * (t1 * a).norm() + params.nu * (t2 * a).norm();
            if (lhs > rhs + 1e-12 * (1.0 + rhs)) ++report.violations;
        }
        report.hypotheses_ok = report.violations == 0;
    }
    return report;
}

PerturbationCertificate perturbation_certify(const Frame& f1, const Frame& f2, const KOperator& k,
                                             const PerturbationParams& params,
                                             const PerturbationOptions& options,
                                             const CertifyOptions& certify) {
    PerturbationCertificate out;
    out.report = perturbation_condition(f1, f2, k, params, options);
    CertifyOptions exhaustive = certify;
    exhaustive.mode = CertifyMode::Exhaustive;
    out.measured = certify_woven({f1, f2}, k, exhaustive);
    const bool applies = out.report.hypotheses_ok && out.report.condition_27_ok;
    out.consistent = !applies ||
                     (out.measured.woven &&
                      out.measured.universal_lower >= *out.report.predicted_lower - 1e-6 &&
                      out.measured.universal_upper <= out.report.predicted_upper + 1e-6);
    return out;
}

}  // namespace kweave
