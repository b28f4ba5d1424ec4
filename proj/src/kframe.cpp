#include "kweave/kframe.hpp"

#include <cmath>

namespace kweave {

namespace {

constexpr int kMaxBisectionSteps = 200;
constexpr double kRelativeWidth = 1e-9;
constexpr double kRoundoffShift = 1e-13;
constexpr double kCertificateStep = 1e-6;

// Fast PSD test: S − A·G + ε·I admits a Cholesky factorization.
class PencilProbe {
public:
    PencilProbe(const Matrix& s, const Matrix& g, double eps)
        : s_(s), g_(g), eps_(eps), work_(s.rows(), s.cols()), llt_(s.rows()) {}

    bool feasible_fast(double a) {
        work_ = s_ - a * g_;
        work_.diagonal().array() += eps_;
        llt_.compute(work_);
        return llt_.info() == Eigen::Success;
    }

    bool feasible_exact(double a) const { return lambda_min(s_ - a * g_) >= -eps_; }

private:
    const Matrix& s_;
    const Matrix& g_;
    double eps_;
    Matrix work_;
    Eigen::LLT<Matrix, Eigen::Lower> llt_;
};

Vector fix_phase(Vector v) {
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    const double mag = std::abs(v(arg));
    if (mag > 0) v *= std::conj(v(arg)) / mag;
    v(arg) = std::abs(v(arg));
    return v;
}

}  // namespace

KOperator::KOperator(Matrix k) : matrix_(std::move(k)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorCode::NotSquare, "K must be square");
    }
    if (matrix_.rows() < 1) throw Error(ErrorCode::InvalidArgument, "K must be at least 1x1");
    if (!matrix_.allFinite()) throw Error(ErrorCode::NonFinite, "K has NaN/Inf entries");
    gram_ = matrix_ * matrix_.adjoint();
    gram_ = hermitian_part(gram_);
    const RealVector sv = singular_values(matrix_);
    sigma_max_ = sv(0);
    if (sigma_max_ > 0) {
        const double cut = rank_threshold(matrix_.rows(), matrix_.cols(), sigma_max_);
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > cut) {
                ++rank_;
                sigma_min_pos_ = sv(i);
            }
        }
    }
}

double psd_tolerance(double frame_operator_lambda_max) {
    return 1e-9 * (1.0 + frame_operator_lambda_max);
}

double kframe_lower_bound(const Matrix& frame_op, double s_lambda_max, const KOperator& k) {
    if (k.is_zero()) {
        throw Error(ErrorCode::ZeroK, "K = 0: every Bessel sequence is vacuously a 0-frame");
    }
    if (frame_op.rows() != k.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "frame dim differs from K's dim");
    }
    const double eps = psd_tolerance(s_lambda_max);
    const double gram_max = k.sigma_max() * k.sigma_max();
    double hi = s_lambda_max / (k.sigma_min_pos() * k.sigma_min_pos()) + 1.0;
    PencilProbe probe(frame_op, k.gram(), eps);
    if (probe.feasible_exact(hi)) return hi;

    // Near the supremum ‖S − A·KK*‖ ≤ 2λmax(S), so this shift only absorbs
    // eigenvalue roundoff and the search lands on the supremum itself.
    PencilProbe tight(frame_op, k.gram(), kRoundoffShift * (1.0 + s_lambda_max));
    double lo = 0.0;
    for (int step = 0; step < kMaxBisectionSteps; ++step) {
        if (hi - lo <= kRelativeWidth * hi) break;
        if (hi * gram_max <= eps) return 0.0;
        const double mid = 0.5 * (lo + hi);
        if (tight.feasible_fast(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Shifts below ε_psd cannot be told apart from roundoff.
    if (lo * gram_max <= eps) return 0.0;

    // The ε_psd certificate also asks that A·(1 + δ) fail the test. When the
    // pencil is too flat for that, move up to the ε_psd-supremum over (1 + δ).
    const double stepped = lo * (1.0 + kCertificateStep);
    if (probe.feasible_exact(stepped)) {
        double flo = stepped;
        double fhi = std::max(hi, stepped);
        while (probe.feasible_exact(fhi)) fhi *= 2.0;
        for (int step = 0; step < kMaxBisectionSteps; ++step) {
            if (fhi - flo <= kRelativeWidth * fhi) break;
            const double mid = 0.5 * (flo + fhi);
            if (probe.feasible_exact(mid)) {
                flo = mid;
            } else {
                fhi = mid;
            }
        }
        lo = fhi / (1.0 + kCertificateStep);
    }

    // Cholesky and eigenvalue tests can disagree at roundoff level; the
    // returned bound must satisfy the eigenvalue criterion.
    double back = std::max(kRelativeWidth * lo, 1e-12 * hi);
    while (lo > 0.0 && !probe.feasible_exact(lo)) {
        lo = std::max(0.0, lo - back);
        back *= 2.0;
    }
    if (lo * gram_max <= eps) return 0.0;
    return lo;
}

double kframe_lower_bound(const Frame& frame, const KOperator& k) {
    const Matrix s = frame_operator(frame);
    return kframe_lower_bound(s, std::max(0.0, lambda_max(s)), k);
}

double default_kframe_threshold(double upper) { return 1e-8 * (1.0 + upper); }

KFrameReport is_kframe(const Frame& frame, const KOperator& k, double threshold) {
    if (frame.dim() != k.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "frame dim differs from K's dim");
    }
    const Matrix s = frame_operator(frame);
    KFrameReport report;
    report.threshold = threshold;
    report.upper = std::max(0.0, lambda_max(s));
    report.lower = kframe_lower_bound(s, report.upper, k);
    report.is_kframe = report.lower >= threshold;
    if (!report.is_kframe) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(s - threshold * k.gram()));
        report.witness = fix_phase(solver.eigenvectors().col(0).normalized());
    }
    return report;
}

}  // namespace kweave
