#pragma once

#include <optional>

#include "kweave/frame.hpp"

namespace kweave {

/// A bounded operator K on ℂ^d together with the quantities the K-frame
/// routines need. All caches are filled at construction.
class KOperator {
public:
    explicit KOperator(Matrix k);

    static KOperator identity(Eigen::Index dim) { return KOperator(Matrix::Identity(dim, dim)); }

    Eigen::Index dim() const noexcept { return matrix_.rows(); }
    const Matrix& matrix() const noexcept { return matrix_; }
    /// K K*
    const Matrix& gram() const noexcept { return gram_; }
    Eigen::Index rank() const noexcept { return rank_; }
    double sigma_max() const noexcept { return sigma_max_; }
    /// Smallest positive singular value, i.e. 1/‖K̃*⁻¹‖. Zero iff rank() == 0.
    double sigma_min_pos() const noexcept { return sigma_min_pos_; }

    bool is_zero() const noexcept { return rank_ == 0; }
    /// σ_min⁺ < 1e-6·σ_max.
    bool nearly_rank_deficient() const noexcept {
        return rank_ > 0 && sigma_min_pos_ < 1e-6 * sigma_max_;
    }

private:
    Matrix matrix_;
    Matrix gram_;
    Eigen::Index rank_ = 0;
    double sigma_max_ = 0.0;
    double sigma_min_pos_ = 0.0;
};

/// ε_psd = 1e-9·(1 + λmax(S)).
double psd_tolerance(double frame_operator_lambda_max);

/// sup{A ≥ 0 : S − A·KK* ⪰ 0} over an already formed frame operator S, by
/// bisection on the PSD test λmin(S − A·KK*) ≥ −ε_psd. `s_lambda_max` is
/// λmax(S). Throws ZeroK for K = 0.
double kframe_lower_bound(const Matrix& frame_op, double s_lambda_max, const KOperator& k);

/// Optimal lower K-frame bound of `frame`.
double kframe_lower_bound(const Frame& frame, const KOperator& k);

struct KFrameReport {
    bool is_kframe = false;
    double lower = 0.0;
    double upper = 0.0;
    double threshold = 0.0;
    /// Unit eigenvector of S − threshold·KK* for its most negative
    /// eigenvalue; present exactly when is_kframe is false.
    std::optional<Vector> witness;
};

/// is_kframe = kframe_lower_bound ≥ threshold. The witness phase is fixed so
/// that its largest-magnitude entry is real and positive.
KFrameReport is_kframe(const Frame& frame, const KOperator& k, double threshold);

/// Default threshold used by the CLI: 1e-8·(1 + upper).
double default_kframe_threshold(double upper);

struct DouglasReport {
    bool range_included = false;
    /// inf{μ : L1L1* ⪯ μ L2L2*} by bisection; +∞ when no finite μ exists.
    double lambda_sq = 0.0;
    /// C = L2† L1, the minimal-norm factor with L2·C = L1. Only when included.
    std::optional<Matrix> factor_c;
    std::optional<double> factor_norm_sq;
};

/// inf{μ ≥ 0 : G1 ⪯ μ·G2} for PSD G1, G2 by bisection, or nullopt when the
/// bracket's upper end is already infeasible. `g2_sigma_min_pos` is the
/// smallest positive eigenvalue of G2.
std::optional<double> majorization_infimum(const Matrix& g1, const Matrix& g2,
                                           double g2_sigma_min_pos);

/// Douglas' range-inclusion test for L1: H₁→H, L2: H₂→H (equal row counts).
DouglasReport douglas_check(const Matrix& l1, const Matrix& l2);

}  // namespace kweave
