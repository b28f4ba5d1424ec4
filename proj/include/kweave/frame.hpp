#pragma once

#include <vector>

#include "kweave/linalg.hpp"

namespace kweave {

/// A finite frame for ℂ^dim: the columns of a dim×count matrix. Column order
/// is significant (weaving partitions index into it) and zero columns are
/// allowed; they contribute nothing to the frame operator.
class Frame {
public:
    explicit Frame(Matrix vectors);

    static Frame from_columns(const std::vector<Vector>& columns);

    Eigen::Index dim() const noexcept { return vectors_.rows(); }
    Eigen::Index count() const noexcept { return vectors_.cols(); }

    /// The synthesis matrix T; column k is f_k.
    const Matrix& vectors() const noexcept { return vectors_; }
    auto column(Eigen::Index k) const { return vectors_.col(k); }

    bool operator==(const Frame& other) const {
        return vectors_.rows() == other.vectors_.rows() &&
               vectors_.cols() == other.vectors_.cols() && vectors_ == other.vectors_;
    }

private:
    Matrix vectors_;
};

struct BoundsPair {
    double lower = 0.0;
    double upper = 0.0;
};

/// lower < kFrameClassification·upper means "Bessel, not a frame".
inline constexpr double kFrameClassification = 1e-10;

/// S = T T* = Σ f_k f_k*.
Matrix frame_operator(const Frame& frame);

/// Optimal frame bounds (λmin(S), λmax(S)); a lower bound below the
/// classification threshold is reported as exactly 0.
BoundsPair frame_bounds(const Frame& frame);

inline bool is_frame(const BoundsPair& bounds) { return bounds.lower > 0.0; }

/// T* f = {⟨f, f_k⟩}.
Vector analysis_coefficients(const Frame& frame, const Vector& f);

/// T c = Σ c_k f_k.
Vector synthesis(const Frame& frame, const Vector& coefficients);

/// Columns of `a` followed by the columns of `b`.
Frame concatenate(const Frame& a, const Frame& b);

/// {U f_k}.
Frame apply_operator(const Matrix& u, const Frame& frame);

}  // namespace kweave
