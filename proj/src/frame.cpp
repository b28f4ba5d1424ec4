#include "kweave/frame.hpp"

#include <string>

namespace kweave {

Frame::Frame(Matrix vectors) : vectors_(std::move(vectors)) {
    if (vectors_.rows() < 1 || vectors_.cols() < 1) {
        throw Error(ErrorCode::InvalidArgument, "a frame needs dim >= 1 and count >= 1");
    }
    if (!vectors_.allFinite()) throw Error(ErrorCode::NonFinite, "frame vector has NaN/Inf");
}

Frame Frame::from_columns(const std::vector<Vector>& columns) {
    if (columns.empty()) throw Error(ErrorCode::InvalidArgument, "no frame vectors given");
    Matrix m(columns.front().size(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k].size() != m.rows()) {
            throw Error(ErrorCode::DimensionMismatch,
                        "column " + std::to_string(k) + " has the wrong length");
        }
        m.col(static_cast<Eigen::Index>(k)) = columns[k];
    }
    return Frame(std::move(m));
}

Matrix frame_operator(const Frame& frame) {
    const Matrix& t = frame.vectors();
    Matrix s = Matrix::Zero(t.rows(), t.rows());
    s.selfadjointView<Eigen::Lower>().rankUpdate(t);
    return s.selfadjointView<Eigen::Lower>();
}

BoundsPair frame_bounds(const Frame& frame) {
    const auto spectrum = spectral_bounds(frame_operator(frame));
    BoundsPair out{std::max(spectrum.lambda_min, 0.0), std::max(spectrum.lambda_max, 0.0)};
    if (out.lower < kFrameClassification * out.upper) out.lower = 0.0;
    return out;
}

Vector analysis_coefficients(const Frame& frame, const Vector& f) {
    if (f.size() != frame.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(f.size()) +
                                                      " != frame dim " +
                                                      std::to_string(frame.dim()));
    }
    return frame.vectors().adjoint() * f;
}

Vector synthesis(const Frame& frame, const Vector& coefficients) {
    if (coefficients.size() != frame.count()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "coefficient length " + std::to_string(coefficients.size()) +
                        " != frame count " + std::to_string(frame.count()));
    }
    return frame.vectors() * coefficients;
}

Frame concatenate(const Frame& a, const Frame& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "frames differ in dim");
    Matrix m(a.dim(), a.count() + b.count());
    m << a.vectors(), b.vectors();
    return Frame(std::move(m));
}

Frame apply_operator(const Matrix& u, const Frame& frame) {
    if (u.rows() != u.cols() || u.cols() != frame.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "operator does not act on the frame's space");
    }
    return Frame(u * frame.vectors());
}

}  // namespace kweave
