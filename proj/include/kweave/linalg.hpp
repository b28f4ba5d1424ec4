#pragma once

// Dense complex linear algebra primitives shared by the frame, K-frame,
// weaving and perturbation modules. Everything here is a pure free function
// over Eigen expressions; results are returned by value.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <limits>

#include "kweave/error.hpp"

namespace kweave {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance on ‖H − H*‖_max accepted by the Hermitian routines.
inline constexpr double kHermitianTolerance = 1e-9;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealOf = typename Eigen::NumTraits<Scalar>::Real;

struct SpectralSummary {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
    return m.allFinite();
}

template <typename Derived>
RealOf<typename Derived::Scalar> max_abs_entry(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0;
    return m.cwiseAbs().maxCoeff();
}

/// (H + H*)/2 without any tolerance check.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> hermitian_part(const Eigen::MatrixBase<Derived>& h) {
    DenseMatrix<typename Derived::Scalar> out = h;
    out = (out + out.adjoint().eval()) / RealOf<typename Derived::Scalar>(2);
    return out;
}

/// Throws NotSquare / NotHermitian / NonFinite when `h` is not Hermitian
/// within kHermitianTolerance relative to its largest entry.
template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& h) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorCode::NotSquare, "expected a square matrix, got " +
                                              std::to_string(h.rows()) + "x" +
                                              std::to_string(h.cols()));
    }
    if (!all_finite(h)) throw Error(ErrorCode::NonFinite, "matrix has NaN/Inf entries");
    const auto scale = max_abs_entry(h);
    const auto asym = max_abs_entry(h - h.adjoint());
    if (asym > kHermitianTolerance * (1 + scale)) {
        throw Error(ErrorCode::NotHermitian,
                    "symmetry defect " + std::to_string(double(asym)) + " exceeds tolerance");
    }
}

/// Ascending eigenvalues of the Hermitian part of `h` (no checks).
template <typename Derived>
Eigen::Matrix<RealOf<typename Derived::Scalar>, Eigen::Dynamic, 1> hermitian_eigenvalues(
    const Eigen::MatrixBase<Derived>& h) {
    using Solver = Eigen::SelfAdjointEigenSolver<DenseMatrix<typename Derived::Scalar>>;
    Solver solver(hermitian_part(h), Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

/// Smallest eigenvalue of the Hermitian part of `h` (no checks).
template <typename Derived>
RealOf<typename Derived::Scalar> lambda_min(const Eigen::MatrixBase<Derived>& h) {
    if (h.rows() == 0) return 0;
    return hermitian_eigenvalues(h)(0);
}

/// Largest eigenvalue of the Hermitian part of `h` (no checks).
template <typename Derived>
RealOf<typename Derived::Scalar> lambda_max(const Eigen::MatrixBase<Derived>& h) {
    if (h.rows() == 0) return 0;
    const auto values = hermitian_eigenvalues(h);
    return values(values.size() - 1);
}

/// Extreme eigenvalues of a Hermitian matrix. The input is symmetrized as
/// (H + H*)/2 after the tolerance check.
template <typename Derived>
SpectralSummary spectral_bounds(const Eigen::MatrixBase<Derived>& h) {
    require_hermitian(h);
    if (h.rows() == 0) return {};
    const auto values = hermitian_eigenvalues(h);
    return {double(values(0)), double(values(values.size() - 1))};
}

/// Singular values in decreasing order.
template <typename Derived>
Eigen::Matrix<RealOf<typename Derived::Scalar>, Eigen::Dynamic, 1> singular_values(
    const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return {};
    Eigen::JacobiSVD<DenseMatrix<typename Derived::Scalar>> svd(m);
    return svd.singularValues();
}

/// Numerical-rank cutoff max(rows, cols)·ε_mach·σ_max.
template <typename Real>
Real rank_threshold(Eigen::Index rows, Eigen::Index cols, Real sigma_max) {
    return Real(std::max(rows, cols)) * std::numeric_limits<Real>::epsilon() * sigma_max;
}

template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m) {
    const auto sv = singular_values(m);
    if (sv.size() == 0) return 0;
    const auto cut = rank_threshold(m.rows(), m.cols(), sv(0));
    return (sv.array() > cut).count();
}

/// Largest singular value; 0 for an empty matrix.
template <typename Derived>
RealOf<typename Derived::Scalar> operator_norm(const Eigen::MatrixBase<Derived>& m) {
    const auto sv = singular_values(m);
    return sv.size() == 0 ? 0 : sv(0);
}

/// Smallest singular value above the rank threshold.
template <typename Derived>
RealOf<typename Derived::Scalar> smallest_positive_singular(const Eigen::MatrixBase<Derived>& m) {
    const auto sv = singular_values(m);
    if (sv.size() == 0 || sv(0) == 0) {
        throw Error(ErrorCode::ZeroOperator, "all singular values are zero");
    }
    const auto cut = rank_threshold(m.rows(), m.cols(), sv(0));
    RealOf<typename Derived::Scalar> smallest = sv(0);
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cut) smallest = sv(i);
    }
    return smallest;
}

/// Moore–Penrose pseudo-inverse; singular values at or below the rank
/// threshold are treated as zero.
template <typename Derived>
DenseMatrix<typename Derived::Scalar> pseudo_inverse(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(m.cols(), m.rows());
    if (m.size() == 0) return out;
    Eigen::JacobiSVD<DenseMatrix<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0) return out;
    const auto cut = rank_threshold(m.rows(), m.cols(), sv(0));
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) <= cut) break;
        out.noalias() += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).adjoint();
    }
    return out;
}

}  // namespace kweave
