#pragma once

// Shared generators and independent oracles for the test suites. Nothing in
// here calls into the eigen/bisection paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "kweave/perturbation.hpp"

namespace kweave::testing {

using Rng = std::mt19937_64;

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
    }
    return m;
}

inline Vector random_vector(Rng& rng, Eigen::Index n) { return random_matrix(rng, n, 1).col(0); }

inline Frame random_frame(Rng& rng, Eigen::Index dim, Eigen::Index count) {
    return Frame(random_matrix(rng, dim, count));
}

inline int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random unitary from Gram–Schmidt on a Gaussian matrix.
inline Matrix random_unitary(Rng& rng, Eigen::Index dim) {
    Matrix q = random_matrix(rng, dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
        q.col(j).normalize();
    }
    return q;
}

/// Rank-r orthogonal projection.
inline Matrix random_projection(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
    const Matrix q = random_unitary(rng, dim);
    return q.leftCols(rank) * q.leftCols(rank).adjoint();
}

/// Random K with the requested rank (full rank when rank == dim).
inline Matrix random_k(Rng& rng, Eigen::Index dim, Eigen::Index rank) {
    return random_matrix(rng, dim, rank) * random_matrix(rng, rank, dim);
}

/// Σ f_k f_k* by explicit accumulation.
inline Matrix accumulate_frame_operator(const Matrix& vectors) {
    Matrix s = Matrix::Zero(vectors.rows(), vectors.rows());
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
        for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
            for (Eigen::Index j = 0; j < vectors.rows(); ++j) {
                s(i, j) += vectors(i, k) * std::conj(vectors(j, k));
            }
        }
    }
    return s;
}

/// Coefficients c of det(λI − H) = λ^d + c[d−1]λ^{d−1} + … + c[0], by the
/// Faddeev–LeVerrier recursion.
inline std::vector<double> characteristic_polynomial(const Matrix& h) {
    const Eigen::Index d = h.rows();
    std::vector<Complex> c(static_cast<std::size_t>(d) + 1);
    c[static_cast<std::size_t>(d)] = 1.0;
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index k = 1; k <= d; ++k) {
        m = h * m;
        m.diagonal().array() += c[static_cast<std::size_t>(d - k + 1)];
        c[static_cast<std::size_t>(d - k)] = -(h * m).trace() / double(k);
    }
    std::vector<double> out;
    for (const auto& z : c) out.push_back(z.real());
    return out;
}

inline double eval_poly(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

/// Real roots of a polynomial known to have only real roots in [−r, r]:
/// sign changes on a fine grid refined by bisection.
inline std::vector<double> real_roots(const std::vector<double>& c, double r, int grid = 200000) {
    std::vector<double> roots;
    double x0 = -r;
    double f0 = eval_poly(c, x0);
    for (int i = 1; i <= grid; ++i) {
        const double x1 = -r + 2.0 * r * i / grid;
        const double f1 = eval_poly(c, x1);
        if (f0 == 0.0) roots.push_back(x0);
        if ((f0 < 0) != (f1 < 0) && f0 != 0.0 && f1 != 0.0) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = eval_poly(c, mid);
                if ((fm < 0) == (fa < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

/// min over `samples` random f with ‖K*f‖ > 1e-8 of ⟨Sf,f⟩/‖K*f‖².
inline double sampled_min_quotient(Rng& rng, const Matrix& s, const Matrix& k, int samples) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const Vector f = random_vector(rng, s.rows());
        const double kf = (k.adjoint() * f).squaredNorm();
        if (kf <= 1e-8) continue;
        best = std::min(best, f.dot(s * f).real() / kf);
    }
    return best;
}

/// Frame whose j-th column is e_{pattern[j]} (1-based), zero when 0.
inline Frame literal_frame(Eigen::Index dim, const std::vector<int>& pattern) {
    Matrix m = Matrix::Zero(dim, static_cast<Eigen::Index>(pattern.size()));
    for (std::size_t j = 0; j < pattern.size(); ++j) {
        if (pattern[j] > 0) m(pattern[j] - 1, static_cast<Eigen::Index>(j)) = 1.0;
    }
    return Frame(std::move(m));
}

inline Matrix diag_projection(Eigen::Index dim, std::vector<int> basis) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int b : basis) p(b - 1, b - 1) = 1.0;
    return p;
}

/// Orthogonal frame: columns of a random unitary with random norms in [lo, hi].
inline Frame random_orthogonal_frame(Rng& rng, Eigen::Index dim, double lo, double hi) {
    Matrix q = random_unitary(rng, dim);
    for (Eigen::Index j = 0; j < dim; ++j) q.col(j) *= uniform_real(rng, lo, hi);
    return Frame(std::move(q));
}

inline bool close_rel(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace kweave::testing
