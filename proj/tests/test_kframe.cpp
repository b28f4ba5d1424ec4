#include "doctest.h"
#include "support.hpp"

using namespace kweave;
using namespace kweave::testing;

namespace {

// min eigenvalue via the characteristic polynomial, for small d only.
double oracle_lambda_min(const Matrix& h) {
    const auto roots = real_roots(characteristic_polynomial(h), h.norm() + 1.0);
    return roots.empty() ? std::numeric_limits<double>::quiet_NaN() : roots.front();
}

}  // namespace

TEST_CASE("KOperator caches") {
    const KOperator id = KOperator::identity(3);
    CHECK(id.rank() == 3);
    CHECK(id.sigma_max() == doctest::Approx(1.0));
    CHECK(id.sigma_min_pos() == doctest::Approx(1.0));
    CHECK_FALSE(id.is_zero());

    const KOperator zero(Matrix::Zero(3, 3));
    CHECK(zero.is_zero());
    CHECK(zero.rank() == 0);

    Matrix near = Matrix::Identity(2, 2);
    near(1, 1) = 1e-8;
    CHECK(KOperator(near).nearly_rank_deficient());
    CHECK_THROWS_AS(KOperator(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("kframe_lower_bound examples") {
    const Frame onb(Matrix::Identity(3, 3));
    CHECK(kframe_lower_bound(onb, KOperator::identity(3)) == doctest::Approx(1.0).epsilon(1e-8));

    // Ψ = {0, e2, e2, e3, e3, e4, e4} against K = projection onto span{e2..e4}.
    const Frame psi = literal_frame(4, {0, 2, 2, 3, 3, 4, 4});
    const KOperator k(diag_projection(4, {2, 3, 4}));
    CHECK(std::abs(kframe_lower_bound(psi, k) - 2.0) <= 1e-8);

    // {e2, e3} is a K-frame for that K with bound 1 but not a frame.
    const Frame partial = literal_frame(4, {2, 3, 4});
    CHECK(frame_bounds(partial).lower == 0.0);
    CHECK(std::abs(kframe_lower_bound(partial, k) - 1.0) <= 1e-8);

    // Missing e3 direction: bound is 0.
    const Frame missing = literal_frame(4, {2, 4});
    CHECK(kframe_lower_bound(missing, k) == 0.0);
}

TEST_CASE("kframe_lower_bound errors") {
    const Frame onb(Matrix::Identity(3, 3));
    try {
        kframe_lower_bound(onb, KOperator(Matrix::Zero(3, 3)));
        FAIL("expected ZeroK");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroK);
    }
    try {
        kframe_lower_bound(onb, KOperator::identity(4));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("K = I gives the lower frame bound") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index d = uniform_int(rng, 1, 4);
        const Frame f = random_frame(rng, d, uniform_int(rng, d, 10));
        const double a = kframe_lower_bound(f, KOperator::identity(d));
        const double oracle = oracle_lambda_min(accumulate_frame_operator(f.vectors()));
        CHECK(close_rel(a, oracle, 1e-8));
    }
}

TEST_CASE("lower bound is feasible, slightly larger is not, and no sample beats it") {
    Rng rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index d = uniform_int(rng, 2, 5);
        const Frame f = random_frame(rng, d, uniform_int(rng, 1, 9));
        const KOperator k(random_k(rng, d, uniform_int(rng, 1, d)));
        const double a = kframe_lower_bound(f, k);
        const Matrix s = accumulate_frame_operator(f.vectors());
        const double eps = psd_tolerance(spectral_bounds(s).lambda_max);
        CHECK(lambda_min(Matrix(s - a * k.gram())) >= -eps);
        if (a > 0) CHECK(lambda_min(Matrix(s - a * (1 + 1e-6) * k.gram())) < -eps);
        // The optimal A is the infimum of ⟨Sf,f⟩/‖K*f‖².
        const double sampled = sampled_min_quotient(rng, s, k.matrix(), 2000);
        CHECK(a <= sampled * (1 + 1e-8) + 1e-12);
    }
}

TEST_CASE("augmenting the frame never lowers the K-frame bound") {
    Rng rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index d = uniform_int(rng, 2, 5);
        const Frame f = random_frame(rng, d, uniform_int(rng, 1, 6));
        const Frame g = random_frame(rng, d, uniform_int(rng, 1, 4));
        const KOperator k(random_k(rng, d, uniform_int(rng, 1, d)));
        const double before = kframe_lower_bound(f, k);
        const double after = kframe_lower_bound(concatenate(f, g), k);
        CHECK(after >= before * (1 - 1e-8) - 1e-12);
    }
}

TEST_CASE("bound scales as |c|^2 in the frame and 1/|c|^2 in K") {
    Rng rng(34);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::Index d = uniform_int(rng, 2, 5);
        const Frame f = random_frame(rng, d, d + 2);
        const Matrix km = random_k(rng, d, d);
        const double c = uniform_real(rng, 0.5, 3.0);
        const double a = kframe_lower_bound(f, KOperator(km));
        CHECK(close_rel(kframe_lower_bound(Frame(c * f.vectors()), KOperator(km)), c * c * a, 1e-7));
        CHECK(close_rel(kframe_lower_bound(f, KOperator(Matrix(c * km))), a / (c * c), 1e-7));
    }
}

TEST_CASE("is_kframe verdict and witness") {
    const KOperator k(diag_projection(4, {2, 3, 4}));
    const Frame good = literal_frame(4, {2, 3, 4});
    const auto pass = is_kframe(good, k, default_kframe_threshold(1.0));
    CHECK(pass.is_kframe);
    CHECK_FALSE(pass.witness.has_value());
    CHECK(pass.upper == doctest::Approx(1.0));

    const Frame bad = literal_frame(4, {1, 2, 4});
    const auto fail = is_kframe(bad, k, default_kframe_threshold(1.0));
    CHECK_FALSE(fail.is_kframe);
    REQUIRE(fail.witness.has_value());
    Vector e3 = Vector::Zero(4);
    e3(2) = 1.0;
    CHECK((*fail.witness - e3).norm() <= 1e-6);
}

TEST_CASE("witness is a unit vector with a real positive leading entry") {
    Rng rng(35);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index d = uniform_int(rng, 3, 6);
        // Fewer vectors than the rank of K: never a K-frame.
        const Frame f = random_frame(rng, d, d - 2);
        const KOperator k(random_k(rng, d, d));
        const auto report = is_kframe(f, k, 1e-6);
        CHECK_FALSE(report.is_kframe);
        REQUIRE(report.witness.has_value());
        const Vector& w = *report.witness;
        CHECK(std::abs(w.norm() - 1.0) <= 1e-12);
        Eigen::Index big = 0;
        w.cwiseAbs().maxCoeff(&big);
        CHECK(std::abs(w(big).imag()) <= 1e-12);
        CHECK(w(big).real() > 0);
        // ⟨Sw,w⟩ ≤ threshold·‖K*w‖² along the witness.
        CHECK(analysis_coefficients(f, w).squaredNorm() <= 1e-6 * k.sigma_max() * k.sigma_max() + 1e-12);
    }
}
