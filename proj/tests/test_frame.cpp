#include "doctest.h"
#include "support.hpp"

using namespace kweave;
using namespace kweave::testing;

TEST_CASE("frame_operator examples") {
    CHECK(frame_operator(Frame(Matrix::Identity(3, 3))).isApprox(Matrix::Identity(3, 3)));

    const Frame f = literal_frame(2, {1, 2, 1});
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = 2.0;
    expected(1, 1) = 1.0;
    CHECK((frame_operator(f) - expected).norm() == 0.0);

    // Ψ = {0, e2, e2, e3, e3, e4, e4} in C^4.
    const Frame psi = literal_frame(4, {0, 2, 2, 3, 3, 4, 4});
    const Matrix s = frame_operator(psi);
    CHECK((s - accumulate_frame_operator(psi.vectors())).norm() == 0.0);
    CHECK((s - 2.0 * diag_projection(4, {2, 3, 4})).norm() == 0.0);
}

TEST_CASE("frame_bounds examples") {
    const auto onb = frame_bounds(Frame(Matrix::Identity(3, 3)));
    CHECK(onb.lower == doctest::Approx(1.0));
    CHECK(onb.upper == doctest::Approx(1.0));

    const auto b = frame_bounds(literal_frame(2, {1, 2, 1}));
    CHECK(b.lower == doctest::Approx(1.0));
    CHECK(b.upper == doctest::Approx(2.0));

    const auto deficient = frame_bounds(literal_frame(3, {2, 3}));
    CHECK(deficient.lower == 0.0);
    CHECK(deficient.upper == doctest::Approx(1.0));
    CHECK_FALSE(is_frame(deficient));
}

TEST_CASE("zero columns are allowed and contribute nothing") {
    const Frame with_zero = literal_frame(3, {1, 0, 2, 0, 3});
    CHECK(frame_operator(with_zero).isApprox(Matrix::Identity(3, 3)));
    CHECK_THROWS_AS(Frame(Matrix(0, 3)), Error);
}

TEST_CASE("analysis and synthesis") {
    const Frame onb(Matrix::Identity(3, 3));
    Vector e2 = Vector::Zero(3);
    e2(1) = 1.0;
    CHECK(analysis_coefficients(onb, e2).isApprox(e2));
    CHECK(analysis_coefficients(onb, Vector::Zero(3)).isZero(0.0));
    CHECK(synthesis(onb, e2).isApprox(e2));
    CHECK(synthesis(onb, Vector::Zero(3)).isZero(0.0));

    try {
        analysis_coefficients(onb, Vector::Zero(4));
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    CHECK_THROWS_AS(synthesis(onb, Vector::Zero(2)), Error);
}

TEST_CASE("quadratic form and S = T T* identities") {
    Rng rng(21);
    const Frame f = random_frame(rng, 4, 9);
    const Matrix s = frame_operator(f);
    for (int trial = 0; trial < 100; ++trial) {
        const Vector v = random_vector(rng, 4);
        const double energy = analysis_coefficients(f, v).squaredNorm();
        const double form = v.dot(s * v).real();
        CHECK(close_rel(energy, form, 1e-9));
        CHECK((synthesis(f, analysis_coefficients(f, v)) - s * v).norm() <= 1e-10 * (1.0 + (s * v).norm()));
    }
}

TEST_CASE("frame operator is Hermitian PSD and bounds scale by |c|^2") {
    Rng rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const Eigen::Index d = uniform_int(rng, 1, 6);
        const Frame f = random_frame(rng, d, uniform_int(rng, 1, 12));
        const auto spectrum = spectral_bounds(frame_operator(f));
        CHECK(spectrum.lambda_min >= -1e-9 * (1.0 + spectrum.lambda_max));

        const Complex c(uniform_real(rng, -3, 3), uniform_real(rng, -3, 3));
        const auto a = frame_bounds(f);
        const auto b = frame_bounds(Frame(c * f.vectors()));
        CHECK(close_rel(b.upper, std::norm(c) * a.upper, 1e-9));
        if (a.lower > 0) CHECK(close_rel(b.lower, std::norm(c) * a.lower, 1e-9));
    }
}

TEST_CASE("concatenation adds frame operators") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame a = random_frame(rng, 4, 5);
        const Frame b = random_frame(rng, 4, 3);
        const Matrix lhs = frame_operator(concatenate(a, b));
        const Matrix rhs = frame_operator(a) + frame_operator(b);
        CHECK(max_abs_entry(lhs - rhs) <= 1e-12 * (1.0 + max_abs_entry(lhs)));
    }
}
