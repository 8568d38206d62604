#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fpdc/core_linalg.hpp"
#include "fpdc/random.hpp"

using fpdc::Index;
using fpdc::MatrixXd;
using fpdc::Tensor3;

namespace {

Tensor3<double> random_tensor(Index n, Index j, Index k, std::uint64_t seed) {
    fpdc::Rng rng(seed);
    Tensor3<double> t(n, j, k);
    for (Index c = 0; c < k; ++c)
        for (Index b = 0; b < j; ++b)
            for (Index a = 0; a < n; ++a) t(a, b, c) = rng.normal();
    return t;
}

MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
    fpdc::Rng rng(seed);
    MatrixXd m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
    return m;
}

}  // namespace

TEST_CASE("tensor storage is dense, indexed, and norm-aware") {
    Tensor3<double> t(2, 3, 2);
    CHECK(t.dim0() == 2);
    CHECK(t.dim1() == 3);
    CHECK(t.dim2() == 2);
    CHECK(t.size() == 12);
    for (Index i = 0; i < t.size(); ++i) CHECK(t.data()[i] == 0.0);
    t(1, 2, 0) = 3.0;
    t(0, 0, 1) = -4.0;
    CHECK(t.squared_norm() == doctest::Approx(25.0));
    CHECK(t.norm() == doctest::Approx(5.0));
    CHECK(t.all_finite());
    t(0, 1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK(!t.all_finite());
}

TEST_CASE("mode-1 unfolding follows the documented column order") {
    // t(i, j, k) = 4 i + 2 j + k on a 2 x 2 x 2 grid.
    Tensor3<double> t(2, 2, 2);
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j)
            for (Index k = 0; k < 2; ++k) t(i, j, k) = double(4 * i + 2 * j + k);
    const MatrixXd m1 = fpdc::unfold(t, 1);
    REQUIRE(m1.rows() == 2);
    REQUIRE(m1.cols() == 4);
    // Columns iterate k outer, j inner: (j,k) = (0,0), (1,0), (0,1), (1,1).
    MatrixXd expected(2, 4);
    expected << 0, 2, 1, 3,
                4, 6, 5, 7;
    CHECK((m1 - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("all three unfoldings place entries where the conventions say") {
    Tensor3<double> t(2, 3, 2);
    t(1, 2, 0) = 5.0;
    const MatrixXd m1 = fpdc::unfold(t, 1);
    REQUIRE(m1.rows() == 2);
    REQUIRE(m1.cols() == 6);
    CHECK(m1(1, 2) == 5.0);  // column k * J + j = 0 * 3 + 2
    const MatrixXd m2 = fpdc::unfold(t, 2);
    REQUIRE(m2.rows() == 3);
    REQUIRE(m2.cols() == 4);
    CHECK(m2(2, 1) == 5.0);  // column k * n + i = 0 * 2 + 1
    const MatrixXd m3 = fpdc::unfold(t, 3);
    REQUIRE(m3.rows() == 2);
    REQUIRE(m3.cols() == 6);
    CHECK(m3(0, 5) == 5.0);  // column j * n + i = 2 * 2 + 1
    CHECK(m1.squaredNorm() == doctest::Approx(t.squared_norm()));
    CHECK(m2.squaredNorm() == doctest::Approx(t.squared_norm()));
    CHECK(m3.squaredNorm() == doctest::Approx(t.squared_norm()));
}

TEST_CASE("refold inverts unfold in every mode") {
    const Tensor3<double> t = random_tensor(3, 4, 2, 7);
    for (int mode = 1; mode <= 3; ++mode) {
        const Tensor3<double> back = fpdc::refold(fpdc::unfold(t, mode), mode, 3, 4, 2);
        REQUIRE(back.size() == t.size());
        double max_diff = 0.0;
        for (Index i = 0; i < t.size(); ++i)
            max_diff = std::max(max_diff, std::abs(back.data()[i] - t.data()[i]));
        CHECK(max_diff == 0.0);
    }
}

TEST_CASE("mode products contract the chosen mode") {
    const Tensor3<double> t = random_tensor(3, 4, 2, 11);
    const MatrixXd a = random_matrix(5, 3, 1);
    const Tensor3<double> r = fpdc::mode_product(t, a, 1);
    CHECK(r.dim0() == 5);
    CHECK(r.dim1() == 4);
    CHECK(r.dim2() == 2);
    // Contracting mode 1 is left-multiplying the mode-1 unfolding.
    const MatrixXd direct = a * fpdc::unfold(t, 1);
    CHECK((fpdc::unfold(r, 1) - direct).cwiseAbs().maxCoeff() < 1e-12);

    const MatrixXd b = random_matrix(2, 4, 2);
    const Tensor3<double> r2 = fpdc::mode_product(t, b, 2);
    CHECK(r2.dim1() == 2);
    CHECK((fpdc::unfold(r2, 2) - b * fpdc::unfold(t, 2)).cwiseAbs().maxCoeff() < 1e-12);

    const MatrixXd c = random_matrix(4, 2, 3);
    const Tensor3<double> r3 = fpdc::mode_product(t, c, 3);
    CHECK(r3.dim2() == 4);
    CHECK((fpdc::unfold(r3, 3) - c * fpdc::unfold(t, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncated basis keeps the loudest directions of a diagonal matrix") {
    MatrixXd m = MatrixXd::Zero(3, 3);
    m(0, 0) = 3.0;
    m(1, 1) = 2.0;
    m(2, 2) = 1.0;
    const MatrixXd basis = fpdc::truncated_basis(m, 2);
    REQUIRE(basis.rows() == 3);
    REQUIRE(basis.cols() == 2);
    MatrixXd expected(3, 2);
    expected << 1, 0,
                0, 1,
                0, 0;
    CHECK((basis - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("truncated basis recovers the left factor of a rank-one matrix") {
    fpdc::Vector<double> u(3);
    u << 0.6, -0.8, 0.0;
    fpdc::Vector<double> v(4);
    v << 1.0, 2.0, -1.0, 0.5;
    const MatrixXd m = u * v.transpose();
    const MatrixXd basis = fpdc::truncated_basis(m, 1);
    REQUIRE(basis.cols() == 1);
    CHECK(std::abs(std::abs(basis.col(0).dot(u)) - 1.0) < 1e-12);
    // Sign convention: the entry of largest magnitude is positive.
    Index at = 0;
    basis.col(0).cwiseAbs().maxCoeff(&at);
    CHECK(basis(at, 0) > 0.0);
}

TEST_CASE("basis columns are orthonormal and span full-rank input exactly") {
    const MatrixXd m = random_matrix(8, 5, 21);
    const MatrixXd basis = fpdc::truncated_basis(m, 3);
    const MatrixXd gram = basis.transpose() * basis;
    CHECK((gram - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    const MatrixXd full = fpdc::truncated_basis(m, 5);
    const MatrixXd projected = full * (full.transpose() * m);
    CHECK((projected - m).norm() / m.norm() < 1e-10);
}

TEST_CASE("truncated basis rejects bad ranks and non-finite input") {
    const MatrixXd m = random_matrix(4, 3, 5);
    CHECK_THROWS_AS((void)fpdc::truncated_basis(m, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::truncated_basis(m, 4), std::invalid_argument);
    MatrixXd bad = m;
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS((void)fpdc::truncated_basis(bad, 2), std::invalid_argument);
}

TEST_CASE("kronecker product has the block-of-scaled-copies layout") {
    MatrixXd a(2, 2);
    a << 1, 2,
         3, 4;
    MatrixXd b(2, 2);
    b << 0, 1,
         1, 0;
    const MatrixXd k = fpdc::kronecker(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 4);
    MatrixXd expected(4, 4);
    expected << 0, 1, 0, 2,
                1, 0, 2, 0,
                0, 3, 0, 4,
                3, 0, 4, 0;
    CHECK((k - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kronecker of identities is the larger identity") {
    const MatrixXd k = fpdc::kronecker(MatrixXd::Identity(2, 2), MatrixXd::Identity(3, 3));
    CHECK((k - MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("kronecker norms multiply") {
    const MatrixXd a = random_matrix(3, 2, 31);
    const MatrixXd b = random_matrix(2, 4, 32);
    const MatrixXd k = fpdc::kronecker(a, b);
    CHECK(k.norm() == doctest::Approx(a.norm() * b.norm()).epsilon(1e-10));
    CHECK(fpdc::kronecker(MatrixXd::Constant(1, 1, 2.5), b)
              .isApprox(MatrixXd(2.5 * b), 1e-14));
}
