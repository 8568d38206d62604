#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fpdc {

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

// Dense order-3 tensor with dimensions (n, J, K), addressed as t(i, j, k).
//
// Unfolding convention (fixed once, matched to the Kronecker form of the
// Tucker3 reconstruction; property-tested in the suite):
//   mode 1:  n x (J*K),  column index  k*J + j
//   mode 2:  J x (n*K),  column index  k*n + i
//   mode 3:  K x (n*J),  column index  j*n + i
// Under this convention  T1 = U * C1 * (V kron B)^T  for a Tucker triple
// (U, B, V) with core C, and analogously for the other modes with the
// cyclic factor pairs (V,U) and (B,U).
template <class Scalar>
class Tensor3 {
public:
    Tensor3() : n_(0), j_(0), k_(0) {}

    Tensor3(Index n, Index j, Index k)
        : n_(n), j_(j), k_(k), data_(static_cast<std::size_t>(n * j * k), Scalar(0)) {
        if (n < 0 || j < 0 || k < 0)
            throw std::invalid_argument("Tensor3: negative dimension");
    }

    Index dim0() const { return n_; }
    Index dim1() const { return j_; }
    Index dim2() const { return k_; }
    Index size() const { return n_ * j_ * k_; }

    Scalar& operator()(Index i, Index j, Index k) { return data_[offset(i, j, k)]; }
    Scalar operator()(Index i, Index j, Index k) const { return data_[offset(i, j, k)]; }

    const std::vector<Scalar>& data() const { return data_; }

    Scalar squared_norm() const {
        Scalar acc(0);
        for (const Scalar& v : data_) acc += v * v;
        return acc;
    }

    Scalar norm() const { return std::sqrt(squared_norm()); }

    bool all_finite() const {
        for (const Scalar& v : data_)
            if (!std::isfinite(static_cast<double>(v))) return false;
        return true;
    }

private:
    std::size_t offset(Index i, Index j, Index k) const {
        return static_cast<std::size_t>(i + n_ * (j + j_ * k));
    }

    Index n_, j_, k_;
    std::vector<Scalar> data_;
};

// Mode-n matricization under the convention documented on Tensor3.
template <class Scalar>
Matrix<Scalar> unfold(const Tensor3<Scalar>& t, int mode) {
    const Index n = t.dim0(), j = t.dim1(), k = t.dim2();
    switch (mode) {
        case 1: {
            Matrix<Scalar> m(n, j * k);
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) m(ii, kk * j + jj) = t(ii, jj, kk);
            return m;
        }
        case 2: {
            Matrix<Scalar> m(j, n * k);
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) m(jj, kk * n + ii) = t(ii, jj, kk);
            return m;
        }
        case 3: {
            Matrix<Scalar> m(k, n * j);
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) m(kk, jj * n + ii) = t(ii, jj, kk);
            return m;
        }
        default:
            throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
    }
}

// Inverse of unfold: rebuilds an (n, j, k) tensor from its mode-n matricization.
template <class Scalar>
Tensor3<Scalar> refold(const Matrix<Scalar>& m, int mode, Index n, Index j, Index k) {
    Tensor3<Scalar> t(n, j, k);
    switch (mode) {
        case 1:
            if (m.rows() != n || m.cols() != j * k)
                throw std::invalid_argument("refold: shape mismatch for mode 1");
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) t(ii, jj, kk) = m(ii, kk * j + jj);
            return t;
        case 2:
            if (m.rows() != j || m.cols() != n * k)
                throw std::invalid_argument("refold: shape mismatch for mode 2");
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) t(ii, jj, kk) = m(jj, kk * n + ii);
            return t;
        case 3:
            if (m.rows() != k || m.cols() != n * j)
                throw std::invalid_argument("refold: shape mismatch for mode 3");
            for (Index kk = 0; kk < k; ++kk)
                for (Index jj = 0; jj < j; ++jj)
                    for (Index ii = 0; ii < n; ++ii) t(ii, jj, kk) = m(kk, jj * n + ii);
            return t;
        default:
            throw std::invalid_argument("refold: mode must be 1, 2 or 3");
    }
}

// Mode-n product: contracts the mode-n fiber dimension of t with a.cols(),
// i.e. result has a.rows() in place of the mode-n dimension.
template <class Scalar>
Tensor3<Scalar> mode_product(const Tensor3<Scalar>& t, const Matrix<Scalar>& a, int mode) {
    const Index n = t.dim0(), j = t.dim1(), k = t.dim2();
    switch (mode) {
        case 1:
            if (a.cols() != n) throw std::invalid_argument("mode_product: mode-1 size mismatch");
            return refold<Scalar>(a * unfold(t, 1), 1, a.rows(), j, k);
        case 2:
            if (a.cols() != j) throw std::invalid_argument("mode_product: mode-2 size mismatch");
            return refold<Scalar>(a * unfold(t, 2), 2, n, a.rows(), k);
        case 3:
            if (a.cols() != k) throw std::invalid_argument("mode_product: mode-3 size mismatch");
            return refold<Scalar>(a * unfold(t, 3), 3, n, j, a.rows());
        default:
            throw std::invalid_argument("mode_product: mode must be 1, 2 or 3");
    }
}

// Orthonormal basis of the dominant rank-r left singular subspace of m.
// Column signs are fixed so the first largest-magnitude entry of each
// column is positive, which removes the SVD sign ambiguity.
template <class Derived>
Matrix<typename Derived::Scalar> truncated_basis(const Eigen::MatrixBase<Derived>& m, Index r) {
    using Scalar = typename Derived::Scalar;
    if (r < 1 || r > std::min(m.rows(), m.cols()))
        throw std::invalid_argument("truncated_basis: rank out of range");
    if (!m.allFinite())
        throw std::invalid_argument("truncated_basis: non-finite input");

    Eigen::BDCSVD<Matrix<Scalar>> svd(m, Eigen::ComputeThinU);
    Matrix<Scalar> basis = svd.matrixU().leftCols(r);
    for (Index c = 0; c < basis.cols(); ++c) {
        Index imax = 0;
        basis.col(c).cwiseAbs().maxCoeff(&imax);
        if (basis(imax, c) < Scalar(0)) basis.col(c) = -basis.col(c);
    }
    return basis;
}

// Standard Kronecker product, shape (a.rows*b.rows) x (a.cols*b.cols).
template <class DerivedA, class DerivedB>
Matrix<typename DerivedA::Scalar> kronecker(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b) {
    using Scalar = typename DerivedA::Scalar;
    Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace fpdc
