#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/random.hpp"

namespace fpdc {

enum class TuckerInit { hosvd, random };

template <class Scalar>
struct TuckerConfig {
    Index r = 1;  // components along units
    Index q = 1;  // components along variables
    Index s = 1;  // components along clusters
    int max_sweeps = 200;
    Scalar fit_tolerance = Scalar(1e-8);
    TuckerInit init = TuckerInit::hosvd;
    std::uint64_t seed = 0;
};

template <class Scalar>
struct TuckerFactors {
    Matrix<Scalar> u;      // n x R, orthonormal columns
    Matrix<Scalar> b;      // J x Q, orthonormal columns
    Matrix<Scalar> v;      // K x S, orthonormal columns
    Tensor3<Scalar> core;  // R x Q x S
    Scalar explained_fraction = Scalar(0);
    int sweeps = 0;
    std::vector<Scalar> fit_trace;  // explained fraction after each sweep
};

// Per-variable unit-to-center absolute distances g(i,j,k) = |x_ij - c_kj|.
template <class DerivedX, class DerivedC>
Tensor3<typename DerivedX::Scalar> distance_tensor(const Eigen::MatrixBase<DerivedX>& x,
                                                   const Eigen::MatrixBase<DerivedC>& c) {
    using Scalar = typename DerivedX::Scalar;
    if (x.cols() != c.cols())
        throw std::invalid_argument("distance_tensor: x and c must have the same number of columns");
    Tensor3<Scalar> g(x.rows(), x.cols(), c.rows());
    for (Index k = 0; k < c.rows(); ++k)
        for (Index j = 0; j < x.cols(); ++j)
            for (Index i = 0; i < x.rows(); ++i)
                g(i, j, k) = std::abs(x(i, j) - c(k, j));
    return g;
}

namespace detail {

template <class Scalar>
Tensor3<Scalar> core_from_factors(const Tensor3<Scalar>& g, const Matrix<Scalar>& u,
                                  const Matrix<Scalar>& b, const Matrix<Scalar>& v) {
    Tensor3<Scalar> t = mode_product<Scalar>(g, u.transpose(), 1);
    t = mode_product<Scalar>(t, b.transpose(), 2);
    return mode_product<Scalar>(t, v.transpose(), 3);
}

template <class Scalar>
Matrix<Scalar> random_orthonormal(Index rows, Index cols, Rng& rng) {
    Matrix<Scalar> m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = static_cast<Scalar>(rng.normal());
    Eigen::HouseholderQR<Matrix<Scalar>> qr(m);
    return Matrix<Scalar>(qr.householderQ()).leftCols(cols);
}

}  // namespace detail

// Tucker3 reconstruction of g from its factors.
template <class Scalar>
Tensor3<Scalar> tucker_reconstruction(const TuckerFactors<Scalar>& f) {
    Tensor3<Scalar> t = mode_product<Scalar>(f.core, f.u, 1);
    t = mode_product<Scalar>(t, f.b, 2);
    return mode_product<Scalar>(t, f.v, 3);
}

// Fraction of the tensor's squared norm captured by the decomposition,
// 1 - |G - reconstruction|^2 / |G|^2, clamped to [0, 1]. A zero tensor is
// fit perfectly by anything, so the fraction is defined as 1.
template <class Scalar>
Scalar explained_variability(const TuckerFactors<Scalar>& f, const Tensor3<Scalar>& g) {
    const Scalar g_sq = g.squared_norm();
    if (g_sq == Scalar(0)) return Scalar(1);
    const Tensor3<Scalar> rec = tucker_reconstruction(f);
    if (rec.dim0() != g.dim0() || rec.dim1() != g.dim1() || rec.dim2() != g.dim2())
        throw std::invalid_argument("explained_variability: shape mismatch");
    Scalar err(0);
    for (Index k = 0; k < g.dim2(); ++k)
        for (Index j = 0; j < g.dim1(); ++j)
            for (Index i = 0; i < g.dim0(); ++i) {
                const Scalar e = g(i, j, k) - rec(i, j, k);
                err += e * e;
            }
    const Scalar fraction = Scalar(1) - err / g_sq;
    return std::clamp(fraction, Scalar(0), Scalar(1));
}

// Tucker3 by higher-order orthogonal iteration, starting from explicitly
// provided factor matrices. Each sweep refreshes U, B, V in turn from the
// dominant subspace of the tensor contracted with the other two factors;
// the core and the explained fraction are recomputed after every sweep.
// Because the factors are orthonormal, the fit equals |core|^2 / |G|^2 and
// is nondecreasing across sweeps.
template <class Scalar>
TuckerFactors<Scalar> tucker3_from_factors(const Tensor3<Scalar>& g, Matrix<Scalar> u,
                                           Matrix<Scalar> b, Matrix<Scalar> v,
                                           const TuckerConfig<Scalar>& cfg) {
    TuckerFactors<Scalar> f;
    const Scalar g_sq = g.squared_norm();

    Scalar fit = Scalar(0);
    std::vector<Scalar> fit_trace;
    int sweep = 0;
    while (sweep < cfg.max_sweeps) {
        ++sweep;
        {
            Tensor3<Scalar> w = mode_product<Scalar>(g, Matrix<Scalar>(b.transpose()), 2);
            w = mode_product<Scalar>(w, Matrix<Scalar>(v.transpose()), 3);
            u = truncated_basis(unfold(w, 1), cfg.r);
        }
        {
            Tensor3<Scalar> w = mode_product<Scalar>(g, Matrix<Scalar>(u.transpose()), 1);
            w = mode_product<Scalar>(w, Matrix<Scalar>(v.transpose()), 3);
            b = truncated_basis(unfold(w, 2), cfg.q);
        }
        {
            Tensor3<Scalar> w = mode_product<Scalar>(g, Matrix<Scalar>(u.transpose()), 1);
            w = mode_product<Scalar>(w, Matrix<Scalar>(b.transpose()), 2);
            v = truncated_basis(unfold(w, 3), cfg.s);
        }
        const Tensor3<Scalar> core = detail::core_from_factors(g, u, b, v);
        const Scalar new_fit = g_sq > Scalar(0) ? core.squared_norm() / g_sq : Scalar(1);
        fit_trace.push_back(new_fit);
        const Scalar improvement = new_fit - fit;
        fit = new_fit;
        if (sweep > 1 && improvement < cfg.fit_tolerance) break;
    }

    f.u = std::move(u);
    f.b = std::move(b);
    f.v = std::move(v);
    f.core = detail::core_from_factors(g, f.u, f.b, f.v);
    f.explained_fraction = std::clamp(g_sq > Scalar(0) ? f.core.squared_norm() / g_sq : Scalar(1),
                                      Scalar(0), Scalar(1));
    f.sweeps = sweep;
    f.fit_trace = std::move(fit_trace);
    return f;
}

// Tucker3 decomposition with HOSVD initialization (default) or a seeded
// random orthonormal start.
template <class Scalar>
TuckerFactors<Scalar> tucker3(const Tensor3<Scalar>& g, const TuckerConfig<Scalar>& cfg) {
    if (cfg.r < 1 || cfg.r > g.dim0() || cfg.q < 1 || cfg.q > g.dim1() || cfg.s < 1 ||
        cfg.s > g.dim2())
        throw std::invalid_argument("tucker3: rank exceeds dimension");
    if (!g.all_finite()) throw std::invalid_argument("tucker3: non-finite tensor");

    Matrix<Scalar> u, b, v;
    if (cfg.init == TuckerInit::random) {
        Rng rng(cfg.seed);
        u = detail::random_orthonormal<Scalar>(g.dim0(), cfg.r, rng);
        b = detail::random_orthonormal<Scalar>(g.dim1(), cfg.q, rng);
        v = detail::random_orthonormal<Scalar>(g.dim2(), cfg.s, rng);
    } else {
        u = truncated_basis(unfold(g, 1), cfg.r);
        b = truncated_basis(unfold(g, 2), cfg.q);
        v = truncated_basis(unfold(g, 3), cfg.s);
    }
    return tucker3_from_factors(g, std::move(u), std::move(b), std::move(v), cfg);
}

// Rank defaults used when only the cluster count is pinned down: Q = K-1
// clamped to [1, J], S = min(K, Q), R = min(n, Q*S).
template <class Scalar>
TuckerConfig<Scalar> default_tucker_config(Index n, Index j, Index k) {
    TuckerConfig<Scalar> cfg;
    cfg.q = std::clamp<Index>(k - 1, 1, j);
    cfg.s = std::min(k, cfg.q);
    cfg.r = std::min(n, cfg.q * cfg.s);
    return cfg;
}

}  // namespace fpdc
