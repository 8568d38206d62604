#pragma once

// Synthetic benchmark data: Gaussian clusters pushed through an
// equicorrelation transform, with an optional fraction of each cluster
// shifted far away along a direction orthogonal to the all-ones diagonal.
// Also provides the chi-square quantile used to derive the minimum
// admissible shift radius.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/random.hpp"

namespace fpdc {

// Regularized lower incomplete gamma function P(a, x), evaluated with the
// power series for x < a + 1 and the Lentz continued fraction otherwise.
template <class Scalar>
Scalar regularized_gamma_p(Scalar a, Scalar x) {
    if (!(a > Scalar(0)) || !std::isfinite(a) || !std::isfinite(x) || x < Scalar(0))
        throw std::invalid_argument("regularized_gamma_p: need a > 0 and x >= 0");
    if (x == Scalar(0)) return Scalar(0);
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar log_prefix = -x + a * std::log(x) - std::lgamma(a);
    if (x < a + Scalar(1)) {
        Scalar term = Scalar(1) / a;
        Scalar sum = term;
        for (int n = 1; n < 10000; ++n) {
            term *= x / (a + Scalar(n));
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps) break;
        }
        const Scalar p = sum * std::exp(log_prefix);
        return p < Scalar(1) ? p : Scalar(1);
    }
    // Continued fraction for Q(a, x) = 1 - P(a, x).
    const Scalar tiny = std::numeric_limits<Scalar>::min() / eps;
    Scalar b = x + Scalar(1) - a;
    Scalar c = Scalar(1) / tiny;
    Scalar d = Scalar(1) / b;
    Scalar h = d;
    for (int i = 1; i < 10000; ++i) {
        const Scalar an = -Scalar(i) * (Scalar(i) - a);
        b += Scalar(2);
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = Scalar(1) / d;
        const Scalar del = d * c;
        h *= del;
        if (std::abs(del - Scalar(1)) < eps) break;
    }
    const Scalar q = std::exp(log_prefix) * h;
    const Scalar p = Scalar(1) - q;
    return p > Scalar(0) ? (p < Scalar(1) ? p : Scalar(1)) : Scalar(0);
}

// Quantile of the chi-square distribution with df degrees of freedom:
// the t with P(chi2_df <= t) = p.  Solved by bisection on the regularized
// incomplete gamma function; accurate to close to machine precision.
template <class Scalar>
Scalar chi_square_quantile(Index df, Scalar p) {
    if (df < 1) throw std::invalid_argument("chi_square_quantile: df must be positive");
    if (!(p >= Scalar(0)) || !(p < Scalar(1)))
        throw std::invalid_argument("chi_square_quantile: p must lie in [0, 1)");
    if (p == Scalar(0)) return Scalar(0);
    const Scalar a = Scalar(df) / Scalar(2);
    Scalar hi = Scalar(df > 2 ? double(df) : 2.0);
    for (int i = 0; i < 2000 && regularized_gamma_p(a, hi / Scalar(2)) < p; ++i) hi *= Scalar(2);
    Scalar lo = Scalar(0);
    for (int i = 0; i < 400; ++i) {
        const Scalar mid = (lo + hi) / Scalar(2);
        if (mid <= lo || mid >= hi) break;
        if (regularized_gamma_p(a, mid / Scalar(2)) < p)
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / Scalar(2);
}

// Smallest admissible shift radius for contaminated points: scaled so that
// with radius >= this value the shifted points lie outside the
// (1 - alpha) chi-square ball of their parent cluster.
template <class Scalar>
Scalar minimum_shift_radius(Index j, Scalar alpha,
                            Scalar slack = Scalar(1.2), Scalar base = Scalar(1)) {
    if (j < 1) throw std::invalid_argument("minimum_shift_radius: j must be positive");
    if (!(alpha > Scalar(0)) || !(alpha < Scalar(1)))
        throw std::invalid_argument("minimum_shift_radius: alpha must lie in (0, 1)");
    return (slack + base) *
           std::sqrt(chi_square_quantile<Scalar>(j, Scalar(1) - alpha) / Scalar(j));
}

template <class Scalar>
struct MzConfig {
    Index k = 4;                 // number of clusters
    Index n_per_cluster = 100;   // points per cluster (shifted ones included)
    Index j = 7;                 // variables; must be >= 2
    Scalar rho = Scalar(0.5);    // common correlation of the mixing transform
    Scalar epsilon = Scalar(0.2);  // fraction of each cluster shifted away
    Scalar r = Scalar(4);        // shift radius multiplier
    Scalar sphere_radius = Scalar(6);  // centers lie on a sphere of this radius
    Scalar alpha = Scalar(0.01);  // tail mass for the minimum-radius rule
    bool enforce_min_radius = true;  // reject r below the admissible minimum
    std::uint64_t seed = 0;
};

template <class Scalar>
struct LabeledDataset {
    Matrix<Scalar> x;            // n x j data matrix
    std::vector<int> labels;     // 1-based cluster of origin, one per row
    std::vector<char> outlier;   // 1 where the row was shifted away
    Matrix<Scalar> centers;      // true cluster centers, k x j
    Scalar min_radius = Scalar(0);  // admissible minimum for cfg.r (0 when unused)
};

namespace detail {

// Unit vector drawn uniformly on the sphere.
template <class Scalar>
Vector<Scalar> random_unit_vector(Index j, Rng& rng) {
    Vector<Scalar> v(j);
    for (int tries = 0; tries < 64; ++tries) {
        for (Index c = 0; c < j; ++c) v(c) = Scalar(rng.normal());
        const Scalar norm = v.norm();
        if (norm > Scalar(1e-12)) return v / norm;
    }
    throw std::runtime_error("random_unit_vector: degenerate draw");
}

// Unit vector orthogonal to the all-ones direction.
template <class Scalar>
Vector<Scalar> random_unit_orthogonal_to_ones(Index j, Rng& rng) {
    const Vector<Scalar> u = Vector<Scalar>::Constant(j, Scalar(1) / std::sqrt(Scalar(j)));
    for (int tries = 0; tries < 64; ++tries) {
        Vector<Scalar> v(j);
        for (Index c = 0; c < j; ++c) v(c) = Scalar(rng.normal());
        v -= u.dot(v) * u;
        const Scalar norm = v.norm();
        if (norm > Scalar(1e-12)) return v / norm;
    }
    throw std::runtime_error("random_unit_orthogonal_to_ones: degenerate draw");
}

}  // namespace detail

// Draw a labeled dataset of cfg.k clusters with cfg.n_per_cluster points
// each.  Cluster centers are placed uniformly on the sphere of radius
// cfg.sphere_radius.  A point is center + S z with z standard normal and
// S = (1 - rho) I + rho 11'; a shifted point additionally moves by
// r sqrt(j) a0, where a0 is one unit vector per dataset orthogonal to the
// all-ones direction.  The count of shifted points per cluster is
// epsilon * n_per_cluster rounded half to even.  Rows are shuffled at the
// end so cluster membership is not encoded in row order; the labels and
// shift flags travel with their rows.
template <class Scalar>
LabeledDataset<Scalar> generate_mz(const MzConfig<Scalar>& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("generate_mz: k must be positive");
    if (cfg.n_per_cluster < 1)
        throw std::invalid_argument("generate_mz: n_per_cluster must be positive");
    if (cfg.j < 2) throw std::invalid_argument("generate_mz: j must be at least 2");
    if (!(cfg.rho >= Scalar(0)) || !(cfg.rho < Scalar(1)))
        throw std::invalid_argument("generate_mz: rho must lie in [0, 1)");
    if (!(cfg.epsilon >= Scalar(0)) || !(cfg.epsilon < Scalar(1)))
        throw std::invalid_argument("generate_mz: epsilon must lie in [0, 1)");
    if (!(cfg.sphere_radius >= Scalar(0)))
        throw std::invalid_argument("generate_mz: sphere_radius must be nonnegative");

    const Index shifted_per_cluster =
        Index(std::nearbyint(double(cfg.epsilon) * double(cfg.n_per_cluster)));

    LabeledDataset<Scalar> data;
    if (shifted_per_cluster > 0) {
        data.min_radius = minimum_shift_radius<Scalar>(cfg.j, cfg.alpha);
        if (cfg.enforce_min_radius && cfg.r < data.min_radius)
            throw std::invalid_argument(
                "generate_mz: shift radius below the admissible minimum");
    }

    Rng rng(cfg.seed);
    const Index n = cfg.k * cfg.n_per_cluster;

    Matrix<Scalar> mix = Matrix<Scalar>::Constant(cfg.j, cfg.j, cfg.rho);
    mix.diagonal().setConstant(Scalar(1));  // off-diagonals stay rho

    data.centers.resize(cfg.k, cfg.j);
    for (Index k = 0; k < cfg.k; ++k)
        data.centers.row(k) =
            (cfg.sphere_radius * detail::random_unit_vector<Scalar>(cfg.j, rng)).transpose();

    const Vector<Scalar> a0 = detail::random_unit_orthogonal_to_ones<Scalar>(cfg.j, rng);
    const Vector<Scalar> shift = cfg.r * std::sqrt(Scalar(cfg.j)) * a0;

    data.x.resize(n, cfg.j);
    data.labels.resize(std::size_t(n));
    data.outlier.assign(std::size_t(n), 0);

    Index row = 0;
    Vector<Scalar> z(cfg.j);
    for (Index k = 0; k < cfg.k; ++k) {
        for (Index i = 0; i < cfg.n_per_cluster; ++i, ++row) {
            for (Index c = 0; c < cfg.j; ++c) z(c) = Scalar(rng.normal());
            Vector<Scalar> point = data.centers.row(k).transpose() + mix * z;
            const bool shifted = i >= cfg.n_per_cluster - shifted_per_cluster;
            if (shifted) point += shift;
            data.x.row(row) = point.transpose();
            data.labels[std::size_t(row)] = int(k) + 1;
            data.outlier[std::size_t(row)] = shifted ? 1 : 0;
        }
    }

    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    Matrix<Scalar> x(n, cfg.j);
    std::vector<int> labels(static_cast<std::size_t>(n));
    std::vector<char> outlier(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        const std::size_t src = order[std::size_t(i)];
        x.row(i) = data.x.row(Index(src));
        labels[std::size_t(i)] = data.labels[src];
        outlier[std::size_t(i)] = data.outlier[src];
    }
    data.x = std::move(x);
    data.labels = std::move(labels);
    data.outlier = std::move(outlier);
    return data;
}

// Benchmark presets.
template <class Scalar>
MzConfig<Scalar> mz_paper_config(std::uint64_t seed = 0) {
    MzConfig<Scalar> cfg;
    cfg.seed = seed;
    return cfg;  // k=4, n=100 per cluster, j=7, rho=0.5, epsilon=0.2, r=4
}

// Clusters of unequal sizes with independent normal coordinates.
template <class Scalar>
struct IndependentConfig {
    std::vector<Index> sizes;  // points per cluster
    Matrix<Scalar> means;      // one row per cluster
    std::vector<Scalar> sds;   // isotropic standard deviation per cluster
    std::uint64_t seed = 0;
};

// Four unequal clusters totaling 450 points in two independent variables.
template <class Scalar>
IndependentConfig<Scalar> independent_config(std::uint64_t seed = 0) {
    IndependentConfig<Scalar> cfg;
    cfg.sizes = {150, 120, 100, 80};
    cfg.means.resize(4, 2);
    cfg.means << Scalar(0), Scalar(0),
                 Scalar(5), Scalar(1),
                 Scalar(1), Scalar(5),
                 Scalar(6), Scalar(6);
    cfg.sds = {Scalar(1), Scalar(1), Scalar(1), Scalar(1)};
    cfg.seed = seed;
    return cfg;
}

// Draw independent normal coordinates around each cluster mean.  Rows are
// ordered by cluster; labels are 1-based; no point is marked as shifted.
template <class Scalar>
LabeledDataset<Scalar> generate_independent(const IndependentConfig<Scalar>& cfg) {
    const Index k = Index(cfg.sizes.size());
    if (k < 1)
        throw std::invalid_argument("generate_independent: need at least one cluster");
    if (cfg.means.rows() != k)
        throw std::invalid_argument(
            "generate_independent: one mean row per cluster required");
    if (Index(cfg.sds.size()) != k)
        throw std::invalid_argument(
            "generate_independent: one standard deviation per cluster required");
    for (const Scalar sd : cfg.sds)
        if (!(sd >= Scalar(0)))
            throw std::invalid_argument(
                "generate_independent: standard deviations must be nonnegative");
    Index n = 0;
    for (Index size : cfg.sizes) {
        if (size < 1)
            throw std::invalid_argument(
                "generate_independent: cluster sizes must be positive");
        n += size;
    }
    const Index j = cfg.means.cols();

    LabeledDataset<Scalar> data;
    data.centers = cfg.means;
    data.x.resize(n, j);
    data.labels.resize(std::size_t(n));
    data.outlier.assign(std::size_t(n), 0);

    Rng rng(cfg.seed);
    Index row = 0;
    for (Index c = 0; c < k; ++c) {
        for (Index i = 0; i < cfg.sizes[std::size_t(c)]; ++i, ++row) {
            for (Index col = 0; col < j; ++col)
                data.x(row, col) =
                    cfg.means(c, col) + cfg.sds[std::size_t(c)] * Scalar(rng.normal());
            data.labels[std::size_t(row)] = int(c) + 1;
        }
    }
    return data;
}

}  // namespace fpdc
