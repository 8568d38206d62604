#pragma once

// Factor clustering: alternate between fitting a low-rank loading matrix to
// the membership-weighted point-to-center residuals and running
// probabilistic-distance clustering on the projected data.
//
// The loading step keeps the q directions along which the weighted residual
// scatter is smallest — the subspace that minimizes the projected clustering
// objective over all rank-q column-orthonormal loadings for the current
// memberships (equivalently, the trailing second-mode factor of the weighted
// residual tensor).  On the first pass the memberships are uniform, for
// which every objective-minimizing center coincides with the data mean and
// the weighted residual scatter reduces to the total data scatter; the
// first loading is therefore a deterministic function of the data alone,
// and all run-to-run variability enters through the clustering seed.
//
// The clustering step is pdc() from pd_clustering.hpp on the projected
// coordinates: seeded on the first pass, then warm-started from the carried
// centers so that each run follows a single deterministic trajectory.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/pd_clustering.hpp"
#include "fpdc/random.hpp"
#include "fpdc/tucker3.hpp"

namespace fpdc {

template <class Scalar>
struct FpdcConfig {
    Index k = 2;                        // number of clusters
    TuckerConfig<Scalar> tucker;        // ranks + decomposition options
    PdcConfig<Scalar> pdc;              // inner clustering options
    int max_outer_iters = 50;           // cap on loading/clustering passes
    // Relative decrease of the projected objective below which the outer
    // loop is considered converged (the inner pdc keeps its own absolute
    // threshold; the outer objective's scale depends on the projection
    // rank, so a relative rule is used here).
    Scalar min_outer_decrease = Scalar(1e-6);
    bool standardize = true;            // center and scale columns first
    // Reserved run-derivation seed: the factor step itself is deterministic
    // given the data (randomness enters through pdc.seed), but multistart
    // shifts this value alongside the others so that future uses stay
    // reproducible.
    std::uint64_t seed = 0;
    // When set, the loading matrix is pinned to the identity (requires
    // q == number of kept columns); the projection is then a no-op and the
    // result coincides with plain pdc() on the input.
    bool force_identity_loading = false;
};

template <class Scalar>
struct FpdcModel {
    PdcModel<Scalar> model;             // clustering in the projected space
    Matrix<Scalar> centers;             // cluster centers in the input space (k x j_kept)
    Matrix<Scalar> loading;             // j_kept x q column-orthonormal loading
    Matrix<Scalar> projected;           // n x q projected data the model was fit on
    // Objective evaluated in the (standardized) input space at `centers`.
    // Unlike model.jdf_total this does not depend on the learned projection;
    // it is informational and is not used to compare runs.
    Scalar input_jdf = Scalar(0);
    std::vector<Scalar> outer_trace;    // objective after each outer pass
    int outer_iterations = 0;
    bool converged = false;             // stopped via the decrease rule
    // Standardization report: which input columns were dropped as constant,
    // and the mean/scale applied to the kept ones (empty when standardize
    // is off).
    std::vector<Index> dropped_columns;
    Vector<Scalar> column_means;
    Vector<Scalar> column_scales;
};

template <class Scalar>
struct MultistartResult {
    FpdcModel<Scalar> best;             // lowest-objective run
    int best_run = 0;                   // index of that run
    std::vector<Scalar> objectives;     // final objective of every run
    std::vector<FpdcModel<Scalar>> runs;
};

namespace detail {

// Column standardization with constant-column dropping.  Returns the reduced
// matrix; fills kept/dropped index lists and the applied means and scales
// (sample standard deviation, n-1 denominator).
template <class Scalar>
Matrix<Scalar> standardize_columns(const Matrix<Scalar>& x,
                                   std::vector<Index>& kept,
                                   std::vector<Index>& dropped,
                                   Vector<Scalar>& means,
                                   Vector<Scalar>& scales) {
    const Index n = x.rows();
    const Index j = x.cols();
    if (n < 2) throw std::invalid_argument("standardize_columns: need at least two rows");
    kept.clear();
    dropped.clear();
    std::vector<Scalar> mean_list, scale_list;
    for (Index c = 0; c < j; ++c) {
        const Scalar mean = x.col(c).mean();
        const Scalar var =
            (x.col(c).array() - mean).square().sum() / Scalar(n - 1);
        const Scalar sd = std::sqrt(var);
        if (sd > Scalar(0)) {
            kept.push_back(c);
            mean_list.push_back(mean);
            scale_list.push_back(sd);
        } else {
            dropped.push_back(c);
        }
    }
    if (kept.empty())
        throw std::invalid_argument("standardize_columns: all columns are constant");
    Matrix<Scalar> out(n, Index(kept.size()));
    means.resize(Index(kept.size()));
    scales.resize(Index(kept.size()));
    for (std::size_t idx = 0; idx < kept.size(); ++idx) {
        const Index c = Index(idx);
        means(c) = mean_list[idx];
        scales(c) = scale_list[idx];
        out.col(c) = (x.col(kept[idx]).array() - means(c)) / scales(c);
    }
    return out;
}

// Orthonormal basis of the q directions along which the weighted residual
// scatter  sum_{i,k} w_ik (x_i - c_k)(x_i - c_k)'  is smallest.  Projecting
// onto these directions minimizes the clustering objective over all rank-q
// column-orthonormal loadings for the given memberships w (squared
// belonging probabilities).  Column signs are fixed so each column's
// largest-magnitude entry is positive.
template <class Scalar>
Matrix<Scalar> minimum_scatter_basis(const Matrix<Scalar>& x,
                                     const Matrix<Scalar>& centers,
                                     const Matrix<Scalar>& weights, Index q) {
    const Index j = x.cols();
    Matrix<Scalar> scatter = Matrix<Scalar>::Zero(j, j);
    for (Index k = 0; k < centers.rows(); ++k) {
        const Matrix<Scalar> diff = x.rowwise() - centers.row(k);
        scatter.noalias() += diff.transpose() * weights.col(k).asDiagonal() * diff;
    }
    Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eigen(scatter);
    if (eigen.info() != Eigen::Success)
        throw std::runtime_error("fpdc: eigendecomposition of the residual scatter failed");
    Matrix<Scalar> basis = eigen.eigenvectors().leftCols(q);  // ascending eigenvalues
    for (Index col = 0; col < basis.cols(); ++col) {
        Index row = 0;
        basis.col(col).cwiseAbs().maxCoeff(&row);
        if (basis(row, col) < Scalar(0)) basis.col(col) = -basis.col(col);
    }
    return basis;
}

// One center step in the input space: c_k = sum_i u_ik x_i / sum_i u_ik with
// u_ik = p_ik^2 / d_ik, where p holds the projected-space memberships and d
// the floored input-space distances.  A cluster whose total weight vanishes
// is re-seeded at the row with the largest per-point objective.
template <class Scalar>
Matrix<Scalar> input_space_centers(const Matrix<Scalar>& x,
                                   const Matrix<Scalar>& p,
                                   const Matrix<Scalar>& d) {
    const Matrix<Scalar> u = p.cwiseProduct(p).cwiseQuotient(d);
    Matrix<Scalar> centers(p.cols(), x.cols());
    for (Index c = 0; c < p.cols(); ++c) {
        const Scalar total = u.col(c).sum();
        if (total <= Scalar(1e-12)) {
            Vector<Scalar> per_point(x.rows());
            for (Index i = 0; i < x.rows(); ++i)
                per_point(i) = Scalar(1) / d.row(i).cwiseInverse().sum();
            Index row = 0;
            per_point.maxCoeff(&row);
            centers.row(c) = x.row(row);
        } else {
            centers.row(c) = (u.col(c).transpose() * x) / total;
        }
    }
    return centers;
}

// Input-space centers implied by fixed memberships p: the fixed point of
// the weighted center step above, which solves the center equations at
// fixed probabilities.  Started from the probability-squared weighted
// means; the iteration is a contraction in practice and is capped.
template <class Scalar>
Matrix<Scalar> recovered_centers(const Matrix<Scalar>& x, const Matrix<Scalar>& p,
                                 Scalar distance_floor) {
    Matrix<Scalar> centers(p.cols(), x.cols());
    for (Index k = 0; k < p.cols(); ++k) {
        const Vector<Scalar> w = p.col(k).cwiseProduct(p.col(k));
        const Scalar total = w.sum();
        if (total > Scalar(0))
            centers.row(k) = (w.transpose() * x) / total;
        else
            centers.row(k) = x.colwise().mean();
    }
    for (int iter = 0; iter < 100; ++iter) {
        const Matrix<Scalar> d =
            apply_distance_floor(distances(x, centers), distance_floor);
        const Matrix<Scalar> next = input_space_centers(x, p, d);
        const Scalar shift = (next - centers).cwiseAbs().maxCoeff();
        centers = next;
        if (shift < Scalar(1e-10)) break;
    }
    return centers;
}

}  // namespace detail

// Project rows of x onto the columns of the loading matrix b.
template <class Scalar>
Matrix<Scalar> project(const Matrix<Scalar>& x, const Matrix<Scalar>& b) {
    if (x.cols() != b.rows())
        throw std::invalid_argument("project: column count of x must match row count of b");
    return x * b;
}

// Factor clustering of the rows of x into cfg.k clusters.
//
// Pass 1: loading B = basis of the q quietest directions of the total data
// scatter (the objective-minimizing subspace under uniform memberships,
// where all optimal centers coincide with the data mean); run pdc() on
// x * B seeded with cfg.pdc.seed; recover input-space centers from the
// projected-space memberships via the fixed point of the weighted center
// step on the original x.
//
// Pass t >= 2 over carried input-space centers C: recompute the soft
// memberships of x to C, refit B as the q quietest directions of the
// membership-weighted residual scatter around C, continue pdc() on x * B
// warm-started from C * B, and recover centers again.
//
// Stops when the projected-space objective no longer decreases by at least
// cfg.min_outer_decrease relative to its size, keeping the best pass seen.
// The rank q = cfg.tucker.q is clamped to the post-standardization
// dimensions.
template <class Scalar>
FpdcModel<Scalar> fpdc(const Matrix<Scalar>& x_in, const FpdcConfig<Scalar>& cfg) {
    const Index n = x_in.rows();
    const Index k = cfg.k;
    if (k < 1) throw std::invalid_argument("fpdc: need at least one cluster");
    if (n < k) throw std::invalid_argument("fpdc: need at least as many rows as clusters");
    if (!x_in.allFinite()) throw std::invalid_argument("fpdc: data must be finite");
    if (cfg.max_outer_iters < 1)
        throw std::invalid_argument("fpdc: max_outer_iters must be positive");

    FpdcModel<Scalar> result;

    Matrix<Scalar> x;
    if (cfg.standardize) {
        std::vector<Index> kept;
        x = detail::standardize_columns(x_in, kept, result.dropped_columns,
                                        result.column_means, result.column_scales);
    } else {
        x = x_in;
    }
    const Index j = x.cols();

    const Index q = std::clamp<Index>(cfg.tucker.q, 1, j);
    if (cfg.force_identity_loading && q != j)
        throw std::invalid_argument(
            "fpdc: identity loading requires q to equal the number of kept columns");

    PdcModel<Scalar> best_model;
    Matrix<Scalar> best_loading, best_projected, best_centers;
    Scalar best_objective = std::numeric_limits<Scalar>::infinity();
    Scalar previous = std::numeric_limits<Scalar>::infinity();
    Matrix<Scalar> centers;  // input-space centers, defined from pass 1 on
    bool stopped = false;
    int outer = 0;

    for (; outer < cfg.max_outer_iters;) {
        ++outer;

        Matrix<Scalar> loading;
        if (cfg.force_identity_loading) {
            loading = Matrix<Scalar>::Identity(j, j);
        } else if (outer == 1) {
            const Matrix<Scalar> mean_row = x.colwise().mean();
            const Matrix<Scalar> uniform = Matrix<Scalar>::Ones(n, 1);
            loading = detail::minimum_scatter_basis(x, mean_row, uniform, q);
        } else {
            const Matrix<Scalar> d =
                apply_distance_floor(distances(x, centers), cfg.pdc.distance_floor);
            Matrix<Scalar> weights = membership_probabilities(d);
            weights = weights.cwiseProduct(weights);
            loading = detail::minimum_scatter_basis(x, centers, weights, q);
        }

        const Matrix<Scalar> projected = project(x, loading);
        const PdcModel<Scalar> inner =
            outer == 1 ? pdc(projected, k, cfg.pdc)
                       : detail::pdc_from_centers(
                             projected, Matrix<Scalar>(centers * loading), cfg.pdc);

        result.outer_trace.push_back(inner.jdf_total);
        const Matrix<Scalar> recovered =
            detail::recovered_centers(x, inner.probabilities, cfg.pdc.distance_floor);
        if (inner.jdf_total < best_objective) {
            best_objective = inner.jdf_total;
            best_model = inner;
            best_loading = loading;
            best_projected = projected;
            best_centers = recovered;
        }
        const Scalar required =
            cfg.min_outer_decrease * std::max(Scalar(1), std::abs(previous));
        if (outer > 1 && !(previous - inner.jdf_total >= required)) {
            stopped = true;
            break;
        }
        previous = inner.jdf_total;
        centers = recovered;
    }

    const Matrix<Scalar> d_best =
        apply_distance_floor(distances(x, best_centers), cfg.pdc.distance_floor);
    result.input_jdf = joint_distance_function(d_best).second;

    result.model = std::move(best_model);
    result.loading = std::move(best_loading);
    result.projected = std::move(best_projected);
    result.centers = std::move(best_centers);
    result.outer_iterations = outer;
    result.converged = stopped;
    return result;
}

// Repeated factor clustering from `runs` different seeds; run r shifts every
// seed in cfg by r.  Runs are independent and may execute on up to `jobs`
// threads; results are merged by run index, so the outcome does not depend
// on scheduling.  Best run = lowest final objective, earliest run on ties.
template <class Scalar>
MultistartResult<Scalar> multistart(const Matrix<Scalar>& x,
                                    const FpdcConfig<Scalar>& cfg,
                                    int runs, int jobs = 1) {
    if (runs < 1) throw std::invalid_argument("multistart: need at least one run");
    MultistartResult<Scalar> result;
    result.runs.resize(std::size_t(runs));

    auto run_one = [&](int r) {
        FpdcConfig<Scalar> c = cfg;
        c.seed = cfg.seed + std::uint64_t(r);
        c.pdc.seed = cfg.pdc.seed + std::uint64_t(r);
        c.tucker.seed = cfg.tucker.seed + std::uint64_t(r);
        result.runs[std::size_t(r)] = fpdc(x, c);
    };

    const int workers = std::max(1, std::min(jobs, runs));
    if (workers == 1) {
        for (int r = 0; r < runs; ++r) run_one(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(std::size_t(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < runs; r = next.fetch_add(1))
                    run_one(r);
            });
        }
        for (auto& t : pool) t.join();
    }

    result.objectives.reserve(std::size_t(runs));
    int best = 0;
    for (int r = 0; r < runs; ++r) {
        result.objectives.push_back(result.runs[std::size_t(r)].model.jdf_total);
        if (result.objectives[std::size_t(r)] < result.objectives[std::size_t(best)])
            best = r;
    }
    result.best = result.runs[std::size_t(best)];
    result.best_run = best;
    return result;
}

}  // namespace fpdc
