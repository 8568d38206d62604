#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/random.hpp"

namespace fpdc {

template <class Scalar>
struct PdcConfig {
    int max_iters = 500;
    // A JDF decrease smaller than this (absolute) counts as converged.
    Scalar min_jdf_decrease = Scalar(1e-9);
    // Squared distances are clamped from below before any division by them.
    Scalar distance_floor = Scalar(1e-12);
    std::uint64_t seed = 0;
};

template <class Scalar>
struct PdcModel {
    Matrix<Scalar> centers;        // K x d
    Matrix<Scalar> probabilities;  // n x K, rows sum to 1
    Scalar jdf_total = Scalar(0);
    Vector<Scalar> jdf_per_point;  // length n
    int iterations = 0;
    bool converged = false;        // stop rule fired before the iteration cap
    std::vector<Scalar> trace;     // total JDF per iteration, in order
};

// Squared Euclidean distance of every row of x to every row of c (n x K).
// Raw values: zeros are possible and are clamped by the caller before any
// division (see apply_distance_floor).
template <class DerivedX, class DerivedC>
Matrix<typename DerivedX::Scalar> distances(const Eigen::MatrixBase<DerivedX>& x,
                                            const Eigen::MatrixBase<DerivedC>& c) {
    using Scalar = typename DerivedX::Scalar;
    if (x.cols() != c.cols())
        throw std::invalid_argument("distances: x and c must have the same number of columns");
    if (c.rows() < 1) throw std::invalid_argument("distances: need at least one center");
    Matrix<Scalar> d(x.rows(), c.rows());
    for (Index k = 0; k < c.rows(); ++k)
        d.col(k) = (x.rowwise() - c.row(k)).rowwise().squaredNorm();
    return d;
}

template <class Scalar>
Matrix<Scalar> apply_distance_floor(Matrix<Scalar> d, Scalar floor) {
    return d.cwiseMax(floor);
}

// Belonging probabilities: p_ik proportional to the product of the other
// clusters' distances, equivalently to 1/d_ik after normalization. The
// reciprocal form is used to avoid overflow in the K-fold products.
// Expects distances already floored away from zero.
template <class Derived>
Matrix<typename Derived::Scalar> membership_probabilities(const Eigen::MatrixBase<Derived>& d) {
    using Scalar = typename Derived::Scalar;
    Matrix<Scalar> p(d.rows(), d.cols());
    for (Index i = 0; i < d.rows(); ++i) {
        const auto recip = d.row(i).cwiseInverse();
        const Scalar total = recip.sum();
        if (total > Scalar(0))
            p.row(i) = recip / total;
        else
            p.row(i).setConstant(Scalar(1) / Scalar(d.cols()));
    }
    return p;
}

// Per-point joint distance function and the total objective
// sum_ik d_ik p_ik^2. The per-point value equals p_ik * d_ik for every k.
template <class Derived>
std::pair<Vector<typename Derived::Scalar>, typename Derived::Scalar>
joint_distance_function(const Eigen::MatrixBase<Derived>& d) {
    using Scalar = typename Derived::Scalar;
    Vector<Scalar> per_point(d.rows());
    for (Index i = 0; i < d.rows(); ++i) {
        const Scalar total = d.row(i).cwiseInverse().sum();
        per_point(i) = total > Scalar(0) ? Scalar(1) / total : Scalar(0);
    }
    const Matrix<Scalar> p = membership_probabilities(d);
    const Scalar total = (d.array() * p.array().square()).sum();
    return {per_point, total};
}

// Center equations with inverse-distance weights u_k = p_ik^2 / d_ik:
// each center is the u-weighted mean of the data rows. This is the
// Weiszfeld-style form; a cluster whose total weight vanishes is signaled.
template <class Scalar>
Matrix<Scalar> update_centers(const Matrix<Scalar>& x, const Matrix<Scalar>& p,
                              const Matrix<Scalar>& d) {
    if (x.rows() != p.rows() || p.rows() != d.rows() || p.cols() != d.cols())
        throw std::invalid_argument("update_centers: inconsistent shapes");
    const Index k_count = p.cols();
    Matrix<Scalar> c(k_count, x.cols());
    for (Index k = 0; k < k_count; ++k) {
        const Vector<Scalar> u = p.col(k).array().square() / d.col(k).array();
        const Scalar total = u.sum();
        if (!(total > Scalar(1e-12)))
            throw std::runtime_error("update_centers: degenerate cluster (vanishing weights)");
        c.row(k) = (u / total).transpose() * x;
    }
    return c;
}

namespace detail {

// Fixed-probability minimizer of the squared-distance objective: centers
// are the p^2-weighted means of the data. A cluster whose weight mass
// drops below the floor is re-seeded at the data row with the largest
// per-point JDF.
template <class Scalar>
Matrix<Scalar> squared_objective_centers(const Matrix<Scalar>& x, const Matrix<Scalar>& p,
                                         const Vector<Scalar>& jdf_per_point) {
    const Index k_count = p.cols();
    Matrix<Scalar> c(k_count, x.cols());
    for (Index k = 0; k < k_count; ++k) {
        const Vector<Scalar> w = p.col(k).array().square();
        const Scalar total = w.sum();
        if (total > Scalar(1e-12)) {
            c.row(k) = (w / total).transpose() * x;
        } else {
            Index worst = 0;
            jdf_per_point.maxCoeff(&worst);
            c.row(k) = x.row(worst);
        }
    }
    return c;
}

// PD-clustering loop from explicit starting centers. Evaluates the JDF of
// the current centers, then replaces them by the fixed-probability
// minimizer; stops when the JDF fails to decrease by at least
// min_jdf_decrease and returns the best recorded iterate.
template <class Scalar>
PdcModel<Scalar> pdc_from_centers(const Matrix<Scalar>& x, Matrix<Scalar> centers,
                                  const PdcConfig<Scalar>& cfg) {
    PdcModel<Scalar> best;
    best.jdf_total = std::numeric_limits<Scalar>::infinity();

    std::vector<Scalar> trace;
    Scalar previous = std::numeric_limits<Scalar>::infinity();
    bool converged = false;
    int iter = 0;
    while (iter < cfg.max_iters) {
        ++iter;
        const Matrix<Scalar> d =
            apply_distance_floor(distances(x, centers), cfg.distance_floor);
        const auto [per_point, total] = joint_distance_function(d);
        trace.push_back(total);

        if (total < best.jdf_total) {
            best.centers = centers;
            best.jdf_total = total;
            best.jdf_per_point = per_point;
        }
        if (!(previous - total >= cfg.min_jdf_decrease)) {
            converged = true;
            break;
        }
        previous = total;
        centers = squared_objective_centers(x, membership_probabilities(d), per_point);
    }

    const Matrix<Scalar> d_best =
        apply_distance_floor(distances(x, best.centers), cfg.distance_floor);
    best.probabilities = membership_probabilities(d_best);
    best.iterations = iter;
    best.converged = converged;
    best.trace = std::move(trace);
    return best;
}

// K distinct data rows, sampled without replacement from the seeded stream.
template <class Scalar>
Matrix<Scalar> sample_initial_centers(const Matrix<Scalar>& x, Index k, Rng& rng) {
    const auto rows = rng.sample_without_replacement(static_cast<std::size_t>(x.rows()),
                                                     static_cast<std::size_t>(k));
    Matrix<Scalar> centers(k, x.cols());
    for (Index r = 0; r < k; ++r) centers.row(r) = x.row(static_cast<Index>(rows[r]));
    return centers;
}

}  // namespace detail

// Probabilistic distance clustering. Alternates distance evaluation and
// center updates until the total JDF stops decreasing, then computes the
// belonging probabilities of the best iterate a posteriori.
template <class Scalar>
PdcModel<Scalar> pdc(const Matrix<Scalar>& x, Index k, const PdcConfig<Scalar>& cfg) {
    if (k < 1) throw std::invalid_argument("pdc: need at least one cluster");
    if (x.rows() < k) throw std::invalid_argument("pdc: fewer rows than clusters");
    if (!x.allFinite()) throw std::invalid_argument("pdc: non-finite data");
    Rng rng(cfg.seed);
    return detail::pdc_from_centers(x, detail::sample_initial_centers(x, k, rng), cfg);
}

}  // namespace fpdc
