#pragma once

// Evaluation utilities: hard assignments from membership probabilities,
// a decisiveness score per point, permutation-minimal misclassification,
// within-groups deviance, and a Lloyd k-means baseline.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fpdc/core_linalg.hpp"
#include "fpdc/random.hpp"

namespace fpdc {

// Hard 1-based labels from an n x k membership matrix: per-row argmax,
// lowest index on ties.
template <class Scalar>
std::vector<int> assign_labels(const Matrix<Scalar>& p) {
    const Index n = p.rows();
    const Index k = p.cols();
    if (k < 1) throw std::invalid_argument("assign_labels: need at least one column");
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        Index best = 0;
        for (Index c = 1; c < k; ++c)
            if (p(i, c) > p(i, best)) best = c;
        labels[std::size_t(i)] = int(best) + 1;
    }
    return labels;
}

// Decisiveness score per point: log of the ratio between the assigned
// cluster's probability and the runner-up's, rescaled by the largest
// absolute raw score so values lie in [-1, 1].  Probabilities are floored
// before the ratio.  If every raw score is zero the scores are all zero.
template <class Scalar>
Vector<Scalar> decisiveness_scores(const Matrix<Scalar>& p,
                                   Scalar prob_floor = Scalar(1e-6)) {
    const Index n = p.rows();
    const Index k = p.cols();
    if (k < 2)
        throw std::invalid_argument("decisiveness_scores: need at least two clusters");
    Vector<Scalar> raw(n);
    for (Index i = 0; i < n; ++i) {
        Index best = 0;
        for (Index c = 1; c < k; ++c)
            if (p(i, c) > p(i, best)) best = c;
        Index second = best == 0 ? 1 : 0;
        for (Index c = 0; c < k; ++c) {
            if (c == best) continue;
            if (p(i, c) > p(i, second)) second = c;
        }
        const Scalar top = std::max(p(i, best), prob_floor);
        const Scalar next = std::max(p(i, second), prob_floor);
        raw(i) = std::log(top / next);
    }
    const Scalar scale = raw.cwiseAbs().maxCoeff();
    if (scale == Scalar(0)) return Vector<Scalar>::Zero(n);
    return raw / scale;
}

// Fraction of points whose estimated label disagrees with the true one,
// minimized over all relabelings of the estimated clusters.  Exact search
// over the k! permutations, so k must be at most 8.  Points flagged in
// `exclude` (when non-empty) are left out of both numerator and denominator.
template <class Scalar = double>
Scalar misclassification_rate(const std::vector<int>& estimated,
                              const std::vector<int>& truth, int k,
                              const std::vector<char>& exclude = {}) {
    if (k < 1 || k > 8)
        throw std::invalid_argument("misclassification_rate: k must lie in [1, 8]");
    if (estimated.size() != truth.size())
        throw std::invalid_argument("misclassification_rate: label vectors differ in length");
    if (!exclude.empty() && exclude.size() != truth.size())
        throw std::invalid_argument("misclassification_rate: exclusion mask has wrong length");
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (estimated[i] < 1 || estimated[i] > k || truth[i] < 1 || truth[i] > k)
            throw std::invalid_argument("misclassification_rate: labels must lie in [1, k]");
    }
    std::size_t counted = 0;
    // confusion[e][t] = points with estimated label e+1 and true label t+1
    std::vector<std::vector<std::size_t>> confusion(
        std::size_t(k), std::vector<std::size_t>(std::size_t(k), 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (!exclude.empty() && exclude[i]) continue;
        ++counted;
        ++confusion[std::size_t(estimated[i] - 1)][std::size_t(truth[i] - 1)];
    }
    if (counted == 0) return Scalar(0);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best_agree = 0;
    do {
        std::size_t agree = 0;
        for (int e = 0; e < k; ++e)
            agree += confusion[std::size_t(e)][std::size_t(perm[std::size_t(e)])];
        best_agree = std::max(best_agree, agree);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return Scalar(counted - best_agree) / Scalar(counted);
}

// Within-groups deviance: sum over clusters of squared distances to the
// cluster mean.  Labels are 1-based in [1, k]; an empty cluster is an error.
template <class Scalar>
Scalar within_variance(const Matrix<Scalar>& x, const std::vector<int>& labels, int k) {
    const Index n = x.rows();
    if (k < 1) throw std::invalid_argument("within_variance: k must be positive");
    if (labels.size() != std::size_t(n))
        throw std::invalid_argument("within_variance: one label per row required");
    Matrix<Scalar> sums = Matrix<Scalar>::Zero(k, x.cols());
    std::vector<Index> counts(std::size_t(k), 0);
    for (Index i = 0; i < n; ++i) {
        const int lab = labels[std::size_t(i)];
        if (lab < 1 || lab > k)
            throw std::invalid_argument("within_variance: labels must lie in [1, k]");
        sums.row(lab - 1) += x.row(i);
        ++counts[std::size_t(lab - 1)];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[std::size_t(c)] == 0)
            throw std::invalid_argument("within_variance: empty cluster");
        sums.row(c) /= Scalar(counts[std::size_t(c)]);
    }
    Scalar total = Scalar(0);
    for (Index i = 0; i < n; ++i)
        total += (x.row(i) - sums.row(labels[std::size_t(i)] - 1)).squaredNorm();
    return total;
}

template <class Scalar>
struct KMeansConfig {
    int max_iters = 500;
    std::uint64_t seed = 0;
};

template <class Scalar>
struct KMeansModel {
    Matrix<Scalar> centers;      // k x j
    std::vector<int> labels;     // 1-based, one per row
    Scalar within_variance = Scalar(0);
    std::vector<Scalar> within_variance_trace;  // after each update
    int iterations = 0;
    bool converged = false;      // assignments stabilized before the cap
};

// Lloyd k-means from k distinct seeded data rows.  Nearest center wins,
// lowest index on ties; a cluster left empty is re-seeded at the point
// farthest from its current center.
template <class Scalar>
KMeansModel<Scalar> kmeans(const Matrix<Scalar>& x, Index k,
                           const KMeansConfig<Scalar>& cfg = {}) {
    const Index n = x.rows();
    const Index j = x.cols();
    if (k < 1) throw std::invalid_argument("kmeans: need at least one cluster");
    if (n < k) throw std::invalid_argument("kmeans: need at least as many rows as clusters");
    if (!x.allFinite()) throw std::invalid_argument("kmeans: data must be finite");

    Rng rng(cfg.seed);
    const std::vector<std::size_t> pick = rng.sample_without_replacement(
        std::size_t(n), std::size_t(k));
    KMeansModel<Scalar> model;
    model.centers.resize(k, j);
    for (Index c = 0; c < k; ++c) model.centers.row(c) = x.row(Index(pick[std::size_t(c)]));
    model.labels.assign(std::size_t(n), 0);

    std::vector<int> previous(std::size_t(n), -1);
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        model.iterations = iter + 1;
        // Assign.
        Vector<Scalar> nearest(n);
        for (Index i = 0; i < n; ++i) {
            Index best = 0;
            Scalar best_d = (x.row(i) - model.centers.row(0)).squaredNorm();
            for (Index c = 1; c < k; ++c) {
                const Scalar d = (x.row(i) - model.centers.row(c)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            model.labels[std::size_t(i)] = int(best) + 1;
            nearest(i) = best_d;
        }
        // Update, re-seeding empty clusters at the farthest point.
        Matrix<Scalar> sums = Matrix<Scalar>::Zero(k, j);
        std::vector<Index> counts(std::size_t(k), 0);
        for (Index i = 0; i < n; ++i) {
            sums.row(model.labels[std::size_t(i)] - 1) += x.row(i);
            ++counts[std::size_t(model.labels[std::size_t(i)] - 1)];
        }
        for (Index c = 0; c < k; ++c) {
            if (counts[std::size_t(c)] > 0) {
                model.centers.row(c) = sums.row(c) / Scalar(counts[std::size_t(c)]);
                continue;
            }
            // Re-seed at the farthest point whose donor cluster keeps a member.
            Index far = -1;
            Scalar far_d = Scalar(-1);
            for (Index i = 0; i < n; ++i) {
                if (counts[std::size_t(model.labels[std::size_t(i)] - 1)] < 2) continue;
                if (nearest(i) > far_d) {
                    far_d = nearest(i);
                    far = i;
                }
            }
            if (far < 0) throw std::runtime_error("kmeans: cannot repair empty cluster");
            --counts[std::size_t(model.labels[std::size_t(far)] - 1)];
            model.labels[std::size_t(far)] = int(c) + 1;
            ++counts[std::size_t(c)];
            model.centers.row(c) = x.row(far);
            nearest(far) = Scalar(0);
        }
        model.within_variance_trace.push_back(
            within_variance(x, model.labels, int(k)));
        if (model.labels == previous) {
            model.converged = true;
            break;
        }
        previous = model.labels;
    }
    model.within_variance = model.within_variance_trace.back();
    return model;
}

// Equal-width histogram of final objectives across repeated runs, used to
// report how often the runs agree.  The bucket span is floored at a small
// fraction of the values' magnitude so that runs agreeing to high precision
// fall into one bucket instead of being split apart by rounding noise.
template <class Scalar>
struct ObjectiveHistogram {
    std::vector<Scalar> edges;   // buckets+1 ascending bucket boundaries
    std::vector<int> counts;     // buckets entries, summing to values.size()
};

template <class Scalar>
ObjectiveHistogram<Scalar> objective_histogram(const std::vector<Scalar>& values,
                                               int buckets = 20) {
    if (values.empty())
        throw std::invalid_argument("objective_histogram: need at least one value");
    if (buckets < 1)
        throw std::invalid_argument("objective_histogram: need at least one bucket");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const Scalar lo = *lo_it;
    const Scalar hi = *hi_it;
    // Values within 0.1% of each other describe the same solution for
    // stability purposes; never let the whole histogram span less than that.
    const Scalar floor_span =
        Scalar(1e-3) * std::max({std::abs(lo), std::abs(hi), Scalar(1)});
    const Scalar span = std::max(hi - lo, floor_span);
    ObjectiveHistogram<Scalar> hist;
    hist.edges.resize(std::size_t(buckets) + 1);
    for (int b = 0; b <= buckets; ++b)
        hist.edges[std::size_t(b)] = lo + span * Scalar(b) / Scalar(buckets);
    hist.counts.assign(std::size_t(buckets), 0);
    for (const Scalar v : values) {
        auto b = Index((v - lo) / span * Scalar(buckets));
        b = std::clamp<Index>(b, 0, buckets - 1);
        ++hist.counts[std::size_t(b)];
    }
    return hist;
}

// Share of runs in the most populated histogram bucket.
template <class Scalar>
Scalar modal_share(const ObjectiveHistogram<Scalar>& hist) {
    int total = 0;
    int top = 0;
    for (const int c : hist.counts) {
        total += c;
        top = std::max(top, c);
    }
    return total > 0 ? Scalar(top) / Scalar(total) : Scalar(0);
}

}  // namespace fpdc
