#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "fpdc/evaluation.hpp"
#include "fpdc/random.hpp"

using fpdc::Index;
using fpdc::MatrixXd;

TEST_CASE("labels take the most probable cluster, first index on ties") {
    MatrixXd p(3, 3);
    p << 0.2, 0.5, 0.3,
         0.4, 0.4, 0.2,
         0.1, 0.1, 0.8;
    const auto labels = fpdc::assign_labels(p);
    CHECK(labels == std::vector<int>{2, 1, 3});
    CHECK_THROWS_AS((void)fpdc::assign_labels(MatrixXd(3, 0)), std::invalid_argument);
}

TEST_CASE("decisiveness matches the hand-computed log ratios") {
    MatrixXd p(2, 2);
    p << 0.8, 0.2,
         0.6, 0.4;
    const auto scores = fpdc::decisiveness_scores(p);
    // Raw scores log(4) and log(1.5); the larger one scales to exactly 1.
    CHECK(scores(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(scores(1) ==
          doctest::Approx(std::log(1.5) / std::log(4.0)).epsilon(1e-12));
    CHECK(scores(1) == doctest::Approx(0.29248125036057813).epsilon(1e-12));
}

TEST_CASE("decisiveness is bounded, floored, and zero at indifference") {
    MatrixXd even = MatrixXd::Constant(4, 3, 1.0 / 3.0);
    const auto zero = fpdc::decisiveness_scores(even);
    CHECK(zero.cwiseAbs().maxCoeff() == 0.0);

    MatrixXd p(3, 2);
    p << 1.0, 0.0,  // floored: ratio capped at 1 / 1e-6
         0.9, 0.1,
         0.5, 0.5;
    const auto scores = fpdc::decisiveness_scores(p);
    CHECK(scores.maxCoeff() <= 1.0);
    CHECK(scores.minCoeff() >= -1.0);
    CHECK(scores(0) == 1.0);
    CHECK(scores(2) == 0.0);
    // The floor keeps the top ratio finite.
    CHECK(std::isfinite(scores(0)));
    const MatrixXd single_column = MatrixXd::Ones(3, 1);
    CHECK_THROWS_AS((void)fpdc::decisiveness_scores(single_column),
                    std::invalid_argument);
}

TEST_CASE("misclassification is invariant to relabeling") {
    const std::vector<int> truth{1, 1, 2, 2, 3, 3};
    const std::vector<int> relabeled{3, 3, 1, 1, 2, 2};
    CHECK(fpdc::misclassification_rate(relabeled, truth, 3) == 0.0);
    CHECK(fpdc::misclassification_rate(truth, truth, 3) == 0.0);
}

TEST_CASE("misclassification counts the unavoidable disagreements") {
    // Best permutation maps 1->2, 2->1; rows 2 and 5 still disagree.
    const std::vector<int> estimated{1, 1, 2, 2, 2, 1};
    const std::vector<int> truth{2, 2, 2, 1, 1, 1};
    CHECK(fpdc::misclassification_rate(estimated, truth, 2) ==
          doctest::Approx(2.0 / 6.0));
}

TEST_CASE("flagged points can be excluded from the misclassification") {
    const std::vector<int> estimated{1, 1, 2, 2};
    const std::vector<int> truth{1, 2, 2, 2};
    const std::vector<char> exclude{0, 1, 0, 0};
    CHECK(fpdc::misclassification_rate(estimated, truth, 2) ==
          doctest::Approx(0.25));
    CHECK(fpdc::misclassification_rate(estimated, truth, 2, exclude) == 0.0);
}

TEST_CASE("misclassification validates its inputs") {
    const std::vector<int> a{1, 2};
    CHECK_THROWS_AS((void)fpdc::misclassification_rate(a, std::vector<int>{1}, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::misclassification_rate(a, a, 9),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::misclassification_rate(a, std::vector<int>{1, 3}, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        (void)fpdc::misclassification_rate(a, a, 2, std::vector<char>{1}),
        std::invalid_argument);
}

TEST_CASE("within variance matches hand values and rewards refinement") {
    MatrixXd x(4, 1);
    x << 0.0, 2.0, 10.0, 12.0;
    const std::vector<int> one_group{1, 1, 1, 1};
    // Mean 6; deviations -6, -4, 4, 6.
    CHECK(fpdc::within_variance(x, one_group, 1) == doctest::Approx(104.0));
    const std::vector<int> pairs{1, 1, 2, 2};
    // Each pair contributes (1)^2 + (1)^2 = 2.
    CHECK(fpdc::within_variance(x, pairs, 2) == doctest::Approx(4.0));
    const std::vector<int> singletons{1, 2, 3, 4};
    CHECK(fpdc::within_variance(x, singletons, 4) == 0.0);
    CHECK_THROWS_AS((void)fpdc::within_variance(x, pairs, 3), std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::within_variance(x, one_group, 0),
                    std::invalid_argument);
}

TEST_CASE("kmeans separates distant pairs and never loses ground") {
    MatrixXd x(4, 2);
    x << 0.0, 0.0,
         1.0, 0.0,
         20.0, 20.0,
         21.0, 20.0;
    fpdc::KMeansConfig<double> cfg;
    cfg.seed = 1;
    const auto model = fpdc::kmeans(x, 2, cfg);
    CHECK(model.converged);
    CHECK(model.labels[0] == model.labels[1]);
    CHECK(model.labels[2] == model.labels[3]);
    CHECK(model.labels[0] != model.labels[2]);
    // Each pair's center is its midpoint, so the deviance is 4 * 0.5^2.
    CHECK(model.within_variance == doctest::Approx(1.0));
    for (std::size_t t = 1; t < model.within_variance_trace.size(); ++t)
        CHECK(model.within_variance_trace[t] <=
              model.within_variance_trace[t - 1] + 1e-12);
    // Deterministic under the same seed.
    const auto again = fpdc::kmeans(x, 2, cfg);
    CHECK(again.labels == model.labels);
    CHECK((again.centers.array() == model.centers.array()).all());
    CHECK_THROWS_AS((void)fpdc::kmeans(x, 5, cfg), std::invalid_argument);
}

TEST_CASE("kmeans agrees with the within-variance it reports") {
    fpdc::Rng rng(3);
    MatrixXd x(30, 2);
    for (Index c = 0; c < 2; ++c)
        for (Index r = 0; r < 30; ++r) x(r, c) = rng.normal();
    fpdc::KMeansConfig<double> cfg;
    cfg.seed = 7;
    const auto model = fpdc::kmeans(x, 3, cfg);
    CHECK(model.within_variance ==
          doctest::Approx(fpdc::within_variance(x, model.labels, 3)).epsilon(1e-12));
    CHECK(model.within_variance ==
          doctest::Approx(model.within_variance_trace.back()).epsilon(1e-12));
}

TEST_CASE("histograms count every value and keep near-ties together") {
    const std::vector<double> values{1.0, 1.0 + 1e-9, 1.0 - 1e-9, 1.0, 1.0};
    // All values agree to within a relative 0.1%, so the span is floored and
    // every run lands in one bucket.
    const auto hist = fpdc::objective_histogram(values, 20);
    REQUIRE(hist.counts.size() == 20);
    REQUIRE(hist.edges.size() == 21);
    int total = 0, top = 0;
    for (const int c : hist.counts) {
        total += c;
        top = std::max(top, c);
    }
    CHECK(total == 5);
    CHECK(top == 5);
    CHECK(fpdc::modal_share(hist) == doctest::Approx(1.0));
}

TEST_CASE("histograms spread distinct values across buckets") {
    std::vector<double> values;
    for (int i = 0; i < 10; ++i) values.push_back(double(i));
    const auto hist = fpdc::objective_histogram(values, 5);
    REQUIRE(hist.counts.size() == 5);
    // Edges ascend and cover [0, 9].
    CHECK(hist.edges.front() == doctest::Approx(0.0));
    CHECK(hist.edges.back() >= 9.0);
    for (std::size_t e = 1; e < hist.edges.size(); ++e)
        CHECK(hist.edges[e] > hist.edges[e - 1]);
    int total = 0;
    for (const int c : hist.counts) total += c;
    CHECK(total == 10);
    CHECK(fpdc::modal_share(hist) == doctest::Approx(0.2));
    CHECK_THROWS_AS((void)fpdc::objective_histogram(std::vector<double>{}, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::objective_histogram(values, 0),
                    std::invalid_argument);
}
