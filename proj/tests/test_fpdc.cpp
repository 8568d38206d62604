#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fpdc/evaluation.hpp"
#include "fpdc/fpdc.hpp"
#include "fpdc/random.hpp"
#include "fpdc/simdata.hpp"

using fpdc::Index;
using fpdc::MatrixXd;

namespace {

MatrixXd random_matrix(Index rows, Index cols, std::uint64_t seed) {
    fpdc::Rng rng(seed);
    MatrixXd m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        for (Index r = 0; r < rows; ++r) m(r, c) = rng.normal();
    return m;
}

}  // namespace

TEST_CASE("projection is the plain matrix product with checked shapes") {
    MatrixXd x(2, 3);
    x << 1, 2, 3,
         4, 5, 6;
    MatrixXd b(3, 2);
    b << 1, 0,
         0, 1,
         0, 0;
    const MatrixXd p = fpdc::project(x, b);
    REQUIRE(p.rows() == 2);
    REQUIRE(p.cols() == 2);
    CHECK(p(0, 0) == 1.0);
    CHECK(p(1, 1) == 5.0);
    const MatrixXd wrong_rows = MatrixXd::Identity(2, 2);
    CHECK_THROWS_AS((void)fpdc::project(x, wrong_rows), std::invalid_argument);
}

TEST_CASE("identity loading without standardization reduces to plain clustering") {
    const MatrixXd x = random_matrix(40, 3, 7);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 2;
    cfg.tucker.q = 3;
    cfg.standardize = false;
    cfg.force_identity_loading = true;
    cfg.pdc.seed = 5;
    const auto factored = fpdc::fpdc(x, cfg);
    const auto plain = fpdc::pdc(x, 2, cfg.pdc);
    CHECK(factored.model.jdf_total == plain.jdf_total);
    CHECK((factored.model.centers.array() == plain.centers.array()).all());
    CHECK((factored.model.probabilities.array() == plain.probabilities.array()).all());
    CHECK((factored.loading - MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identity loading demands a full-rank projection") {
    const MatrixXd x = random_matrix(20, 3, 8);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 2;
    cfg.tucker.q = 2;  // fewer components than columns
    cfg.standardize = false;
    cfg.force_identity_loading = true;
    CHECK_THROWS_AS((void)fpdc::fpdc(x, cfg), std::invalid_argument);
}

TEST_CASE("standardization centers, scales, and drops constant columns") {
    MatrixXd x(4, 3);
    x << 1.0, 5.0, -2.0,
         2.0, 5.0, -1.0,
         3.0, 5.0,  0.0,
         4.0, 5.0,  7.0;
    std::vector<Index> kept, dropped;
    fpdc::Vector<double> means, scales;
    const MatrixXd z = fpdc::detail::standardize_columns(x, kept, dropped, means, scales);
    REQUIRE(kept == std::vector<Index>{0, 2});
    REQUIRE(dropped == std::vector<Index>{1});
    REQUIRE(z.cols() == 2);
    CHECK(means(0) == doctest::Approx(2.5));
    // Sample standard deviation with the n-1 denominator.
    CHECK(scales(0) == doctest::Approx(std::sqrt(5.0 / 3.0)));
    for (Index c = 0; c < 2; ++c) {
        CHECK(std::abs(z.col(c).mean()) < 1e-12);
        const double var = (z.col(c).array() - z.col(c).mean()).square().sum() / 3.0;
        CHECK(var == doctest::Approx(1.0));
    }
    const MatrixXd all_constant = MatrixXd::Ones(4, 2);
    CHECK_THROWS_AS((void)fpdc::detail::standardize_columns(all_constant, kept, dropped,
                                                            means, scales),
                    std::invalid_argument);
    const MatrixXd single_row = MatrixXd::Ones(1, 2);
    CHECK_THROWS_AS((void)fpdc::detail::standardize_columns(single_row, kept, dropped,
                                                            means, scales),
                    std::invalid_argument);
}

TEST_CASE("the fitted model reports a consistent geometry") {
    const auto data = fpdc::generate_independent(fpdc::independent_config<double>(3));
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 4;
    cfg.tucker.q = 2;
    const auto fit = fpdc::fpdc(data.x, cfg);

    REQUIRE(fit.loading.rows() == 2);
    REQUIRE(fit.loading.cols() == 2);
    const MatrixXd gram = fit.loading.transpose() * fit.loading;
    CHECK((gram - MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);

    // The projected coordinates stored with the model are the standardized
    // data times the loading.
    MatrixXd standardized(data.x.rows(), 2);
    for (Index c = 0; c < 2; ++c)
        standardized.col(c) =
            (data.x.col(c).array() - fit.column_means(c)) / fit.column_scales(c);
    CHECK((fit.projected - standardized * fit.loading).cwiseAbs().maxCoeff() <= 1e-12);

    CHECK(fit.outer_iterations == int(fit.outer_trace.size()));
    CHECK(fit.model.jdf_total ==
          doctest::Approx(*std::min_element(fit.outer_trace.begin(),
                                            fit.outer_trace.end())));
    CHECK(fit.input_jdf > 0.0);

    // The outer objective decreases strictly until the stopping pass.
    for (std::size_t t = 1; t + 1 < fit.outer_trace.size(); ++t)
        CHECK(fit.outer_trace[t] <= fit.outer_trace[t - 1]);
    CHECK(fit.converged);
}

TEST_CASE("well-separated clusters are recovered through the factor step") {
    const auto data = fpdc::generate_independent(fpdc::independent_config<double>(0));
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 4;
    cfg.tucker.q = 2;
    const auto result = fpdc::multistart(data.x, cfg, 5);
    const auto labels = fpdc::assign_labels(result.best.model.probabilities);
    const double mc = fpdc::misclassification_rate(labels, data.labels, 4);
    CHECK(mc <= 0.05);
    CHECK(result.best.converged);
}

TEST_CASE("a single-run multistart equals the run it wraps") {
    const MatrixXd x = random_matrix(50, 4, 33);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 3;
    cfg.tucker.q = 2;
    cfg.pdc.seed = 17;
    const auto single = fpdc::multistart(x, cfg, 1);
    const auto direct = fpdc::fpdc(x, cfg);
    CHECK(single.best_run == 0);
    REQUIRE(single.objectives.size() == 1);
    CHECK(single.objectives[0] == direct.model.jdf_total);
    CHECK((single.best.model.centers.array() == direct.model.centers.array()).all());
}

TEST_CASE("multistart runs are indexed by seed shift") {
    const MatrixXd x = random_matrix(60, 3, 44);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 2;
    cfg.tucker.q = 2;
    cfg.pdc.seed = 100;
    const auto result = fpdc::multistart(x, cfg, 4);
    REQUIRE(result.objectives.size() == 4);

    fpdc::FpdcConfig<double> shifted = cfg;
    shifted.seed = cfg.seed + 2;
    shifted.pdc.seed = cfg.pdc.seed + 2;
    shifted.tucker.seed = cfg.tucker.seed + 2;
    const auto third = fpdc::fpdc(x, shifted);
    CHECK(result.objectives[2] == third.model.jdf_total);

    double best = std::numeric_limits<double>::infinity();
    for (const double v : result.objectives) best = std::min(best, v);
    CHECK(result.best.model.jdf_total == best);
    CHECK(result.objectives[std::size_t(result.best_run)] == best);
}

TEST_CASE("the thread count changes nothing but the wall clock") {
    const auto data = fpdc::generate_independent(fpdc::independent_config<double>(9));
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 4;
    cfg.tucker.q = 2;
    const auto serial = fpdc::multistart(data.x, cfg, 6, 1);
    const auto parallel = fpdc::multistart(data.x, cfg, 6, 3);
    REQUIRE(serial.objectives.size() == parallel.objectives.size());
    for (std::size_t r = 0; r < serial.objectives.size(); ++r)
        CHECK(serial.objectives[r] == parallel.objectives[r]);
    CHECK(serial.best_run == parallel.best_run);
    CHECK((serial.best.centers.array() == parallel.best.centers.array()).all());
}

TEST_CASE("oversized ranks are clamped to the data width") {
    const MatrixXd x = random_matrix(30, 3, 55);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 2;
    cfg.tucker.q = 99;
    const auto fit = fpdc::fpdc(x, cfg);
    CHECK(fit.loading.cols() == 3);
}

TEST_CASE("invalid inputs are rejected") {
    const MatrixXd x = random_matrix(3, 2, 66);
    fpdc::FpdcConfig<double> cfg;
    cfg.k = 0;
    CHECK_THROWS_AS((void)fpdc::fpdc(x, cfg), std::invalid_argument);
    cfg.k = 4;
    CHECK_THROWS_AS((void)fpdc::fpdc(x, cfg), std::invalid_argument);
    cfg.k = 2;
    MatrixXd bad = x;
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)fpdc::fpdc(bad, cfg), std::invalid_argument);
    CHECK_THROWS_AS((void)fpdc::multistart(x, cfg, 0), std::invalid_argument);
}
