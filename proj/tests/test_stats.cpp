#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conlang/stats.hpp"

using namespace conlang;

namespace {

std::vector<double> random_scores(Rng& rng, std::size_t n) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(static_cast<double>(rng.below(3)) * 50.0);
    return xs;
}

// Long-hand oracle: explicit two-pass means and variances.
double oracle_d(const std::vector<double>& a, const std::vector<double>& b) {
    double ma = 0, mb = 0;
    for (double x : a) ma += x;
    for (double x : b) mb += x;
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double va = 0, vb = 0;
    for (double x : a) va += (x - ma) * (x - ma);
    for (double x : b) vb += (x - mb) * (x - mb);
    va /= static_cast<double>(a.size() - 1);
    vb /= static_cast<double>(b.size() - 1);
    double pooled = ((static_cast<double>(a.size()) - 1) * va +
                     (static_cast<double>(b.size()) - 1) * vb) /
                    (static_cast<double>(a.size() + b.size()) - 2);
    return (ma - mb) / std::sqrt(pooled);
}

}  // namespace

TEST_CASE("cohens_d basics") {
    std::vector<double> same = {0, 50, 100, 50};
    CHECK(cohens_d(same, same) == 0.0);

    // mean difference 50; pooled variance (10000 + 0) / 6
    std::vector<double> a = {100, 100, 0, 0};
    std::vector<double> b = {0, 0, 0, 0};
    CHECK(cohens_d(a, b) == doctest::Approx(50.0 / std::sqrt(10000.0 / 6.0)).epsilon(1e-14));
    CHECK(cohens_d(a, b) == doctest::Approx(1.2247448713915890).epsilon(1e-12));
    CHECK(cohens_d(b, a) == doctest::Approx(-cohens_d(a, b)).epsilon(1e-14));

    // degenerate: zero pooled SD with unequal means -> signed infinity
    std::vector<double> c1 = {100, 100}, c0 = {0, 0};
    CHECK(std::isinf(cohens_d(c1, c0)));
    CHECK(cohens_d(c1, c0) > 0);
    CHECK(cohens_d(c0, c1) < 0);
    CHECK(cohens_d(c0, c0) == 0.0);

    CHECK_THROWS_AS(cohens_d({1.0}, {0.0, 1.0}), DegenerateSamples);
}

TEST_CASE("cohens_d matches the hand oracle on 100 random pairs") {
    Rng rng(61);
    for (int i = 0; i < 100; ++i) {
        auto a = random_scores(rng, 20 + rng.below(80));
        auto b = random_scores(rng, 20 + rng.below(80));
        double expected = oracle_d(a, b);
        if (!std::isfinite(expected)) continue;
        CHECK(cohens_d(a, b) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("cohens_d invariances") {
    Rng rng(67);
    auto a = random_scores(rng, 50);
    auto b = random_scores(rng, 50);
    double d = cohens_d(a, b);

    auto shift = [](std::vector<double> xs, double c) {
        for (double& x : xs) x += c;
        return xs;
    };
    CHECK(cohens_d(shift(a, 7.5), shift(b, 7.5)) == doctest::Approx(d).epsilon(1e-10));

    auto scale = [](std::vector<double> xs, double c) {
        for (double& x : xs) x *= c;
        return xs;
    };
    CHECK(cohens_d(scale(a, 3.0), scale(b, 3.0)) == doctest::Approx(d).epsilon(1e-10));
    CHECK(std::signbit(cohens_d(scale(a, 3.0), scale(b, 3.0))) == std::signbit(d));
}

TEST_CASE("effect matrix is antisymmetric and matches pairwise recomputation") {
    Rng rng(71);
    std::vector<std::pair<std::string, std::vector<double>>> conditions;
    for (int c = 0; c < 5; ++c)
        conditions.emplace_back("cond" + std::to_string(c), random_scores(rng, 100));

    auto report = effect_matrix(conditions);
    REQUIRE(report.matrix.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(report.matrix[i][i] == 0.0);
        for (std::size_t j = 0; j < 5; ++j) {
            CHECK(report.matrix[i][j] + report.matrix[j][i] == doctest::Approx(0.0).epsilon(1e-14));
            if (i != j)
                CHECK(report.matrix[i][j] ==
                      doctest::Approx(cohens_d(conditions[i].second, conditions[j].second))
                          .epsilon(1e-12));
        }
    }

    auto single = effect_matrix({conditions[0]});
    REQUIRE(single.matrix.size() == 1);
    CHECK(single.matrix[0][0] == 0.0);

    conditions[2].second.pop_back();
    CHECK_THROWS_AS(effect_matrix(conditions), MisalignedConditions);
}

TEST_CASE("ci experiment: constant runner gives zero widths") {
    auto report = ci_width_experiment({"a", "b"}, [](std::size_t, std::size_t) { return 100.0; },
                                      50, 1, 2000);
    REQUIRE(report.per_instance.size() == 2);
    for (const auto& w : report.per_instance) {
        CHECK(w.mean == 100.0);
        CHECK(w.bootstrap_width == 0.0);
        CHECK(w.normal_width == 0.0);
    }
    CHECK(report.width_mode == 0.0);
}

TEST_CASE("ci experiment: bootstrap width tracks the analytic width") {
    // Bernoulli scores at several success rates; n_keys = 200 per protocol.
    Rng source(73);
    std::vector<std::vector<double>> scores(6, std::vector<double>(200));
    const double probs[6] = {0.2, 0.35, 0.5, 0.5, 0.65, 0.8};
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t k = 0; k < 200; ++k)
            scores[i][k] = source.real() < probs[i] ? 100.0 : 0.0;

    auto report = ci_width_experiment(
        {"i0", "i1", "i2", "i3", "i4", "i5"},
        [&](std::size_t i, std::size_t k) { return scores[i][k]; }, 200, 5, 10000);
    for (const auto& w : report.per_instance) {
        REQUIRE(w.normal_width > 0.0);
        CHECK(std::abs(w.bootstrap_width - w.normal_width) / w.normal_width < 0.10);
    }
}

TEST_CASE("matrix breakdown composite identity") {
    // Synthetic split: every cell's composite equals the mean of the halves.
    Rng rng(79);
    std::vector<JudgedInstance> rows;
    for (int p = 0; p < 3; ++p) {
        for (int i = 0; i < 40; ++i) {
            for (const char* m : {"french", "reversed_french"}) {
                CellKey cell{std::to_string(p), "W", "eng_to_art", false,
                             std::optional<std::string>(m)};
                rows.push_back({cell, static_cast<int>(rng.below(3)) * 50});
            }
        }
    }
    auto breakdown = matrix_breakdown(rows);
    CHECK(breakdown.composite.size() == 3);
    for (const auto& [cell, stats] : breakdown.composite) {
        CHECK(stats.mean == doctest::Approx((breakdown.true_french[cell].mean +
                                             breakdown.reversed_french[cell].mean) /
                                            2.0)
                                .epsilon(1e-14));
    }

    // Published-value identity for the partition-1 grammar+CoT cell.
    CHECK(composite_cell(70.0, 62.0) == 66.0);

    // one-matrix-only input leaves the other side empty
    std::vector<JudgedInstance> lone;
    CellKey cell{"1", "W", "eng_to_art", false, std::optional<std::string>("french")};
    lone.push_back({cell, 100});
    auto partial = matrix_breakdown(lone);
    CHECK(partial.reversed_french.empty());
    CHECK(partial.composite.empty());

    // untagged rows are rejected
    std::vector<JudgedInstance> untagged = {{CellKey{"1", "W", "eng_to_art", false, {}}, 0}};
    CHECK_THROWS_AS(matrix_breakdown(untagged), InconsistentGrouping);
}
