#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "conlang/errors.hpp"
#include "conlang/evaluation.hpp"
#include "conlang/rng.hpp"

namespace conlang {

inline double mean_of(const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

// Standardized mean difference with Bessel-corrected pooled variance.
inline double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw DegenerateSamples("cohens_d needs n >= 2 per sample");
    const double ma = mean_of(a), mb = mean_of(b);
    double ssa = 0.0, ssb = 0.0;
    for (double x : a) ssa += (x - ma) * (x - ma);
    for (double x : b) ssb += (x - mb) * (x - mb);
    const double pooled_var = (ssa + ssb) / static_cast<double>(a.size() + b.size() - 2);
    if (pooled_var == 0.0) {
        if (ma == mb) return 0.0;
        // Degenerate: report a signed infinity sentinel.
        return ma > mb ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    }
    return (ma - mb) / std::sqrt(pooled_var);
}

struct EffectReport {
    std::vector<std::string> conditions;
    std::vector<std::vector<double>> matrix;  // matrix[i][j] = d(cond_i, cond_j)
    std::vector<std::size_t> sample_sizes;
};

inline EffectReport effect_matrix(
    const std::vector<std::pair<std::string, std::vector<double>>>& scores_by_condition) {
    EffectReport report;
    const std::size_t n = scores_by_condition.size();
    if (n == 0) return report;
    const std::size_t sample_n = scores_by_condition.front().second.size();
    for (const auto& [label, scores] : scores_by_condition) {
        if (scores.size() != sample_n)
            throw MisalignedConditions("condition " + label + " covers a different instance set");
        report.conditions.push_back(label);
        report.sample_sizes.push_back(scores.size());
    }
    report.matrix.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = cohens_d(scores_by_condition[i].second,
                                      scores_by_condition[j].second);
            report.matrix[i][j] = d;
            report.matrix[j][i] = -d;
        }
    }
    return report;
}

struct CiWidth {
    std::string instance_id;
    double mean = 0.0;
    double bootstrap_width = 0.0;  // two-sided 95% percentile interval
    double normal_width = 0.0;     // 2 * 1.96 * SE
};

struct CiExperimentReport {
    std::vector<CiWidth> per_instance;
    double width_mode = 0.0;  // mode of bootstrap widths, 0.1-unit bins
};

// Per-instance score variability across n_keys re-encipherments.
// runner(instance_index, key_index) must return a score in [0, 100].
inline CiExperimentReport ci_width_experiment(
    const std::vector<std::string>& base_instance_ids,
    const std::function<double(std::size_t, std::size_t)>& runner, std::size_t n_keys = 200,
    std::uint64_t bootstrap_seed = 1, std::size_t n_resamples = 10000) {
    CiExperimentReport report;
    Rng rng(bootstrap_seed);
    for (std::size_t i = 0; i < base_instance_ids.size(); ++i) {
        std::vector<double> scores;
        scores.reserve(n_keys);
        for (std::size_t k = 0; k < n_keys; ++k) scores.push_back(runner(i, k));

        CiWidth w;
        w.instance_id = base_instance_ids[i];
        w.mean = mean_of(scores);

        std::vector<double> resample_means;
        resample_means.reserve(n_resamples);
        for (std::size_t r = 0; r < n_resamples; ++r) {
            double sum = 0.0;
            for (std::size_t k = 0; k < n_keys; ++k) sum += scores[rng.below(scores.size())];
            resample_means.push_back(sum / static_cast<double>(n_keys));
        }
        std::sort(resample_means.begin(), resample_means.end());
        const auto lo = static_cast<std::size_t>(0.025 * static_cast<double>(n_resamples - 1));
        const auto hi = static_cast<std::size_t>(0.975 * static_cast<double>(n_resamples - 1));
        w.bootstrap_width = resample_means[hi] - resample_means[lo];

        double ss = 0.0;
        for (double s : scores) ss += (s - w.mean) * (s - w.mean);
        const double sd = std::sqrt(ss / static_cast<double>(n_keys - 1));
        w.normal_width = 2.0 * 1.959963984540054 * sd / std::sqrt(static_cast<double>(n_keys));

        report.per_instance.push_back(w);
    }

    // Mode over 0.1-wide bins of the bootstrap widths.
    std::map<long long, std::size_t> bins;
    for (const auto& w : report.per_instance)
        bins[static_cast<long long>(std::llround(w.bootstrap_width * 10.0))]++;
    std::size_t best = 0;
    for (const auto& [bin, count] : bins) {
        if (count > best) {
            best = count;
            report.width_mode = static_cast<double>(bin) / 10.0;
        }
    }
    return report;
}

struct MatrixBreakdown {
    std::map<CellKey, CellStats> true_french;
    std::map<CellKey, CellStats> reversed_french;
    std::map<CellKey, CellStats> composite;  // arithmetic mean of the pair
};

// Split French-partition judgments by matrix and rebuild the composite table.
// Rows must carry matrix tags; the composite cell is the mean of the two
// matrix-split cells (the published French cells are this 50/50 composite).
inline MatrixBreakdown matrix_breakdown(const std::vector<JudgedInstance>& rows) {
    std::vector<JudgedInstance> true_rows, reversed_rows;
    for (const auto& row : rows) {
        if (!row.cell.matrix)
            throw InconsistentGrouping("matrix_breakdown requires matrix-tagged judgments");
        JudgedInstance untagged = row;
        untagged.cell.matrix.reset();
        if (*row.cell.matrix == "french") {
            true_rows.push_back(untagged);
        } else if (*row.cell.matrix == "reversed_french") {
            reversed_rows.push_back(untagged);
        } else {
            throw InconsistentGrouping("non-French matrix in breakdown: " + *row.cell.matrix);
        }
    }
    MatrixBreakdown out;
    out.true_french = aggregate_accuracy(true_rows);
    out.reversed_french = aggregate_accuracy(reversed_rows);
    for (const auto& [cell, t] : out.true_french) {
        auto it = out.reversed_french.find(cell);
        if (it == out.reversed_french.end()) continue;
        out.composite[cell] = {(t.mean + it->second.mean) / 2.0, t.count + it->second.count};
    }
    return out;
}

// Composite of two published cell values (used to check table identities).
inline double composite_cell(double true_french_mean, double reversed_french_mean) {
    return (true_french_mean + reversed_french_mean) / 2.0;
}

}  // namespace conlang
