#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "chd/csv.hpp"
#include "chd/dataset.hpp"
#include "chd/diff_metric.hpp"
#include "chd/error.hpp"
#include "chd/rng.hpp"

namespace chd {

/// Per-feature relevance scores. Higher means the feature separates nearby
/// records of different classes better than it separates records of the
/// same class; a feature constant across the dataset scores exactly 0.
struct FeatureWeights {
    std::vector<double> weights;
    std::vector<std::string> feature_names;
    std::size_t m = 0;
    std::size_t k = 1;
    std::uint64_t seed = 0;
};

/// Replaces the seeded sampling with full enumeration: every record acts as
/// a focal sample once and the hit/miss contribution is the average over
/// all admissible choices. Used to check the sampled estimator against an
/// exhaustive oracle on small datasets.
enum class ReliefSampling { seeded_random, exhaustive };

namespace detail {

struct ClassIndex {
    std::vector<std::size_t> same[2]; // record indices per label

    explicit ClassIndex(const Dataset& ds) {
        for (std::size_t i = 0; i < ds.size(); ++i) {
            same[ds.records[i].label == 1 ? 1 : 0].push_back(i);
        }
    }
};

/// Hit diffs push a weight down, miss diffs push it up, so a feature whose
/// values agree within a class and disagree across classes ends up with the
/// largest weight.
inline void accumulate_pair(const DiffMetric& metric, const Dataset& ds, std::size_t focal,
                            std::size_t hit, std::size_t miss, double scale,
                            std::vector<double>& acc) {
    const Record& r = ds.records[focal];
    const Record& h = ds.records[hit];
    const Record& m = ds.records[miss];
    for (std::size_t f = 0; f < acc.size(); ++f) {
        acc[f] += scale * (metric.diff(f, r, m) - metric.diff(f, r, h));
    }
}

/// Indices of the `k` records closest to `focal` among `pool`, excluding
/// `focal` itself. Distance ties break toward the lower record index.
inline std::vector<std::size_t> k_nearest(const DiffMetric& metric, const Dataset& ds,
                                          std::size_t focal, const std::vector<std::size_t>& pool,
                                          std::size_t k) {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(pool.size());
    for (std::size_t i : pool) {
        if (i == focal) continue;
        scored.emplace_back(metric.distance(ds.records[focal], ds.records[i]), i);
    }
    std::sort(scored.begin(), scored.end());
    if (scored.size() > k) scored.resize(k);
    std::vector<std::size_t> out;
    out.reserve(scored.size());
    for (const auto& [dist, i] : scored) out.push_back(i);
    return out;
}

inline void require_both_classes(const ClassIndex& idx) {
    if (idx.same[0].size() < 2 || idx.same[1].size() < 2) {
        throw error("relieff: each class needs at least 2 records");
    }
}

inline FeatureWeights make_result(const Dataset& ds, std::vector<double> weights, std::size_t m,
                                  std::size_t k, std::uint64_t seed) {
    FeatureWeights fw;
    fw.weights = std::move(weights);
    fw.m = m;
    fw.k = k;
    fw.seed = seed;
    fw.feature_names.reserve(ds.feature_count());
    for (const auto& f : ds.schema.features) fw.feature_names.push_back(f.name);
    return fw;
}

} // namespace detail

/// Literal random-pair variant: each of m focal samples is compared with
/// one uniformly drawn same-class record (hit) and one uniformly drawn
/// other-class record (miss); weights are the averaged hit/miss difference
/// contrasts.
inline FeatureWeights relieff_literal(const Dataset& ds, std::size_t m, std::uint64_t seed,
                                      ReliefSampling sampling = ReliefSampling::seeded_random) {
    if (m < 1) throw config_error("relieff_literal: m must be >= 1");
    detail::ClassIndex idx(ds);
    detail::require_both_classes(idx);
    const DiffMetric metric(ds);
    std::vector<double> acc(ds.feature_count(), 0.0);

    if (sampling == ReliefSampling::exhaustive) {
        for (std::size_t focal = 0; focal < ds.size(); ++focal) {
            const int cls = ds.records[focal].label == 1 ? 1 : 0;
            const auto& hits = idx.same[cls];
            const auto& misses = idx.same[1 - cls];
            const double scale =
                1.0 / (static_cast<double>(hits.size() - 1) * static_cast<double>(misses.size()));
            for (std::size_t hit : hits) {
                if (hit == focal) continue;
                for (std::size_t miss : misses) {
                    detail::accumulate_pair(metric, ds, focal, hit, miss, scale, acc);
                }
            }
        }
        for (double& w : acc) w /= static_cast<double>(ds.size());
        return detail::make_result(ds, std::move(acc), ds.size(), 1, seed);
    }

    Rng rng(seed);
    for (std::size_t s = 0; s < m; ++s) {
        const std::size_t focal = rng.next_below(ds.size());
        const int cls = ds.records[focal].label == 1 ? 1 : 0;
        const auto& hits = idx.same[cls];
        const auto& misses = idx.same[1 - cls];
        // a second sample from the same class: re-draw until it differs
        std::size_t hit = focal;
        while (hit == focal) hit = hits[rng.next_below(hits.size())];
        const std::size_t miss = misses[rng.next_below(misses.size())];
        detail::accumulate_pair(metric, ds, focal, hit, miss, 1.0, acc);
    }
    for (double& w : acc) w /= static_cast<double>(m);
    return detail::make_result(ds, std::move(acc), m, 1, seed);
}

/// Distance-based variant: hits and misses are the k nearest same-class /
/// other-class records under the DiffMetric, contributions averaged over
/// the k neighbours.
inline FeatureWeights relieff_knn(const Dataset& ds, std::size_t m, std::size_t k,
                                  std::uint64_t seed,
                                  ReliefSampling sampling = ReliefSampling::seeded_random) {
    if (m < 1) throw config_error("relieff_knn: m must be >= 1");
    if (k < 1) throw config_error("relieff_knn: k must be >= 1");
    detail::ClassIndex idx(ds);
    detail::require_both_classes(idx);
    if (k >= idx.same[0].size() || k >= idx.same[1].size()) {
        throw config_error("relieff_knn: k must be smaller than each class size");
    }
    const DiffMetric metric(ds);
    std::vector<double> acc(ds.feature_count(), 0.0);

    const auto visit_focal = [&](std::size_t focal) {
        const int cls = ds.records[focal].label == 1 ? 1 : 0;
        const auto hits = detail::k_nearest(metric, ds, focal, idx.same[cls], k);
        const auto misses = detail::k_nearest(metric, ds, focal, idx.same[1 - cls], k);
        const double scale = 1.0 / static_cast<double>(k);
        const Record& r = ds.records[focal];
        for (std::size_t f = 0; f < acc.size(); ++f) {
            double contrib = 0.0;
            for (std::size_t hit : hits) contrib -= metric.diff(f, r, ds.records[hit]);
            for (std::size_t miss : misses) contrib += metric.diff(f, r, ds.records[miss]);
            acc[f] += scale * contrib;
        }
    };

    if (sampling == ReliefSampling::exhaustive) {
        for (std::size_t focal = 0; focal < ds.size(); ++focal) visit_focal(focal);
        for (double& w : acc) w /= static_cast<double>(ds.size());
        return detail::make_result(ds, std::move(acc), ds.size(), k, seed);
    }

    Rng rng(seed);
    for (std::size_t s = 0; s < m; ++s) visit_focal(rng.next_below(ds.size()));
    for (double& w : acc) w /= static_cast<double>(m);
    return detail::make_result(ds, std::move(acc), m, k, seed);
}

/// Ranking order: weight descending, ties toward the lower feature index.
inline std::vector<std::size_t> rank_features(const FeatureWeights& fw) {
    std::vector<std::size_t> order(fw.weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fw.weights[a] > fw.weights[b];
    });
    return order;
}

/// The n top-ranked feature names.
inline std::vector<std::string> select_top(const FeatureWeights& fw, std::size_t n) {
    if (n < 1 || n > fw.weights.size()) {
        throw config_error("select_top: n must lie in [1, feature count]");
    }
    const auto order = rank_features(fw);
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fw.feature_names[order[i]]);
    return out;
}

/// Two-column text table (feature name, weight), sorted by rank.
inline std::string weights_to_text(const FeatureWeights& fw) {
    std::ostringstream os;
    for (std::size_t i : rank_features(fw)) {
        os << fw.feature_names[i] << ' ' << detail::format_double(fw.weights[i]) << '\n';
    }
    return os.str();
}

} // namespace chd
