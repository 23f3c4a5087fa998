#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <thread>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/rng.hpp"
#include "chd/tree.hpp"

namespace chd {

struct ForestConfig {
    std::size_t n_trees = 100;
    std::uint64_t seed = 0;
    std::size_t mtry = 0;      // 0 = floor(sqrt(feature count)), min 1
    bool bootstrap = true;     // test hook: off trains every tree on the full set
    std::size_t max_depth = 16;
    std::size_t min_leaf = 1;
    std::size_t threads = 1;
};

/// Bagged CART ensemble. Tree i draws its bootstrap sample and per-split
/// feature subsets from Rng::stream(seed, i), so the forest is bit-identical
/// for a given seed no matter how many threads fit it.
struct ForestModel {
    std::vector<Tree> trees;
    std::size_t arity = 0;
    ForestConfig config;

    /// Majority vote; probability is the fraction of trees voting class 1.
    double predict_proba(const Record& rec) const {
        if (rec.cells.size() != arity) throw shape_error("forest predict: record arity mismatch");
        std::size_t votes = 0;
        for (const auto& t : trees) {
            if (t.predict_value(rec) >= 0.5) ++votes;
        }
        return static_cast<double>(votes) / static_cast<double>(trees.size());
    }
};

inline ForestModel fit_forest(const Dataset& train, ForestConfig config = {}) {
    if (train.size() == 0) throw error("fit_forest: training set is empty");
    if (config.n_trees < 1) throw config_error("fit_forest: n_trees must be >= 1");

    const std::size_t p = train.feature_count();
    std::size_t mtry = config.mtry;
    if (mtry == 0) mtry = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(
                              static_cast<double>(p)))));
    mtry = std::min(mtry, p);

    std::vector<double> targets;
    targets.reserve(train.size());
    for (const auto& r : train.records) targets.push_back(r.label == 1 ? 1.0 : 0.0);

    ForestModel model;
    model.arity = p;
    model.config = config;
    model.trees.resize(config.n_trees);

    const TreeConfig tree_cfg{config.max_depth, config.min_leaf};
    const auto fit_one = [&](std::size_t t) {
        Rng rng = Rng::stream(config.seed, t);
        std::vector<std::size_t> rows(train.size());
        if (config.bootstrap) {
            for (auto& r : rows) r = rng.next_below(train.size());
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        const std::size_t effective_mtry = mtry == p ? 0 : mtry; // 0 = all, skip sampling
        detail::TreeBuilder builder(train, targets, SplitCriterion::gini, tree_cfg, effective_mtry,
                                    &rng);
        model.trees[t] = builder.build(rows);
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(config.threads, config.n_trees));
    if (workers == 1) {
        for (std::size_t t = 0; t < config.n_trees; ++t) fit_one(t);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < config.n_trees; t += workers) fit_one(t);
            });
        }
        for (auto& th : pool) th.join();
    }
    return model;
}

} // namespace chd
