#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"
#include "chd/tree.hpp"

namespace chd {

struct GbtConfig {
    std::size_t n_rounds = 100;
    double shrinkage = 0.1; // the usual nu
    std::size_t max_depth = 3;
    std::size_t min_leaf = 1;
};

/// Logistic-loss boosting. Each round fits a squared-error regression tree
/// to the residuals y - sigmoid(score) and replaces every leaf value with a
/// single Newton step sum(residual) / sum(sigma * (1 - sigma)), hessian sum
/// floored at 1e-12.
struct GbtModel {
    double init_score = 0.0; // log-odds of the positive rate
    std::vector<Tree> trees;
    double shrinkage = 0.1;
    std::size_t arity = 0;
    GbtConfig config;
    std::vector<double> loss_trace; // mean logistic loss, entry 0 before any round

    double score(const Record& rec) const {
        double s = init_score;
        for (const auto& t : trees) s += shrinkage * t.predict_value(rec);
        return s;
    }

    double predict_proba(const Record& rec) const {
        if (rec.cells.size() != arity) throw shape_error("gbt predict: record arity mismatch");
        return sigmoid(score(rec));
    }
};

inline GbtModel fit_gbt(const Dataset& train, GbtConfig config = {}) {
    detail::require_trainable(train, "fit_gbt");
    if (!(config.shrinkage > 0.0 && config.shrinkage <= 1.0)) {
        throw config_error("fit_gbt: shrinkage must lie in (0, 1]");
    }

    const std::size_t n = train.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = train.records[i].label == 1 ? 1.0 : 0.0;
    const double pos_rate = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

    GbtModel model;
    model.arity = train.feature_count();
    model.config = config;
    model.shrinkage = config.shrinkage;
    model.init_score = std::log(pos_rate / (1.0 - pos_rate));

    std::vector<double> scores(n, model.init_score);
    const auto mean_loss = [&] {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += softplus(scores[i]) - y[i] * scores[i];
        return loss / static_cast<double>(n);
    };
    model.loss_trace.push_back(mean_loss());

    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), 0);
    const TreeConfig tree_cfg{config.max_depth, config.min_leaf};

    std::vector<double> residuals(n), hessians(n);
    for (std::size_t round = 0; round < config.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(scores[i]);
            residuals[i] = y[i] - p;
            hessians[i] = p * (1.0 - p);
        }
        detail::TreeBuilder builder(train, residuals, SplitCriterion::sse, tree_cfg, 0, nullptr);
        Tree tree = builder.build(rows);

        // Newton leaf values from the rows that land in each leaf
        std::vector<double> num(tree.nodes.size(), 0.0), den(tree.nodes.size(), 0.0);
        std::vector<std::size_t> leaf_of(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t leaf = tree.leaf_index(train.records[i]);
            leaf_of[i] = leaf;
            num[leaf] += residuals[i];
            den[leaf] += hessians[i];
        }
        for (std::size_t j = 0; j < tree.nodes.size(); ++j) {
            if (tree.nodes[j].is_leaf()) {
                tree.nodes[j].value = num[j] / std::max(den[j], 1e-12);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] += config.shrinkage * tree.nodes[leaf_of[i]].value;
        }
        model.trees.push_back(std::move(tree));
        model.loss_trace.push_back(mean_loss());
    }
    return model;
}

} // namespace chd
