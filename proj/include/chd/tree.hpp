#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/rng.hpp"

namespace chd {

/// Binary decision tree stored as a flat node array (root at index 0).
/// Numeric splits send `value <= threshold` left; categorical splits send
/// categories whose bit is set in `subset_mask` left. Leaves carry both a
/// class distribution (classification) and a real value (regression /
/// probability of class 1).
struct Tree {
    struct Node {
        std::int32_t left = -1; // -1 marks a leaf
        std::int32_t right = -1;
        std::uint32_t feature = 0;
        bool categorical = false;
        double threshold = 0.0;
        std::uint32_t subset_mask = 0;
        double value = 0.0;  // leaf payload: p(class 1) or regression value
        double count0 = 0.0; // leaf class counts (classification trees)
        double count1 = 0.0;

        bool is_leaf() const { return left < 0; }
        bool operator==(const Node&) const = default;
    };

    std::vector<Node> nodes;

    bool operator==(const Tree&) const = default;

    std::size_t leaf_index(const Record& rec) const {
        if (rec.cells.empty() && !nodes.empty() && !nodes[0].is_leaf()) {
            throw shape_error("tree: empty record");
        }
        std::size_t i = 0;
        while (!nodes[i].is_leaf()) {
            const Node& n = nodes[i];
            if (n.feature >= rec.cells.size()) {
                throw shape_error("tree: record arity smaller than split feature index");
            }
            const double v = rec.cells[n.feature].value;
            bool go_left;
            if (n.categorical) {
                go_left = (n.subset_mask >> static_cast<std::uint32_t>(v)) & 1u;
            } else {
                go_left = v <= n.threshold;
            }
            i = static_cast<std::size_t>(go_left ? n.left : n.right);
        }
        return i;
    }

    double predict_value(const Record& rec) const { return nodes[leaf_index(rec)].value; }

    std::size_t depth() const { return depth_below(0); }

private:
    std::size_t depth_below(std::size_t i) const {
        const Node& n = nodes[i];
        if (n.is_leaf()) return 0;
        return 1 + std::max(depth_below(static_cast<std::size_t>(n.left)),
                            depth_below(static_cast<std::size_t>(n.right)));
    }
};

struct TreeConfig {
    std::size_t max_depth = 6;
    std::size_t min_leaf = 2;
};

enum class SplitCriterion {
    gini, // classification: Gini impurity decrease on 0/1 targets
    sse,  // regression: squared-error reduction
};

namespace detail {

struct SideStats {
    double n = 0.0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double y) {
        n += 1.0;
        sum += y;
        sum_sq += y * y;
    }
};

/// Lower is better. Gini and SSE are both expressible from (n, sum, sum_sq)
/// for 0/1 or real targets.
inline double side_cost(const SideStats& s, SplitCriterion crit) {
    if (s.n == 0.0) return 0.0;
    if (crit == SplitCriterion::gini) {
        const double p1 = s.sum / s.n;
        const double p0 = 1.0 - p1;
        return s.n * (1.0 - p0 * p0 - p1 * p1);
    }
    return s.sum_sq - s.sum * s.sum / s.n;
}

struct SplitCandidate {
    bool found = false;
    double decrease = 0.0;
    std::uint32_t feature = 0;
    bool categorical = false;
    double threshold = 0.0;
    std::uint32_t subset_mask = 0;

    /// Deterministic preference order: larger decrease first, then lower
    /// feature index, then lower threshold / subset mask.
    bool better_than(const SplitCandidate& o) const {
        if (!o.found) return found;
        if (!found) return false;
        if (decrease != o.decrease) return decrease > o.decrease;
        if (feature != o.feature) return feature < o.feature;
        if (categorical != o.categorical) return !categorical;
        if (!categorical) return threshold < o.threshold;
        return subset_mask < o.subset_mask;
    }
};

class TreeBuilder {
public:
    TreeBuilder(const Dataset& ds, const std::vector<double>& targets, SplitCriterion crit,
                TreeConfig cfg, std::size_t mtry, Rng* rng)
        : ds_(ds), targets_(targets), crit_(crit), cfg_(cfg), mtry_(mtry), rng_(rng) {}

    Tree build(const std::vector<std::size_t>& rows) {
        Tree tree;
        tree.nodes.emplace_back();
        grow(tree, 0, rows, 0);
        return tree;
    }

private:
    void make_leaf(Tree& tree, std::size_t node, const std::vector<std::size_t>& rows) {
        SideStats st;
        for (std::size_t r : rows) st.add(targets_[r]);
        Tree::Node& n = tree.nodes[node];
        n.left = n.right = -1;
        n.count1 = st.sum;
        n.count0 = st.n - st.sum;
        n.value = st.n > 0.0 ? st.sum / st.n : 0.0;
    }

    std::vector<std::uint32_t> candidate_features() {
        const std::size_t p = ds_.feature_count();
        std::vector<std::uint32_t> feats(p);
        std::iota(feats.begin(), feats.end(), 0u);
        if (mtry_ > 0 && mtry_ < p && rng_ != nullptr) {
            // sample mtry features without replacement, keep index order
            for (std::size_t i = 0; i < mtry_; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng_->next_below(p - i));
                std::swap(feats[i], feats[j]);
            }
            feats.resize(mtry_);
            std::sort(feats.begin(), feats.end());
        }
        return feats;
    }

    SplitCandidate best_numeric_split(std::uint32_t f, const std::vector<std::size_t>& rows,
                                      double parent_cost) const {
        std::vector<std::pair<double, std::size_t>> vals;
        vals.reserve(rows.size());
        for (std::size_t r : rows) vals.emplace_back(ds_.records[r].cells[f].value, r);
        std::sort(vals.begin(), vals.end());

        SideStats left, right;
        for (const auto& [v, r] : vals) right.add(targets_[r]);

        SplitCandidate best;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
            const double y = targets_[vals[i].second];
            left.add(y);
            right.n -= 1.0;
            right.sum -= y;
            right.sum_sq -= y * y;
            if (vals[i].first == vals[i + 1].first) continue;
            if (left.n < cfg_.min_leaf || right.n < cfg_.min_leaf) continue;
            double thr = 0.5 * (vals[i].first + vals[i + 1].first);
            if (thr >= vals[i + 1].first) thr = vals[i].first; // midpoint rounded up
            const double decrease = parent_cost - side_cost(left, crit_) - side_cost(right, crit_);
            SplitCandidate cand{true, decrease, f, false, thr, 0};
            if (cand.better_than(best)) best = cand;
        }
        return best;
    }

    SplitCandidate best_categorical_split(std::uint32_t f, const std::vector<std::size_t>& rows,
                                          double parent_cost) const {
        const std::size_t n_cat = ds_.schema.features[f].categories.size();
        if (n_cat > 32) throw schema_error("tree: more than 32 categories is unsupported");
        std::vector<SideStats> per_cat(n_cat);
        for (std::size_t r : rows) {
            per_cat[static_cast<std::size_t>(ds_.records[r].cells[f].value)].add(targets_[r]);
        }
        // order present categories by mean target (prefix subsets of this
        // order contain the optimal binary partition for both criteria)
        std::vector<std::size_t> present;
        for (std::size_t c = 0; c < n_cat; ++c) {
            if (per_cat[c].n > 0.0) present.push_back(c);
        }
        if (present.size() < 2) return {};
        std::sort(present.begin(), present.end(), [&](std::size_t a, std::size_t b) {
            const double ma = per_cat[a].sum / per_cat[a].n;
            const double mb = per_cat[b].sum / per_cat[b].n;
            if (ma != mb) return ma < mb;
            return a < b;
        });

        SideStats left, right;
        for (std::size_t c : present) {
            right.n += per_cat[c].n;
            right.sum += per_cat[c].sum;
            right.sum_sq += per_cat[c].sum_sq;
        }
        SplitCandidate best;
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i + 1 < present.size(); ++i) {
            const std::size_t c = present[i];
            mask |= 1u << c;
            left.n += per_cat[c].n;
            left.sum += per_cat[c].sum;
            left.sum_sq += per_cat[c].sum_sq;
            right.n -= per_cat[c].n;
            right.sum -= per_cat[c].sum;
            right.sum_sq -= per_cat[c].sum_sq;
            if (left.n < cfg_.min_leaf || right.n < cfg_.min_leaf) continue;
            const double decrease = parent_cost - side_cost(left, crit_) - side_cost(right, crit_);
            SplitCandidate cand{true, decrease, f, true, 0.0, mask};
            if (cand.better_than(best)) best = cand;
        }
        return best;
    }

    void grow(Tree& tree, std::size_t node, const std::vector<std::size_t>& rows,
              std::size_t depth) {
        bool pure = true;
        for (std::size_t r : rows) {
            if (targets_[r] != targets_[rows[0]]) {
                pure = false;
                break;
            }
        }
        if (pure || depth >= cfg_.max_depth || rows.size() < 2 * cfg_.min_leaf) {
            make_leaf(tree, node, rows);
            return;
        }

        SideStats all;
        for (std::size_t r : rows) all.add(targets_[r]);
        const double parent_cost = side_cost(all, crit_);

        SplitCandidate best;
        for (std::uint32_t f : candidate_features()) {
            const SplitCandidate cand =
                ds_.schema.features[f].kind == FeatureKind::numeric
                    ? best_numeric_split(f, rows, parent_cost)
                    : best_categorical_split(f, rows, parent_cost);
            if (cand.better_than(best)) best = cand;
        }
        if (!best.found || best.decrease <= 0.0) {
            make_leaf(tree, node, rows);
            return;
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            const double v = ds_.records[r].cells[best.feature].value;
            const bool go_left = best.categorical
                                     ? ((best.subset_mask >> static_cast<std::uint32_t>(v)) & 1u)
                                     : v <= best.threshold;
            (go_left ? left_rows : right_rows).push_back(r);
        }

        Tree::Node& n = tree.nodes[node];
        n.feature = best.feature;
        n.categorical = best.categorical;
        n.threshold = best.threshold;
        n.subset_mask = best.subset_mask;
        n.left = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const auto left_index = static_cast<std::size_t>(tree.nodes[node].left);
        grow(tree, left_index, left_rows, depth + 1);
        tree.nodes[node].right = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const auto right_index = static_cast<std::size_t>(tree.nodes[node].right);
        grow(tree, right_index, right_rows, depth + 1);
    }

    const Dataset& ds_;
    const std::vector<double>& targets_;
    SplitCriterion crit_;
    TreeConfig cfg_;
    std::size_t mtry_; // 0 = consider every feature
    Rng* rng_;
};

} // namespace detail

/// CART on the whole training set: greedy Gini-decrease splits, numeric
/// thresholds at midpoints of sorted distinct values, stop at pure nodes,
/// the depth cap, or the min_leaf floor.
struct TreeModel {
    Tree tree;
    std::size_t arity = 0;
    TreeConfig config;

    double predict_proba(const Record& rec) const {
        if (rec.cells.size() != arity) throw shape_error("tree predict: record arity mismatch");
        return tree.predict_value(rec);
    }
};

inline TreeModel fit_tree(const Dataset& train, TreeConfig config = {}) {
    if (train.size() == 0) throw error("fit_tree: training set is empty");
    std::vector<double> targets;
    targets.reserve(train.size());
    for (const auto& r : train.records) targets.push_back(r.label == 1 ? 1.0 : 0.0);
    std::vector<std::size_t> rows(train.size());
    std::iota(rows.begin(), rows.end(), 0);

    detail::TreeBuilder builder(train, targets, SplitCriterion::gini, config, 0, nullptr);
    TreeModel model;
    model.tree = builder.build(rows);
    model.arity = train.feature_count();
    model.config = config;
    return model;
}

} // namespace chd
