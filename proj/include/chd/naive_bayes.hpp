#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/logistic.hpp" // detail::require_trainable

namespace chd {

/// Gaussian / frequency-table naive Bayes. Numeric features get per-class
/// mean and population variance (floored at 1e-9); categorical features get
/// unsmoothed per-class frequency tables, so an unseen category contributes
/// zero likelihood.
struct NaiveBayesModel {
    struct NumericStats {
        std::array<double, 2> mean{};
        std::array<double, 2> variance{};
    };
    struct CategoricalStats {
        // frequency[class][category]
        std::array<std::vector<double>, 2> frequency;
    };
    struct FeatureModel {
        bool categorical = false;
        NumericStats numeric;
        CategoricalStats cat;
    };

    std::array<double, 2> priors{};
    std::vector<FeatureModel> features;

    double predict_proba(const Record& rec) const {
        if (rec.cells.size() != features.size()) {
            throw shape_error("naive_bayes predict: record arity mismatch");
        }
        std::array<double, 2> log_post{std::log(priors[0]), std::log(priors[1])};
        for (std::size_t f = 0; f < features.size(); ++f) {
            const double v = rec.cells[f].value;
            const FeatureModel& fm = features[f];
            for (int cls = 0; cls < 2; ++cls) {
                double log_lik;
                if (fm.categorical) {
                    const auto c = static_cast<std::size_t>(v);
                    const double freq = c < fm.cat.frequency[cls].size()
                                            ? fm.cat.frequency[cls][c]
                                            : 0.0;
                    log_lik = freq > 0.0 ? std::log(freq)
                                         : -std::numeric_limits<double>::infinity();
                } else {
                    const double var = fm.numeric.variance[cls];
                    const double d = v - fm.numeric.mean[cls];
                    log_lik = -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
                }
                log_post[cls] += log_lik;
            }
        }
        // both classes impossible: fall back to the priors
        if (std::isinf(log_post[0]) && std::isinf(log_post[1])) return priors[1];
        const double m = std::max(log_post[0], log_post[1]);
        const double e0 = std::exp(log_post[0] - m);
        const double e1 = std::exp(log_post[1] - m);
        return e1 / (e0 + e1);
    }
};

inline NaiveBayesModel fit_nb(const Dataset& train) {
    detail::require_trainable(train, "fit_nb");
    NaiveBayesModel model;
    std::array<double, 2> class_n{};
    for (const auto& r : train.records) class_n[r.label == 1 ? 1 : 0] += 1.0;
    const double n = static_cast<double>(train.size());
    model.priors = {class_n[0] / n, class_n[1] / n};

    model.features.resize(train.feature_count());
    for (std::size_t f = 0; f < train.feature_count(); ++f) {
        NaiveBayesModel::FeatureModel& fm = model.features[f];
        const FeatureSpec& spec = train.schema.features[f];
        if (spec.kind == FeatureKind::categorical) {
            fm.categorical = true;
            for (int cls = 0; cls < 2; ++cls) {
                fm.cat.frequency[cls].assign(spec.categories.size(), 0.0);
            }
            for (const auto& r : train.records) {
                const int cls = r.label == 1 ? 1 : 0;
                fm.cat.frequency[cls][static_cast<std::size_t>(r.cells[f].value)] += 1.0;
            }
            for (int cls = 0; cls < 2; ++cls) {
                for (double& c : fm.cat.frequency[cls]) c /= class_n[cls];
            }
        } else {
            std::array<double, 2> sum{}, sum_sq{};
            for (const auto& r : train.records) {
                const int cls = r.label == 1 ? 1 : 0;
                sum[cls] += r.cells[f].value;
                sum_sq[cls] += r.cells[f].value * r.cells[f].value;
            }
            for (int cls = 0; cls < 2; ++cls) {
                const double mean = sum[cls] / class_n[cls];
                const double var = sum_sq[cls] / class_n[cls] - mean * mean;
                fm.numeric.mean[cls] = mean;
                fm.numeric.variance[cls] = std::max(var, 1e-9);
            }
        }
    }
    return model;
}

} // namespace chd
