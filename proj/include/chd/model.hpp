#pragma once

#include <string>
#include <variant>

#include "chd/forest.hpp"
#include "chd/gbt.hpp"
#include "chd/logistic.hpp"
#include "chd/mlp.hpp"
#include "chd/naive_bayes.hpp"
#include "chd/svm.hpp"
#include "chd/tree.hpp"

namespace chd {

using Model = std::variant<LogisticModel, MlpModel, NaiveBayesModel, TreeModel, ForestModel,
                           GbtModel, LinearSvmModel>;

inline const char* model_kind(const Model& m) {
    struct Visitor {
        const char* operator()(const LogisticModel&) const { return "logistic_regression"; }
        const char* operator()(const MlpModel&) const { return "mlp"; }
        const char* operator()(const NaiveBayesModel&) const { return "naive_bayes"; }
        const char* operator()(const TreeModel&) const { return "decision_tree"; }
        const char* operator()(const ForestModel&) const { return "random_forest"; }
        const char* operator()(const GbtModel&) const { return "gradient_boosted_tree"; }
        const char* operator()(const LinearSvmModel&) const { return "svm"; }
    };
    return std::visit(Visitor{}, m);
}

inline double predict_proba(const Model& m, const Record& rec) {
    return std::visit([&](const auto& model) { return model.predict_proba(rec); }, m);
}

/// Class 1 wins the exact-0.5 tie.
inline int predict(const Model& m, const Record& rec) {
    return predict_proba(m, rec) >= 0.5 ? 1 : 0;
}

} // namespace chd
