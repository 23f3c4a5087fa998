#pragma once

#include <cstdint>
#include <vector>

#include "chd/adagrad.hpp"
#include "chd/dataset.hpp"
#include "chd/encode.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"

namespace chd {

struct SvmConfig {
    double lambda = 1e-3;
    std::size_t epochs = 500;
    double alpha = 0.1;
    double delta = 1e-8;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0;
};

/// Linear primal SVM. The decision value is squashed through a sigmoid for
/// predict_proba; uncalibrated, but ordered consistently with the margin
/// and equal to 1/2 exactly on the decision boundary.
struct LinearSvmModel {
    Encoder encoder;
    std::vector<double> weights;
    double bias = 0.0;
    SvmConfig config;
    std::vector<double> loss_trace;

    double decision(const Record& rec) const {
        const auto x = encoder.encode(rec);
        return dot(x, weights) + bias;
    }
    double predict_proba(const Record& rec) const { return sigmoid(decision(rec)); }
};

/// lambda/2 * ||w||^2 + mean hinge loss over labels remapped to {-1, +1}.
/// The bias is unregularized; at the hinge kink the subgradient 0 is used.
inline GradOracle svm_oracle(const Matrix& x, const std::vector<int>& y, double lambda) {
    return [&x, &y, lambda](const std::vector<double>& theta) {
        const std::size_t p = x.cols;
        if (theta.size() != p + 1) throw shape_error("svm_oracle: arity mismatch");
        const double n = static_cast<double>(x.rows);
        Evaluation ev;
        ev.gradient.assign(p + 1, 0.0);
        for (std::size_t c = 0; c < p; ++c) {
            ev.loss += 0.5 * lambda * theta[c] * theta[c];
            ev.gradient[c] = lambda * theta[c];
        }
        for (std::size_t r = 0; r < x.rows; ++r) {
            const double yi = y[r] == 1 ? 1.0 : -1.0;
            double z = theta[p];
            for (std::size_t c = 0; c < p; ++c) z += theta[c] * x(r, c);
            const double margin = yi * z;
            if (margin < 1.0) {
                ev.loss += (1.0 - margin) / n;
                for (std::size_t c = 0; c < p; ++c) ev.gradient[c] += -yi * x(r, c) / n;
                ev.gradient[p] += -yi / n;
            }
        }
        return ev;
    };
}

inline LinearSvmModel fit_svm(const Dataset& train, SvmConfig config = {}) {
    detail::require_trainable(train, "fit_svm");
    LinearSvmModel model;
    model.config = config;
    model.encoder = Encoder::fit(train);
    const Matrix x = model.encoder.encode_all(train);
    const std::vector<int> y = labels_of(train);

    std::vector<double> theta(x.cols + 1, 0.0);
    auto state = AdagradState::fresh(theta.size(), config.alpha, config.delta);
    auto res = minimize(svm_oracle(x, y, config.lambda), std::move(theta), config.epochs,
                        std::move(state), config.rel_tol);
    model.weights.assign(res.theta.begin(), res.theta.end() - 1);
    model.bias = res.theta.back();
    model.loss_trace = std::move(res.loss_trace);
    return model;
}

} // namespace chd
