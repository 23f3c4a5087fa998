#pragma once

#include <cstdint>
#include <vector>

#include "chd/adagrad.hpp"
#include "chd/dataset.hpp"
#include "chd/encode.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"

namespace chd {

struct LogisticConfig {
    std::size_t epochs = 500;
    double alpha = 0.1;
    double delta = 1e-8;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0; // kept for interface symmetry; the zero init is seed-free
};

struct LogisticModel {
    Encoder encoder;
    std::vector<double> weights;
    double bias = 0.0;
    LogisticConfig config;
    std::vector<double> loss_trace;

    double decision(const Record& rec) const {
        const auto x = encoder.encode(rec);
        return dot(x, weights) + bias;
    }
    double predict_proba(const Record& rec) const { return sigmoid(decision(rec)); }
};

/// Mean binary cross-entropy and its gradient over (X, y) at parameters
/// theta = [w..., b]. Shared by training and the finite-difference checks.
inline GradOracle logistic_oracle(const Matrix& x, const std::vector<int>& y) {
    return [&x, &y](const std::vector<double>& theta) {
        const std::size_t p = x.cols;
        if (theta.size() != p + 1) throw shape_error("logistic_oracle: arity mismatch");
        const double n = static_cast<double>(x.rows);
        Evaluation ev;
        ev.gradient.assign(p + 1, 0.0);
        for (std::size_t r = 0; r < x.rows; ++r) {
            double z = theta[p];
            for (std::size_t c = 0; c < p; ++c) z += theta[c] * x(r, c);
            const double yi = y[r] == 1 ? 1.0 : 0.0;
            ev.loss += softplus(z) - yi * z;
            const double residual = sigmoid(z) - yi;
            for (std::size_t c = 0; c < p; ++c) ev.gradient[c] += residual * x(r, c);
            ev.gradient[p] += residual;
        }
        ev.loss /= n;
        for (double& g : ev.gradient) g /= n;
        return ev;
    };
}

namespace detail {

inline void require_trainable(const Dataset& train, const char* who) {
    if (train.size() == 0) throw error(std::string(who) + ": training set is empty");
    const std::size_t pos = train.count_label(1);
    if (pos == 0 || pos == train.size()) {
        throw error(std::string(who) + ": training set must contain both classes");
    }
}

} // namespace detail

inline LogisticModel fit_logistic(const Dataset& train, LogisticConfig config = {}) {
    detail::require_trainable(train, "fit_logistic");
    LogisticModel model;
    model.config = config;
    model.encoder = Encoder::fit(train);
    const Matrix x = model.encoder.encode_all(train);
    const std::vector<int> y = labels_of(train);

    std::vector<double> theta(x.cols + 1, 0.0);
    auto state = AdagradState::fresh(theta.size(), config.alpha, config.delta);
    auto res = minimize(logistic_oracle(x, y), std::move(theta), config.epochs, std::move(state),
                        config.rel_tol);
    model.weights.assign(res.theta.begin(), res.theta.end() - 1);
    model.bias = res.theta.back();
    model.loss_trace = std::move(res.loss_trace);
    return model;
}

} // namespace chd
