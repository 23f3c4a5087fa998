#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "chd/activation.hpp"
#include "chd/adagrad.hpp"
#include "chd/dataset.hpp"
#include "chd/encode.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"
#include "chd/rng.hpp"

namespace chd {

struct MlpConfig {
    std::size_t hidden_width = 16;
    std::size_t epochs = 500;
    double alpha = 0.1;
    double delta = 1e-8;
    double rel_tol = 1e-8;
    std::uint64_t seed = 0;
};

/// One hidden relu layer, sigmoid scalar output. Parameters are flattened
/// as [W1 (h x d, row-major), b1 (h), W2 (h), b2] for the optimizer and the
/// gradient checks.
struct MlpModel {
    Encoder encoder;
    std::size_t input_width = 0;
    std::size_t hidden_width = 0;
    std::vector<double> params;
    MlpConfig config;
    std::vector<double> loss_trace;

    std::size_t param_count() const { return hidden_width * input_width + hidden_width + hidden_width + 1; }

    double forward(const std::vector<double>& x) const { return forward_params(params, x); }

    double forward_params(const std::vector<double>& theta, const std::vector<double>& x) const {
        const std::size_t d = input_width, h = hidden_width;
        const double* w1 = theta.data();
        const double* b1 = w1 + h * d;
        const double* w2 = b1 + h;
        const double b2 = w2[h];
        double z = b2;
        for (std::size_t j = 0; j < h; ++j) {
            double a = b1[j];
            for (std::size_t i = 0; i < d; ++i) a += w1[j * d + i] * x[i];
            if (a > 0.0) z += w2[j] * a; // relu
        }
        return sigmoid(z);
    }

    double predict_proba(const Record& rec) const {
        return forward(encoder.encode(rec));
    }
};

/// Mean binary cross-entropy over the 2-layer network; backprop gradient.
inline GradOracle mlp_oracle(const Matrix& x, const std::vector<int>& y, std::size_t hidden) {
    return [&x, &y, hidden](const std::vector<double>& theta) {
        const std::size_t d = x.cols, h = hidden, n = x.rows;
        if (theta.size() != h * d + h + h + 1) throw shape_error("mlp_oracle: arity mismatch");
        const double* w1 = theta.data();
        const double* b1 = w1 + h * d;
        const double* w2 = b1 + h;
        const double b2 = w2[h];

        Evaluation ev;
        ev.gradient.assign(theta.size(), 0.0);
        double* g_w1 = ev.gradient.data();
        double* g_b1 = g_w1 + h * d;
        double* g_w2 = g_b1 + h;
        double* g_b2 = g_w2 + h;

        std::vector<double> act(h);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r) {
            const double* xr = x.data.data() + r * d;
            double z = b2;
            for (std::size_t j = 0; j < h; ++j) {
                double a = b1[j];
                for (std::size_t i = 0; i < d; ++i) a += w1[j * d + i] * xr[i];
                act[j] = a > 0.0 ? a : 0.0;
                z += w2[j] * act[j];
            }
            const double yi = y[r] == 1 ? 1.0 : 0.0;
            ev.loss += (softplus(z) - yi * z) * inv_n;
            const double dz = (sigmoid(z) - yi) * inv_n;
            *g_b2 += dz;
            for (std::size_t j = 0; j < h; ++j) {
                g_w2[j] += dz * act[j];
                if (act[j] > 0.0) {
                    const double da = dz * w2[j];
                    g_b1[j] += da;
                    for (std::size_t i = 0; i < d; ++i) g_w1[j * d + i] += da * xr[i];
                }
            }
        }
        return ev;
    };
}

/// Uniform(-r, r) with r = sqrt(6 / (fan_in + fan_out)), biases zero.
inline std::vector<double> mlp_init_params(std::size_t d, std::size_t h, std::uint64_t seed) {
    std::vector<double> theta(h * d + h + h + 1, 0.0);
    Rng rng(seed);
    const double r1 = std::sqrt(6.0 / static_cast<double>(d + h));
    for (std::size_t i = 0; i < h * d; ++i) theta[i] = rng.next_uniform(-r1, r1);
    const double r2 = std::sqrt(6.0 / static_cast<double>(h + 1));
    for (std::size_t i = 0; i < h; ++i) theta[h * d + h + i] = rng.next_uniform(-r2, r2);
    return theta;
}

inline MlpModel fit_mlp(const Dataset& train, MlpConfig config = {}) {
    detail::require_trainable(train, "fit_mlp");
    if (config.hidden_width == 0) throw config_error("fit_mlp: hidden_width must be >= 1");
    MlpModel model;
    model.config = config;
    model.encoder = Encoder::fit(train);
    const Matrix x = model.encoder.encode_all(train);
    const std::vector<int> y = labels_of(train);
    model.input_width = x.cols;
    model.hidden_width = config.hidden_width;

    auto theta = mlp_init_params(x.cols, config.hidden_width, config.seed);
    auto state = AdagradState::fresh(theta.size(), config.alpha, config.delta);
    auto res = minimize(mlp_oracle(x, y, config.hidden_width), std::move(theta), config.epochs,
                        std::move(state), config.rel_tol);
    model.params = std::move(res.theta);
    model.loss_trace = std::move(res.loss_trace);
    return model;
}

} // namespace chd
