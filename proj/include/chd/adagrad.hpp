#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chd/csv.hpp"
#include "chd/error.hpp"

namespace chd {

/// Per-parameter accumulated squared-gradient history plus hyperparameters.
/// `s` is elementwise non-decreasing across steps.
struct AdagradState {
    std::vector<double> s;
    double alpha = 0.1;
    double delta = 1e-8;
    std::uint64_t t = 0;

    static AdagradState fresh(std::size_t arity, double alpha = 0.1, double delta = 1e-8) {
        AdagradState st;
        st.s.assign(arity, 0.0);
        st.alpha = alpha;
        st.delta = delta;
        return st;
    }
};

/// loss and gradient of the loss at a parameter vector; the gradient arity
/// must equal the parameter arity.
struct Evaluation {
    double loss = 0.0;
    std::vector<double> gradient;
};

using GradOracle = std::function<Evaluation(const std::vector<double>&)>;

/// One update:
///   s'     = s + g*g            (elementwise)
///   dtheta = -alpha * g / (sqrt(s') + delta)
///   theta' = theta + dtheta
inline void adagrad_step(AdagradState& state, std::vector<double>& theta,
                         const std::vector<double>& g) {
    if (theta.size() != g.size() || theta.size() != state.s.size()) {
        throw shape_error("adagrad_step: parameter/gradient/state arity mismatch");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) {
            throw numeric_error("adagrad_step: non-finite gradient at component " +
                                std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        state.s[i] += g[i] * g[i];
        theta[i] += -state.alpha * g[i] / (std::sqrt(state.s[i]) + state.delta);
    }
    ++state.t;
}

/// Plain constant-rate gradient descent: theta' = theta - alpha * g.
inline void sgd_step(std::vector<double>& theta, const std::vector<double>& g, double alpha) {
    if (theta.size() != g.size()) throw shape_error("sgd_step: arity mismatch");
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!std::isfinite(g[i])) {
            throw numeric_error("sgd_step: non-finite gradient at component " + std::to_string(i));
        }
        theta[i] -= alpha * g[i];
    }
}

struct MinimizeResult {
    std::vector<double> theta;
    std::vector<double> loss_trace; // loss at the point each gradient was taken
    AdagradState state;
};

/// Runs up to `steps` Adagrad updates. Stops early once the relative loss
/// change drops below `rel_tol` (0 disables the check).
inline MinimizeResult minimize(const GradOracle& oracle, std::vector<double> theta0,
                               std::size_t steps, AdagradState state, double rel_tol = 1e-8) {
    if (steps < 1) throw config_error("minimize: steps must be >= 1");
    MinimizeResult res;
    res.theta = std::move(theta0);
    res.loss_trace.reserve(steps);
    double prev_loss = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        Evaluation ev = oracle(res.theta);
        if (!std::isfinite(ev.loss)) {
            throw numeric_error("minimize: loss diverged to a non-finite value at step " +
                                std::to_string(t) + "; try a smaller alpha");
        }
        res.loss_trace.push_back(ev.loss);
        adagrad_step(state, res.theta, ev.gradient);
        if (t > 0 && rel_tol > 0.0) {
            const double denom = std::max(std::abs(prev_loss), 1e-300);
            if (std::abs(prev_loss - ev.loss) / denom < rel_tol) {
                break;
            }
        }
        prev_loss = ev.loss;
    }
    res.state = std::move(state);
    return res;
}

/// Two-column text (step, loss) for plotting.
inline std::string trace_to_text(const std::vector<double>& trace) {
    std::ostringstream os;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << i << ' ' << detail::format_double(trace[i]) << '\n';
    }
    return os.str();
}

} // namespace chd
