#pragma once

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chd/error.hpp"

namespace chd {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t tn = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + tn + fp + fn; }
};

inline ConfusionMatrix confusion(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw shape_error("confusion: label sequences differ in length");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool t = y_true[i] == 1;
        const bool p = y_pred[i] == 1;
        if (t && p) ++cm.tp;
        else if (!t && !p) ++cm.tn;
        else if (!t && p) ++cm.fp;
        else ++cm.fn;
    }
    return cm;
}

/// A zero denominator yields an empty optional (rendered as an explicit
/// "undefined" marker in reports), never a silent 0.
using Metric = std::optional<double>;

namespace detail {

inline Metric ratio(std::size_t num, std::size_t den) {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

} // namespace detail

inline Metric accuracy(const ConfusionMatrix& cm) { return detail::ratio(cm.tp + cm.tn, cm.total()); }
inline Metric precision(const ConfusionMatrix& cm) { return detail::ratio(cm.tp, cm.tp + cm.fp); }
inline Metric recall(const ConfusionMatrix& cm) { return detail::ratio(cm.tp, cm.tp + cm.fn); }
inline Metric specificity(const ConfusionMatrix& cm) { return detail::ratio(cm.tn, cm.tn + cm.fp); }
inline Metric npv(const ConfusionMatrix& cm) { return detail::ratio(cm.tn, cm.tn + cm.fn); }

/// Harmonic mean of precision and recall; undefined when either is, or when
/// both are zero.
inline Metric f_measure(const ConfusionMatrix& cm) {
    const Metric p = precision(cm);
    const Metric r = recall(cm);
    if (!p || !r) return std::nullopt;
    if (*p + *r == 0.0) return std::nullopt;
    return 2.0 * (*p * *r) / (*p + *r);
}

/// Probabilistic (Mann-Whitney) AUC: the fraction of (positive, negative)
/// pairs ranked correctly by the scores, ties counted as 1/2. Computed by
/// rank sums, which matches direct pair counting exactly.
inline Metric roc_auc(const std::vector<int>& y_true, const std::vector<double>& scores) {
    if (y_true.size() != scores.size()) {
        throw shape_error("roc_auc: label and score sequences differ in length");
    }
    const std::size_t n = y_true.size();
    std::size_t n_pos = 0;
    for (int y : y_true) n_pos += y == 1 ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) return std::nullopt;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        // 1-based average rank across the tie group [i, j)
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k) {
            if (y_true[order[k]] == 1) pos_rank_sum += avg_rank;
        }
        i = j;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

/// All per-classifier evaluation numbers for one report row.
struct MetricsReport {
    std::string classifier;
    Metric accuracy;
    Metric precision;
    Metric recall;
    Metric f_measure;
    Metric specificity;
    Metric npv;
    Metric roc_auc;
};

inline MetricsReport evaluate_predictions(std::string classifier, const std::vector<int>& y_true,
                                          const std::vector<int>& y_pred,
                                          const std::vector<double>& scores) {
    const ConfusionMatrix cm = confusion(y_true, y_pred);
    MetricsReport rep;
    rep.classifier = std::move(classifier);
    rep.accuracy = accuracy(cm);
    rep.precision = precision(cm);
    rep.recall = recall(cm);
    rep.f_measure = f_measure(cm);
    rep.specificity = specificity(cm);
    rep.npv = npv(cm);
    rep.roc_auc = roc_auc(y_true, scores);
    return rep;
}

namespace detail {

inline std::string metric_cell(const Metric& m, const char* fmt) {
    if (!m) return "—"; // undefined marker
    char buf[32];
    std::snprintf(buf, sizeof(buf), fmt, *m);
    return buf;
}

} // namespace detail

inline std::string metrics_csv_header() {
    return "Classifier,Accuracy %,Precision,Recall,F-Measure,Specificity,NPV,ROC AUC,Accuracy";
}

/// One CSV row: the classical report columns first, extended columns after,
/// accuracy as both percentage and fraction.
inline std::string metrics_csv_row(const MetricsReport& r) {
    std::ostringstream os;
    Metric acc_pct = r.accuracy ? Metric(*r.accuracy * 100.0) : std::nullopt;
    os << r.classifier << ',' << detail::metric_cell(acc_pct, "%.2f") << ','
       << detail::metric_cell(r.precision, "%.4f") << ',' << detail::metric_cell(r.recall, "%.4f")
       << ',' << detail::metric_cell(r.f_measure, "%.4f") << ','
       << detail::metric_cell(r.specificity, "%.4f") << ',' << detail::metric_cell(r.npv, "%.4f")
       << ',' << detail::metric_cell(r.roc_auc, "%.4f") << ','
       << detail::metric_cell(r.accuracy, "%.6f");
    return os.str();
}

} // namespace chd
