#pragma once

#include <cmath>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"

namespace chd {

/// Per-feature difference used by the Relief updates and the k-nearest
/// neighbour search: range-normalized |x - y| for numeric features, 0/1 for
/// categorical ones. Always in [0, 1], symmetric, and zero for a feature
/// that is constant across the dataset.
class DiffMetric {
public:
    explicit DiffMetric(const Dataset& ds) {
        const std::size_t p = ds.feature_count();
        numeric_.resize(p, false);
        lo_.resize(p, 0.0);
        range_.resize(p, 0.0);
        for (std::size_t f = 0; f < p; ++f) {
            if (ds.schema.features[f].kind != FeatureKind::numeric) continue;
            numeric_[f] = true;
            bool seen = false;
            double lo = 0.0, hi = 0.0;
            for (const auto& rec : ds.records) {
                if (rec.cells[f].missing) continue;
                const double v = rec.cells[f].value;
                if (!seen) {
                    lo = hi = v;
                    seen = true;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            lo_[f] = lo;
            range_[f] = hi - lo;
        }
    }

    std::size_t feature_count() const { return numeric_.size(); }

    double diff(std::size_t feature, const Record& a, const Record& b) const {
        const double x = a.cells[feature].value;
        const double y = b.cells[feature].value;
        if (!numeric_[feature]) return x == y ? 0.0 : 1.0;
        if (range_[feature] == 0.0) return 0.0; // constant column
        return std::abs(x - y) / range_[feature];
    }

    /// Total distance: sum of per-feature diffs.
    double distance(const Record& a, const Record& b) const {
        double d = 0.0;
        for (std::size_t f = 0; f < feature_count(); ++f) d += diff(f, a, b);
        return d;
    }

private:
    std::vector<bool> numeric_;
    std::vector<double> lo_;
    std::vector<double> range_;
};

} // namespace chd
