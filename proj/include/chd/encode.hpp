#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/linalg.hpp"

namespace chd {

/// Dense numeric encoding for the gradient-trained models: one-hot columns
/// for categorical features, standardized columns (train mean/std, std
/// floored at 1e-12) for numerics. Tree and Bayes models consume raw cells
/// and never go through this.
class Encoder {
public:
    Encoder() = default;

    static Encoder fit(const Dataset& train) {
        Encoder enc;
        enc.kinds_.reserve(train.feature_count());
        for (const auto& f : train.schema.features) {
            ColumnInfo info;
            info.categorical = f.kind == FeatureKind::categorical;
            info.categories = f.categories.size();
            enc.kinds_.push_back(info);
        }
        for (std::size_t i = 0; i < train.feature_count(); ++i) {
            auto& info = enc.kinds_[i];
            if (info.categorical) continue;
            double mean = 0.0;
            for (const auto& rec : train.records) {
                require_clean(rec, i);
                mean += rec.cells[i].value;
            }
            const double n = static_cast<double>(train.size());
            mean /= n;
            double var = 0.0;
            for (const auto& rec : train.records) {
                const double d = rec.cells[i].value - mean;
                var += d * d;
            }
            info.mean = mean;
            info.std = std::max(std::sqrt(var / n), 1e-12);
        }
        return enc;
    }

    std::size_t input_arity() const { return kinds_.size(); }

    std::size_t encoded_width() const {
        std::size_t w = 0;
        for (const auto& k : kinds_) w += k.categorical ? k.categories : 1;
        return w;
    }

    std::vector<double> encode(const Record& rec) const {
        if (rec.cells.size() != kinds_.size()) {
            throw shape_error("encode: record has " + std::to_string(rec.cells.size()) +
                              " cells, encoder expects " + std::to_string(kinds_.size()));
        }
        std::vector<double> out;
        out.reserve(encoded_width());
        for (std::size_t i = 0; i < kinds_.size(); ++i) {
            require_clean(rec, i);
            const auto& k = kinds_[i];
            if (k.categorical) {
                const auto cat = static_cast<std::size_t>(rec.cells[i].value);
                if (cat >= k.categories) {
                    throw shape_error("encode: category index out of range for feature " +
                                      std::to_string(i));
                }
                for (std::size_t c = 0; c < k.categories; ++c) {
                    out.push_back(c == cat ? 1.0 : 0.0);
                }
            } else {
                out.push_back((rec.cells[i].value - k.mean) / k.std);
            }
        }
        return out;
    }

    Matrix encode_all(const Dataset& ds) const {
        Matrix x(ds.size(), encoded_width());
        for (std::size_t r = 0; r < ds.size(); ++r) {
            const auto row = encode(ds.records[r]);
            std::copy(row.begin(), row.end(), x.data.begin() + static_cast<std::ptrdiff_t>(r * x.cols));
        }
        return x;
    }

    struct ColumnInfo {
        bool categorical = false;
        std::size_t categories = 0;
        double mean = 0.0;
        double std = 1.0;

        bool operator==(const ColumnInfo&) const = default;
    };

    const std::vector<ColumnInfo>& columns() const { return kinds_; }
    void set_columns(std::vector<ColumnInfo> cols) { kinds_ = std::move(cols); }

    bool operator==(const Encoder&) const = default;

private:
    static void require_clean(const Record& rec, std::size_t i) {
        if (rec.cells[i].missing) {
            throw error("encode: record still carries a missing value (run clean first)");
        }
    }

    std::vector<ColumnInfo> kinds_;
};

inline std::vector<int> labels_of(const Dataset& ds) {
    std::vector<int> y;
    y.reserve(ds.size());
    for (const auto& r : ds.records) y.push_back(r.label == 1 ? 1 : 0);
    return y;
}

} // namespace chd
