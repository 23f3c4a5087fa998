#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "chd/error.hpp"

namespace chd {

enum class FeatureKind { numeric, categorical };

/// Declaration of one feature column. For categorical features the cell
/// text must be one of `categories`; cells are stored as the index into
/// that list.
struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::numeric;
    std::vector<std::string> categories; // empty for numeric
    double min_value = -1e308;           // numeric validation range
    double max_value = 1e308;

    bool operator==(const FeatureSpec&) const = default;
};

/// Column layout of a tabular dataset: feature columns in order, then one
/// label column. The label is read as an integer and binarized (0 stays 0,
/// anything greater becomes 1).
struct Schema {
    std::vector<FeatureSpec> features;
    std::string label_name = "num";

    std::size_t feature_count() const { return features.size(); }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < features.size(); ++i)
            if (features[i].name == name) return i;
        throw schema_error("schema: no feature named '" + name + "'");
    }

    bool has_feature(const std::string& name) const {
        return std::any_of(features.begin(), features.end(),
                           [&](const FeatureSpec& f) { return f.name == name; });
    }

    bool operator==(const Schema&) const = default;
};

/// One cell of a record. Numeric features hold the value directly;
/// categorical features hold the category index. `missing` cells carry an
/// unspecified value and must be resolved by clean() before modeling.
struct Cell {
    double value = 0.0;
    bool missing = false;

    bool operator==(const Cell&) const = default;
};

struct Record {
    std::vector<Cell> cells;
    int label = 0;

    bool operator==(const Record&) const = default;
};

struct Dataset {
    Schema schema;
    std::vector<Record> records;

    std::size_t size() const { return records.size(); }
    std::size_t feature_count() const { return schema.feature_count(); }

    std::size_t missing_count() const {
        std::size_t n = 0;
        for (const auto& r : records)
            for (const auto& c : r.cells)
                if (c.missing) ++n;
        return n;
    }

    std::size_t count_label(int label) const {
        std::size_t n = 0;
        for (const auto& r : records)
            if (r.label == label) ++n;
        return n;
    }

    /// Projection onto the named features, in the given order.
    Dataset select_features(const std::vector<std::string>& names) const {
        std::vector<std::size_t> idx;
        idx.reserve(names.size());
        for (const auto& n : names) idx.push_back(schema.index_of(n));
        Dataset out;
        out.schema.label_name = schema.label_name;
        for (std::size_t i : idx) out.schema.features.push_back(schema.features[i]);
        out.records.reserve(records.size());
        for (const auto& r : records) {
            Record nr;
            nr.label = r.label;
            nr.cells.reserve(idx.size());
            for (std::size_t i : idx) nr.cells.push_back(r.cells[i]);
            out.records.push_back(std::move(nr));
        }
        return out;
    }

    bool operator==(const Dataset&) const = default;
};

inline FeatureSpec numeric_feature(std::string name, double lo = -1e308, double hi = 1e308) {
    FeatureSpec f;
    f.name = std::move(name);
    f.kind = FeatureKind::numeric;
    f.min_value = lo;
    f.max_value = hi;
    return f;
}

inline FeatureSpec categorical_feature(std::string name, std::vector<std::string> categories) {
    FeatureSpec f;
    f.name = std::move(name);
    f.kind = FeatureKind::categorical;
    f.categories = std::move(categories);
    return f;
}

/// The canonical 13-feature clinical schema used by the bundled fixtures
/// and the CLI defaults. Label column "num" is binarized on load.
inline Schema heart_schema() {
    Schema s;
    s.features = {
        numeric_feature("age", 1.0, 130.0),
        categorical_feature("sex", {"0", "1"}),
        categorical_feature("chest_pain",
                            {"typical_angina", "atypical_angina", "non_anginal", "asymptomatic"}),
        numeric_feature("resting_bp", 1.0, 1e308),
        numeric_feature("cholesterol", 1.0, 1e308),
        categorical_feature("fasting_blood_sugar", {"0", "1"}),
        categorical_feature("resting_ecg", {"normal", "st_t_abnormality", "lv_hypertrophy"}),
        numeric_feature("max_heart_rate", 1.0, 1e308),
        categorical_feature("exercise_angina", {"0", "1"}),
        numeric_feature("st_depression", 0.0, 1e308),
        categorical_feature("st_slope", {"upsloping", "flat", "downsloping"}),
        numeric_feature("major_vessels", 0.0, 4.0),
        categorical_feature("thal", {"normal", "fixed_defect", "reversible_defect"}),
    };
    s.label_name = "num";
    return s;
}

} // namespace chd
