#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"

namespace chd {

enum class CleanPolicy {
    median_mode, // numeric gaps <- column median, categorical gaps <- column mode
    drop_row,    // remove any record with a gap
};

namespace detail {

inline double column_median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Most frequent value; ties go to the smallest value for determinism.
inline double column_mode(const std::vector<double>& v) {
    std::map<double, std::size_t> counts;
    for (double x : v) ++counts[x];
    double best = v.front();
    std::size_t best_count = 0;
    for (const auto& [value, count] : counts) {
        if (count > best_count) {
            best = value;
            best_count = count;
        }
    }
    return best;
}

} // namespace detail

/// Resolves every missing cell per `policy`, then removes exact duplicate
/// records (first occurrence kept). Duplicates are dropped here, before any
/// split, so a record can never appear on both sides of one.
inline Dataset clean(const Dataset& ds, CleanPolicy policy = CleanPolicy::median_mode) {
    Dataset out;
    out.schema = ds.schema;

    if (policy == CleanPolicy::drop_row) {
        for (const auto& rec : ds.records) {
            const bool gapped = std::any_of(rec.cells.begin(), rec.cells.end(),
                                            [](const Cell& c) { return c.missing; });
            if (!gapped) out.records.push_back(rec);
        }
    } else {
        const std::size_t p = ds.feature_count();
        std::vector<double> fill(p, 0.0);
        std::vector<bool> has_gap(p, false);
        for (std::size_t i = 0; i < p; ++i) {
            std::vector<double> observed;
            for (const auto& rec : ds.records) {
                if (!rec.cells[i].missing) observed.push_back(rec.cells[i].value);
                else has_gap[i] = true;
            }
            if (!has_gap[i]) continue;
            if (observed.empty()) {
                throw schema_error("clean: column '" + ds.schema.features[i].name +
                                   "' has no observed values to impute from");
            }
            fill[i] = ds.schema.features[i].kind == FeatureKind::numeric
                          ? detail::column_median(observed)
                          : detail::column_mode(observed);
        }
        out.records = ds.records;
        for (auto& rec : out.records) {
            for (std::size_t i = 0; i < p; ++i) {
                if (rec.cells[i].missing) {
                    rec.cells[i].value = fill[i];
                    rec.cells[i].missing = false;
                }
            }
        }
    }

    // exact-duplicate removal, order preserving
    std::vector<Record> unique;
    unique.reserve(out.records.size());
    for (const auto& rec : out.records) {
        if (std::find(unique.begin(), unique.end(), rec) == unique.end()) {
            unique.push_back(rec);
        }
    }
    out.records = std::move(unique);
    return out;
}

} // namespace chd
