#pragma once

#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"

namespace chd {

/// Summary statistics behind the usual disease-status, sex, age, and
/// chest-pain views of a clinical dataset. Everything is exact counting.
struct EdaReport {
    std::size_t total = 0;
    std::map<int, std::size_t> class_counts;
    std::map<int, double> class_proportions;

    /// sex_by_label[sex][label], present when the dataset has a binary
    /// "sex" feature.
    bool has_sex = false;
    std::array<std::array<std::size_t, 2>, 2> sex_by_label{};

    /// (age, label) points, present when the dataset has an "age" feature.
    bool has_age = false;
    std::vector<std::pair<double, int>> age_scatter;

    /// chest_pain_by_label[category][label], one row per declared category.
    bool has_chest_pain = false;
    std::vector<std::string> chest_pain_categories;
    std::vector<std::array<std::size_t, 2>> chest_pain_by_label;
};

inline EdaReport eda_report(const Dataset& ds) {
    if (ds.size() == 0) throw error("eda_report: dataset is empty");

    EdaReport rep;
    rep.total = ds.size();
    for (const auto& rec : ds.records) ++rep.class_counts[rec.label];
    for (const auto& [label, count] : rep.class_counts) {
        rep.class_proportions[label] =
            static_cast<double>(count) / static_cast<double>(rep.total);
    }

    if (ds.schema.has_feature("sex")) {
        const std::size_t i = ds.schema.index_of("sex");
        rep.has_sex = true;
        for (const auto& rec : ds.records) {
            if (rec.cells[i].missing) continue;
            const auto sex = static_cast<std::size_t>(rec.cells[i].value);
            if (sex < 2) ++rep.sex_by_label[sex][rec.label == 1 ? 1 : 0];
        }
    }
    if (ds.schema.has_feature("age")) {
        const std::size_t i = ds.schema.index_of("age");
        rep.has_age = true;
        for (const auto& rec : ds.records) {
            if (!rec.cells[i].missing) rep.age_scatter.emplace_back(rec.cells[i].value, rec.label);
        }
    }
    if (ds.schema.has_feature("chest_pain")) {
        const std::size_t i = ds.schema.index_of("chest_pain");
        const FeatureSpec& f = ds.schema.features[i];
        if (f.kind == FeatureKind::categorical) {
            rep.has_chest_pain = true;
            rep.chest_pain_categories = f.categories;
            rep.chest_pain_by_label.assign(f.categories.size(), {0, 0});
            for (const auto& rec : ds.records) {
                if (rec.cells[i].missing) continue;
                const auto cat = static_cast<std::size_t>(rec.cells[i].value);
                ++rep.chest_pain_by_label[cat][rec.label == 1 ? 1 : 0];
            }
        }
    }
    return rep;
}

namespace detail {

inline std::string percent_1dp(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
    return buf;
}

} // namespace detail

/// Human-readable report.
inline std::string eda_to_text(const EdaReport& rep) {
    std::ostringstream os;
    os << "Records: " << rep.total << "\n";
    os << "Disease status:\n";
    for (const auto& [label, count] : rep.class_counts) {
        os << "  " << (label == 1 ? "present" : "absent ") << "  " << count << "  ("
           << detail::percent_1dp(rep.class_proportions.at(label)) << "%)\n";
    }
    if (rep.has_sex) {
        os << "Sex by disease status (rows: female, male; columns: absent, present):\n";
        for (std::size_t s = 0; s < 2; ++s) {
            os << "  " << (s == 0 ? "female" : "male  ") << "  " << rep.sex_by_label[s][0]
               << "  " << rep.sex_by_label[s][1] << "\n";
        }
    }
    if (rep.has_chest_pain) {
        os << "Chest pain by disease status (columns: absent, present):\n";
        for (std::size_t c = 0; c < rep.chest_pain_categories.size(); ++c) {
            os << "  " << rep.chest_pain_categories[c] << "  " << rep.chest_pain_by_label[c][0]
               << "  " << rep.chest_pain_by_label[c][1] << "\n";
        }
    }
    if (rep.has_age) {
        os << "Age scatter points: " << rep.age_scatter.size() << "\n";
    }
    return os.str();
}

/// Machine-readable `name=value` lines for plot tooling.
inline std::string eda_to_key_values(const EdaReport& rep) {
    std::ostringstream os;
    os << "total=" << rep.total << "\n";
    for (const auto& [label, count] : rep.class_counts) {
        os << "count." << label << "=" << count << "\n";
    }
    for (const auto& [label, prop] : rep.class_proportions) {
        os << "proportion_percent." << label << "=" << detail::percent_1dp(prop) << "\n";
    }
    if (rep.has_sex) {
        for (std::size_t s = 0; s < 2; ++s)
            for (std::size_t l = 0; l < 2; ++l)
                os << "sex_by_label." << s << "." << l << "=" << rep.sex_by_label[s][l] << "\n";
    }
    if (rep.has_chest_pain) {
        for (std::size_t c = 0; c < rep.chest_pain_categories.size(); ++c) {
            os << "chest_pain_by_label." << rep.chest_pain_categories[c] << ".0="
               << rep.chest_pain_by_label[c][0] << "\n";
            os << "chest_pain_by_label." << rep.chest_pain_categories[c] << ".1="
               << rep.chest_pain_by_label[c][1] << "\n";
        }
    }
    return os.str();
}

} // namespace chd
