#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"

namespace chd {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        if (!cell.empty() && cell.back() == '\r') cell.pop_back();
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline bool parse_double(std::string_view text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, out, std::chars_format::general);
    return ec == std::errc{} && ptr == end;
}

/// Shortest-round-trip formatting so written values parse back bit-exact.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    // 16 significant digits usually suffice and read better; fall back to 17.
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.15g", v);
    if (parse_double(shorter, back) && back == v) return shorter;
    return buf;
}

inline bool is_missing_marker(const std::string& cell) {
    return cell.empty() || cell == "?";
}

} // namespace detail

/// Reads a comma-separated file against `schema`. The header row must list
/// the schema's feature names in order followed by the label column. "?"
/// and the empty string mark missing values; any other unparsable cell is
/// an error, never a guess.
inline Dataset load_csv(const std::string& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in.is_open()) throw io_error("load_csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw parse_error("load_csv: '" + path + "' has no header row");
    const auto header = detail::split_csv_line(line);

    const std::size_t want = schema.feature_count() + 1;
    if (header.size() != want) {
        throw schema_error("load_csv: header has " + std::to_string(header.size()) +
                           " columns, schema declares " + std::to_string(want));
    }
    for (std::size_t i = 0; i < schema.feature_count(); ++i) {
        if (header[i] != schema.features[i].name) {
            throw schema_error("load_csv: header column " + std::to_string(i + 1) + " is '" +
                               header[i] + "', schema expects '" + schema.features[i].name + "'");
        }
    }
    if (header.back() != schema.label_name) {
        throw schema_error("load_csv: label column is '" + header.back() + "', schema expects '" +
                           schema.label_name + "'");
    }

    Dataset ds;
    ds.schema = schema;
    std::size_t row = 1; // header was row 1
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != want) {
            throw parse_error("load_csv: row " + std::to_string(row) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(want));
        }
        Record rec;
        rec.cells.reserve(schema.feature_count());
        for (std::size_t i = 0; i < schema.feature_count(); ++i) {
            const FeatureSpec& f = schema.features[i];
            Cell c;
            if (detail::is_missing_marker(cells[i])) {
                c.missing = true;
            } else if (f.kind == FeatureKind::numeric) {
                if (!detail::parse_double(cells[i], c.value)) {
                    throw parse_error("load_csv: row " + std::to_string(row) + ", column '" +
                                      f.name + "': cannot parse '" + cells[i] + "' as a number");
                }
                if (c.value < f.min_value || c.value > f.max_value) {
                    throw schema_error("load_csv: row " + std::to_string(row) + ", column '" +
                                       f.name + "': value " + cells[i] + " outside [" +
                                       detail::format_double(f.min_value) + ", " +
                                       detail::format_double(f.max_value) + "]");
                }
            } else {
                auto it = std::find(f.categories.begin(), f.categories.end(), cells[i]);
                if (it == f.categories.end()) {
                    throw schema_error("load_csv: row " + std::to_string(row) + ", column '" +
                                       f.name + "': unknown category '" + cells[i] + "'");
                }
                c.value = static_cast<double>(it - f.categories.begin());
            }
            rec.cells.push_back(c);
        }
        const std::string& label_cell = cells.back();
        double label_value = 0.0;
        if (detail::is_missing_marker(label_cell) || !detail::parse_double(label_cell, label_value)) {
            throw parse_error("load_csv: row " + std::to_string(row) +
                              ": label '" + label_cell + "' is not an integer");
        }
        rec.label = label_value > 0.0 ? 1 : 0;
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

/// Inverse of load_csv for clean datasets: categorical indices are written
/// back as their category names, numerics with round-trip precision.
inline void write_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) throw io_error("write_csv: cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < ds.schema.feature_count(); ++i) {
        out << ds.schema.features[i].name << ',';
    }
    out << ds.schema.label_name << '\n';
    for (const auto& rec : ds.records) {
        for (std::size_t i = 0; i < ds.schema.feature_count(); ++i) {
            const FeatureSpec& f = ds.schema.features[i];
            const Cell& c = rec.cells[i];
            if (c.missing) {
                out << '?';
            } else if (f.kind == FeatureKind::numeric) {
                out << detail::format_double(c.value);
            } else {
                out << f.categories.at(static_cast<std::size_t>(c.value));
            }
            out << ',';
        }
        out << rec.label << '\n';
    }
    if (!out.good()) throw io_error("write_csv: failed while writing '" + path + "'");
}

} // namespace chd
