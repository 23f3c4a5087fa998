#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "chd/error.hpp"
#include "chd/model.hpp"

namespace chd {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

using nlohmann::json;

inline json encoder_to_json(const Encoder& enc) {
    json cols = json::array();
    for (const auto& c : enc.columns()) {
        cols.push_back({{"categorical", c.categorical},
                        {"categories", c.categories},
                        {"mean", c.mean},
                        {"std", c.std}});
    }
    return cols;
}

inline Encoder encoder_from_json(const json& j) {
    std::vector<Encoder::ColumnInfo> cols;
    for (const auto& cj : j) {
        Encoder::ColumnInfo c;
        c.categorical = cj.at("categorical").get<bool>();
        c.categories = cj.at("categories").get<std::size_t>();
        c.mean = cj.at("mean").get<double>();
        c.std = cj.at("std").get<double>();
        cols.push_back(c);
    }
    Encoder enc;
    enc.set_columns(std::move(cols));
    return enc;
}

inline json tree_to_json(const Tree& t) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
        nodes.push_back({{"left", n.left},
                         {"right", n.right},
                         {"feature", n.feature},
                         {"categorical", n.categorical},
                         {"threshold", n.threshold},
                         {"subset_mask", n.subset_mask},
                         {"value", n.value},
                         {"count0", n.count0},
                         {"count1", n.count1}});
    }
    return nodes;
}

inline Tree tree_from_json(const json& j) {
    Tree t;
    for (const auto& nj : j) {
        Tree::Node n;
        n.left = nj.at("left").get<std::int32_t>();
        n.right = nj.at("right").get<std::int32_t>();
        n.feature = nj.at("feature").get<std::uint32_t>();
        n.categorical = nj.at("categorical").get<bool>();
        n.threshold = nj.at("threshold").get<double>();
        n.subset_mask = nj.at("subset_mask").get<std::uint32_t>();
        n.value = nj.at("value").get<double>();
        n.count0 = nj.at("count0").get<double>();
        n.count1 = nj.at("count1").get<double>();
        t.nodes.push_back(n);
    }
    return t;
}

inline json params_to_json(const Model& m) {
    struct Visitor {
        json operator()(const LogisticModel& a) const {
            return {{"encoder", encoder_to_json(a.encoder)},
                    {"weights", a.weights},
                    {"bias", a.bias}};
        }
        json operator()(const MlpModel& a) const {
            return {{"encoder", encoder_to_json(a.encoder)},
                    {"input_width", a.input_width},
                    {"hidden_width", a.hidden_width},
                    {"params", a.params}};
        }
        json operator()(const NaiveBayesModel& a) const {
            json feats = json::array();
            for (const auto& f : a.features) {
                if (f.categorical) {
                    feats.push_back({{"categorical", true},
                                     {"frequency0", f.cat.frequency[0]},
                                     {"frequency1", f.cat.frequency[1]}});
                } else {
                    feats.push_back({{"categorical", false},
                                     {"mean", f.numeric.mean},
                                     {"variance", f.numeric.variance}});
                }
            }
            return {{"priors", a.priors}, {"features", feats}};
        }
        json operator()(const TreeModel& a) const {
            return {{"tree", tree_to_json(a.tree)}, {"arity", a.arity}};
        }
        json operator()(const ForestModel& a) const {
            json trees = json::array();
            for (const auto& t : a.trees) trees.push_back(tree_to_json(t));
            return {{"trees", trees}, {"arity", a.arity}};
        }
        json operator()(const GbtModel& a) const {
            json trees = json::array();
            for (const auto& t : a.trees) trees.push_back(tree_to_json(t));
            return {{"init_score", a.init_score},
                    {"shrinkage", a.shrinkage},
                    {"trees", trees},
                    {"arity", a.arity}};
        }
        json operator()(const LinearSvmModel& a) const {
            return {{"encoder", encoder_to_json(a.encoder)},
                    {"weights", a.weights},
                    {"bias", a.bias}};
        }
    };
    return std::visit(Visitor{}, m);
}

inline Model params_from_json(const std::string& kind, const json& p) {
    if (kind == "logistic_regression") {
        LogisticModel m;
        m.encoder = encoder_from_json(p.at("encoder"));
        m.weights = p.at("weights").get<std::vector<double>>();
        m.bias = p.at("bias").get<double>();
        return m;
    }
    if (kind == "mlp") {
        MlpModel m;
        m.encoder = encoder_from_json(p.at("encoder"));
        m.input_width = p.at("input_width").get<std::size_t>();
        m.hidden_width = p.at("hidden_width").get<std::size_t>();
        m.params = p.at("params").get<std::vector<double>>();
        return m;
    }
    if (kind == "naive_bayes") {
        NaiveBayesModel m;
        m.priors = p.at("priors").get<std::array<double, 2>>();
        for (const auto& fj : p.at("features")) {
            NaiveBayesModel::FeatureModel f;
            f.categorical = fj.at("categorical").get<bool>();
            if (f.categorical) {
                f.cat.frequency[0] = fj.at("frequency0").get<std::vector<double>>();
                f.cat.frequency[1] = fj.at("frequency1").get<std::vector<double>>();
            } else {
                f.numeric.mean = fj.at("mean").get<std::array<double, 2>>();
                f.numeric.variance = fj.at("variance").get<std::array<double, 2>>();
            }
            m.features.push_back(std::move(f));
        }
        return m;
    }
    if (kind == "decision_tree") {
        TreeModel m;
        m.tree = tree_from_json(p.at("tree"));
        m.arity = p.at("arity").get<std::size_t>();
        return m;
    }
    if (kind == "random_forest") {
        ForestModel m;
        for (const auto& tj : p.at("trees")) m.trees.push_back(tree_from_json(tj));
        m.arity = p.at("arity").get<std::size_t>();
        return m;
    }
    if (kind == "gradient_boosted_tree") {
        GbtModel m;
        m.init_score = p.at("init_score").get<double>();
        m.shrinkage = p.at("shrinkage").get<double>();
        for (const auto& tj : p.at("trees")) m.trees.push_back(tree_from_json(tj));
        m.arity = p.at("arity").get<std::size_t>();
        return m;
    }
    if (kind == "svm") {
        LinearSvmModel m;
        m.encoder = encoder_from_json(p.at("encoder"));
        m.weights = p.at("weights").get<std::vector<double>>();
        m.bias = p.at("bias").get<double>();
        return m;
    }
    throw parse_error("load_model: unknown model kind '" + kind + "'");
}

} // namespace detail

inline std::string model_to_string(const Model& m) {
    nlohmann::json doc;
    doc["format"] = "chd-model";
    doc["version"] = kModelFormatVersion;
    doc["kind"] = model_kind(m);
    doc["params"] = detail::params_to_json(m);
    return doc.dump(2);
}

inline Model model_from_string(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("load_model: malformed file: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != "chd-model") {
            throw parse_error("load_model: not a chd model file");
        }
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion) {
            throw version_error("load_model: unsupported format version " +
                                std::to_string(version));
        }
        return detail::params_from_json(doc.at("kind").get<std::string>(), doc.at("params"));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("load_model: missing or mistyped field: ") + e.what());
    }
}

inline void save_model(const Model& m, const std::string& path) {
    std::ofstream out(path);
    if (!out.is_open()) throw io_error("save_model: cannot open '" + path + "' for writing");
    out << model_to_string(m) << '\n';
    if (!out.good()) throw io_error("save_model: failed while writing '" + path + "'");
}

inline Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw io_error("load_model: cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return model_from_string(text);
}

} // namespace chd
