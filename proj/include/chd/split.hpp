#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "chd/dataset.hpp"
#include "chd/error.hpp"
#include "chd/rng.hpp"

namespace chd {

struct TrainTestSplit {
    Dataset train;
    Dataset test;
    double ratio = 0.0;
    std::uint64_t seed = 0;
};

/// Stratified split: within each class the records are shuffled by a seeded
/// generator and the first floor(ratio * class_count) go to train, the rest
/// to test. Deterministic for a fixed seed.
inline TrainTestSplit stratified_split(const Dataset& ds, double ratio, std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw config_error("stratified_split: ratio must lie in (0, 1)");
    }

    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.records[i].label == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() < 2 || neg.size() < 2) {
        throw error("stratified_split: each class needs at least 2 records (got " +
                    std::to_string(pos.size()) + " positive, " + std::to_string(neg.size()) +
                    " negative)");
    }

    TrainTestSplit split;
    split.ratio = ratio;
    split.seed = seed;
    split.train.schema = ds.schema;
    split.test.schema = ds.schema;

    Rng rng(seed);
    for (std::vector<std::size_t>* cls : {&neg, &pos}) {
        rng.shuffle(*cls);
        const auto take = static_cast<std::size_t>(
            std::floor(ratio * static_cast<double>(cls->size())));
        for (std::size_t i = 0; i < cls->size(); ++i) {
            (i < take ? split.train : split.test).records.push_back(ds.records[(*cls)[i]]);
        }
    }
    return split;
}

} // namespace chd
