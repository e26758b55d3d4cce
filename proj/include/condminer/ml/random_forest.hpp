#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "condminer/ml/c45.hpp"
#include "condminer/ml/common.hpp"
#include "condminer/rng.hpp"

namespace condminer::ml {

/// features_per_split 0 resolves to floor(log2 d) + 1. bootstrap false
/// trains every tree on the full sample (degenerate mode used to cross-check
/// against a single tree).
struct RandomForestConfig {
    std::size_t trees = 100;
    std::size_t features_per_split = 0;
    std::size_t min_leaf = 1;
    bool bootstrap = true;
    std::uint64_t seed = 42;
};

struct RandomForestModel {
    RandomForestConfig config;
    std::size_t num_classes = 0;
    std::size_t resolved_features_per_split = 0;
    std::vector<DecisionTree> trees;
};

namespace detail {

/// m distinct columns drawn from the tree's RNG stream, returned sorted so
/// gain-ratio ties resolve to the lowest column, same as the single tree.
inline std::vector<std::size_t> sample_columns(Rng& rng, std::size_t d, std::size_t m) {
    std::vector<std::size_t> pool(d);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + rng.below(d - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace detail

/// Bagged C4.5-style trees. Tree b draws its own RNG from (seed, b): first
/// the bootstrap row indices, then the per-node column samples in build
/// order, so any tree retrains identically in isolation.
inline RandomForestModel train_random_forest(const TrainingData& data,
                                             const RandomForestConfig& config = {}) {
    validate_training_data(data);
    if (config.trees < 1) throw BadConfig("forest needs at least one tree");
    const std::size_t d = data.num_features;
    const std::size_t m = config.features_per_split == 0
                              ? std::bit_width(d)
                              : std::min(config.features_per_split, d);
    if (m < 1) throw BadConfig("features per split must be at least 1");

    RandomForestModel model;
    model.config = config;
    model.num_classes = data.num_classes;
    model.resolved_features_per_split = m;
    model.trees.reserve(config.trees);
    const std::size_t n = data.rows.size();
    for (std::size_t b = 0; b < config.trees; ++b) {
        Rng rng(mix_seed(config.seed, b));
        std::vector<std::size_t> rows(n);
        if (config.bootstrap) {
            for (std::size_t i = 0; i < n; ++i) rows[i] = rng.below(n);
        } else {
            std::iota(rows.begin(), rows.end(), 0);
        }
        detail::TreeBuilder builder(data, config.min_leaf, false,
                                    [&rng, d, m] { return detail::sample_columns(rng, d, m); });
        model.trees.push_back(builder.build(rows));
    }
    return model;
}

inline std::size_t predict(const RandomForestModel& model, const FeatureRow& x) {
    std::vector<std::size_t> votes(model.num_classes, 0);
    for (const DecisionTree& tree : model.trees) ++votes[predict(tree, x)];
    return majority_class(votes);
}

}  // namespace condminer::ml
