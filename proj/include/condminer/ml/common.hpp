#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "condminer/errors.hpp"

namespace condminer::ml {

using FeatureRow = std::vector<std::uint8_t>;

/// Binary feature matrix with class labels encoded as indices into a fixed
/// class order. num_features is the row width even when there are no rows.
struct TrainingData {
    std::vector<FeatureRow> rows;
    std::vector<std::size_t> labels;
    std::size_t num_classes = 0;
    std::size_t num_features = 0;
};

inline void validate_training_data(const TrainingData& data) {
    if (data.rows.empty()) throw EmptyTrainingSet("training set has no rows");
    if (data.labels.size() != data.rows.size())
        throw DimensionMismatch("row count " + std::to_string(data.rows.size()) +
                                " != label count " + std::to_string(data.labels.size()));
    if (data.num_classes == 0) throw BadConfig("num_classes must be at least 1");
    for (const FeatureRow& row : data.rows)
        if (row.size() != data.num_features)
            throw DimensionMismatch("row width " + std::to_string(row.size()) +
                                    " != num_features " + std::to_string(data.num_features));
    for (std::size_t label : data.labels)
        if (label >= data.num_classes)
            throw BadConfig("label index " + std::to_string(label) + " out of range");
}

enum class ClassifierKind { ZeroR, NaiveBayes, C45, RandomForest };

inline std::string_view classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::ZeroR: return "zeror";
        case ClassifierKind::NaiveBayes: return "nb";
        case ClassifierKind::C45: return "c45";
        case ClassifierKind::RandomForest: return "rf";
    }
    throw BadConfig("unknown classifier kind");
}

inline ClassifierKind classifier_from_name(std::string_view name) {
    if (name == "zeror") return ClassifierKind::ZeroR;
    if (name == "nb") return ClassifierKind::NaiveBayes;
    if (name == "c45") return ClassifierKind::C45;
    if (name == "rf") return ClassifierKind::RandomForest;
    throw BadConfig("unknown classifier \"" + std::string(name) + "\"");
}

/// Hyperparameters for all classifier kinds; fields irrelevant to a kind are
/// ignored. min_leaf 0 and features_per_split 0 select the per-kind default.
struct ClassifierConfig {
    ClassifierKind kind = ClassifierKind::ZeroR;
    double alpha = 1.0;
    std::size_t trees = 100;
    std::size_t min_leaf = 0;
    std::size_t features_per_split = 0;
    bool bootstrap = true;
    bool mean_gain_filter = true;
    std::uint64_t seed = 42;
};

/// Index of the largest count; ties resolve to the earliest class.
inline std::size_t majority_class(const std::vector<std::size_t>& counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

inline std::vector<std::size_t> class_histogram(const std::vector<std::size_t>& labels,
                                                std::size_t num_classes) {
    std::vector<std::size_t> counts(num_classes, 0);
    for (std::size_t label : labels) ++counts[label];
    return counts;
}

}  // namespace condminer::ml
