#pragma once

#include <cstddef>
#include <vector>

#include "condminer/ml/common.hpp"

namespace condminer::ml {

/// Majority-class baseline. Ignores every feature.
struct ZeroRModel {
    std::vector<std::size_t> class_counts;
    std::size_t majority = 0;
};

inline ZeroRModel train_zeror(const TrainingData& data) {
    validate_training_data(data);
    ZeroRModel model;
    model.class_counts = class_histogram(data.labels, data.num_classes);
    model.majority = majority_class(model.class_counts);
    return model;
}

inline std::size_t predict(const ZeroRModel& model, const FeatureRow&) { return model.majority; }

}  // namespace condminer::ml
