#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "condminer/ml/common.hpp"

namespace condminer::ml {

/// Bernoulli naive Bayes over binary features. Counts are stored exactly;
/// smoothed probabilities are derived at prediction time:
///   P(x_j = 1 | c) = (present_counts[c][j] + alpha) / (class_counts[c] + 2 alpha)
struct NaiveBayesModel {
    double alpha = 1.0;
    std::size_t total = 0;
    std::vector<std::size_t> class_counts;
    std::vector<std::vector<std::size_t>> present_counts;

    std::size_t num_classes() const { return class_counts.size(); }
};

inline NaiveBayesModel train_naive_bayes(const TrainingData& data, double alpha = 1.0) {
    validate_training_data(data);
    if (!(alpha > 0.0)) throw BadConfig("alpha must be positive");
    NaiveBayesModel model;
    model.alpha = alpha;
    model.total = data.rows.size();
    model.class_counts = class_histogram(data.labels, data.num_classes);
    model.present_counts.assign(data.num_classes,
                                std::vector<std::size_t>(data.num_features, 0));
    for (std::size_t i = 0; i < data.rows.size(); ++i) {
        std::vector<std::size_t>& counts = model.present_counts[data.labels[i]];
        for (std::size_t j = 0; j < data.num_features; ++j)
            if (data.rows[i][j]) ++counts[j];
    }
    return model;
}

/// Unnormalized log posteriors, one per class. A class unseen in training has
/// log prior -inf and can never win the argmax.
inline std::vector<double> log_posteriors(const NaiveBayesModel& model, const FeatureRow& x) {
    std::vector<double> scores(model.num_classes());
    for (std::size_t c = 0; c < model.num_classes(); ++c) {
        double score;
        if (model.class_counts[c] == 0) {
            score = -std::numeric_limits<double>::infinity();
        } else {
            score = std::log(static_cast<double>(model.class_counts[c]) /
                             static_cast<double>(model.total));
        }
        const double denom = static_cast<double>(model.class_counts[c]) + 2.0 * model.alpha;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double p1 = (static_cast<double>(model.present_counts[c][j]) + model.alpha) / denom;
            score += std::log(x[j] ? p1 : 1.0 - p1);
        }
        scores[c] = score;
    }
    return scores;
}

inline std::size_t predict(const NaiveBayesModel& model, const FeatureRow& x) {
    const std::vector<double> scores = log_posteriors(model, x);
    std::size_t best = 0;
    for (std::size_t c = 1; c < scores.size(); ++c)
        if (scores[c] > scores[best]) best = c;
    return best;
}

}  // namespace condminer::ml
