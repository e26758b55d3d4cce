#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "condminer/ml/common.hpp"

namespace condminer::ml {

/// One decision-tree node in a flat pre-order array. feature == -1 marks a
/// leaf; internal nodes still carry the majority label and class counts of
/// the rows that reached them.
struct TreeNode {
    std::int64_t feature = -1;
    std::size_t label = 0;
    std::vector<std::size_t> class_counts;
    std::int64_t absent = -1;
    std::int64_t present = -1;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    bool empty() const { return nodes.empty(); }
};

struct C45Config {
    std::size_t min_leaf = 2;
    bool mean_gain_filter = true;
};

namespace detail {

inline double entropy(const std::vector<std::size_t>& counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

struct SplitScore {
    double gain = 0.0;
    double ratio = 0.0;
};

/// Information gain and gain ratio of splitting rows on the presence of
/// feature j. A constant feature gets gain 0.
inline SplitScore score_split(const TrainingData& data, const std::vector<std::size_t>& rows,
                              double parent_entropy, std::size_t j) {
    std::vector<std::size_t> absent_counts(data.num_classes, 0);
    std::vector<std::size_t> present_counts(data.num_classes, 0);
    std::size_t n_present = 0;
    for (std::size_t r : rows) {
        if (data.rows[r][j]) {
            ++present_counts[data.labels[r]];
            ++n_present;
        } else {
            ++absent_counts[data.labels[r]];
        }
    }
    const std::size_t n = rows.size();
    const std::size_t n_absent = n - n_present;
    if (n_absent == 0 || n_present == 0) return {};
    const double fa = static_cast<double>(n_absent) / static_cast<double>(n);
    const double fp = static_cast<double>(n_present) / static_cast<double>(n);
    SplitScore score;
    score.gain = parent_entropy - fa * entropy(absent_counts, n_absent) -
                 fp * entropy(present_counts, n_present);
    const double split_info = -fa * std::log2(fa) - fp * std::log2(fp);
    score.ratio = score.gain / split_info;
    return score;
}

/// Recursive C4.5-style builder over an index multiset (bootstrap samples
/// repeat indices). candidate_columns yields the sorted feature columns a
/// node may test, so forests can plug in per-node subsampling.
class TreeBuilder {
  public:
    TreeBuilder(const TrainingData& data, std::size_t min_leaf, bool mean_gain_filter,
                std::function<std::vector<std::size_t>()> candidate_columns)
        : data_(data),
          min_leaf_(min_leaf),
          mean_gain_filter_(mean_gain_filter),
          candidate_columns_(std::move(candidate_columns)) {}

    DecisionTree build(const std::vector<std::size_t>& rows) {
        tree_.nodes.clear();
        build_node(rows);
        return std::move(tree_);
    }

  private:
    std::size_t build_node(const std::vector<std::size_t>& rows) {
        const std::size_t id = tree_.nodes.size();
        tree_.nodes.emplace_back();
        std::vector<std::size_t> counts(data_.num_classes, 0);
        for (std::size_t r : rows) ++counts[data_.labels[r]];
        tree_.nodes[id].class_counts = counts;
        tree_.nodes[id].label = majority_class(counts);

        const bool pure = counts[tree_.nodes[id].label] == rows.size();
        if (pure || rows.size() < 2 * min_leaf_) return id;

        const std::size_t j = choose_feature(rows, counts);
        if (j == kNoSplit) return id;

        std::vector<std::size_t> absent_rows;
        std::vector<std::size_t> present_rows;
        for (std::size_t r : rows)
            (data_.rows[r][j] ? present_rows : absent_rows).push_back(r);

        tree_.nodes[id].feature = static_cast<std::int64_t>(j);
        const std::size_t absent_id = build_node(absent_rows);
        tree_.nodes[id].absent = static_cast<std::int64_t>(absent_id);
        const std::size_t present_id = build_node(present_rows);
        tree_.nodes[id].present = static_cast<std::int64_t>(present_id);
        return id;
    }

    static constexpr std::size_t kNoSplit = static_cast<std::size_t>(-1);

    /// Best column by gain ratio among positive-gain candidates; with the
    /// mean-gain filter on, only candidates with gain >= the candidates'
    /// mean gain compete (the max-gain column always stays eligible, which
    /// absorbs float rounding in the mean). Ties go to the lowest column.
    std::size_t choose_feature(const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& counts) {
        const double parent = entropy(counts, rows.size());
        const std::vector<std::size_t> columns = candidate_columns_();
        std::vector<std::size_t> cand_cols;
        std::vector<SplitScore> cand_scores;
        double gain_sum = 0.0;
        double gain_max = 0.0;
        for (std::size_t j : columns) {
            const SplitScore s = score_split(data_, rows, parent, j);
            if (s.gain <= 0.0) continue;
            cand_cols.push_back(j);
            cand_scores.push_back(s);
            gain_sum += s.gain;
            if (s.gain > gain_max) gain_max = s.gain;
        }
        if (cand_cols.empty()) return kNoSplit;
        const double mean_gain = gain_sum / static_cast<double>(cand_cols.size());
        std::size_t best = kNoSplit;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < cand_cols.size(); ++i) {
            if (mean_gain_filter_ && cand_scores[i].gain < mean_gain &&
                cand_scores[i].gain != gain_max)
                continue;
            if (best == kNoSplit || cand_scores[i].ratio > best_ratio) {
                best = cand_cols[i];
                best_ratio = cand_scores[i].ratio;
            }
        }
        return best;
    }

    const TrainingData& data_;
    std::size_t min_leaf_;
    bool mean_gain_filter_;
    std::function<std::vector<std::size_t>()> candidate_columns_;
    DecisionTree tree_;
};

}  // namespace detail

inline DecisionTree train_c45(const TrainingData& data, const C45Config& config = {}) {
    validate_training_data(data);
    std::vector<std::size_t> all_columns(data.num_features);
    std::iota(all_columns.begin(), all_columns.end(), 0);
    detail::TreeBuilder builder(data, config.min_leaf, config.mean_gain_filter,
                                [&all_columns] { return all_columns; });
    std::vector<std::size_t> rows(data.rows.size());
    std::iota(rows.begin(), rows.end(), 0);
    return builder.build(rows);
}

inline std::size_t predict(const DecisionTree& tree, const FeatureRow& x) {
    std::size_t at = 0;
    while (tree.nodes[at].feature >= 0) {
        const std::size_t j = static_cast<std::size_t>(tree.nodes[at].feature);
        at = static_cast<std::size_t>(x[j] ? tree.nodes[at].present : tree.nodes[at].absent);
    }
    return tree.nodes[at].label;
}

}  // namespace condminer::ml
