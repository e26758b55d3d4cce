#include <vector>

#include "catch2/catch_amalgamated.hpp"

#include "condminer/ml/c45.hpp"
#include "condminer/rng.hpp"
#include "support/oracles.hpp"

using namespace condminer;
using namespace condminer::ml;

namespace {

TrainingData shattered_data(Rng& rng, std::size_t num_classes, std::size_t noise_cols) {
    // One indicator column per class plus noise; the indicators shatter the
    // classes by construction.
    TrainingData data;
    data.num_classes = num_classes;
    data.num_features = num_classes + noise_cols;
    const std::size_t rows = num_classes * 3 + rng.below(10);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t y = i < num_classes ? i : rng.below(num_classes);
        FeatureRow row(data.num_features, 0);
        row[y] = 1;
        for (std::size_t j = num_classes; j < data.num_features; ++j)
            row[j] = static_cast<std::uint8_t>(rng.below(2));
        data.rows.push_back(std::move(row));
        data.labels.push_back(y);
    }
    return data;
}

double training_accuracy(const DecisionTree& tree, const TrainingData& data) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < data.rows.size(); ++i)
        if (predict(tree, data.rows[i]) == data.labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.rows.size());
}

}  // namespace

TEST_CASE("pure input collapses to a single leaf") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 2;
    data.rows = {{0, 1}, {1, 0}, {1, 1}};
    data.labels = {1, 1, 1};
    const DecisionTree tree = train_c45(data);
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].feature == -1);
    CHECK(tree.nodes[0].label == 1);
    CHECK(tree.nodes[0].class_counts == std::vector<std::size_t>{0, 3});
    CHECK(predict(tree, {0, 0}) == 1);
}

TEST_CASE("a perfectly separating column beats a noisy one at the root") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 2;
    data.rows = {{1, 1}, {1, 0}, {1, 1}, {0, 0}, {0, 1}, {0, 0}};
    data.labels = {0, 0, 0, 1, 1, 1};

    // Premise check: column 0 carries the whole label entropy, column 1 less.
    const testsupport::OracleSplit s0 = testsupport::oracle_split(data.rows, data.labels, 2, 0);
    const testsupport::OracleSplit s1 = testsupport::oracle_split(data.rows, data.labels, 2, 1);
    REQUIRE(s0.gain == Catch::Approx(1.0));
    REQUIRE(s1.gain < s0.gain);

    C45Config config;
    config.min_leaf = 1;
    const DecisionTree tree = train_c45(data, config);
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].feature == 0);
    const TreeNode& absent = tree.nodes[static_cast<std::size_t>(tree.nodes[0].absent)];
    const TreeNode& present = tree.nodes[static_cast<std::size_t>(tree.nodes[0].present)];
    CHECK(absent.feature == -1);
    CHECK(absent.label == 1);
    CHECK(present.feature == -1);
    CHECK(present.label == 0);
    CHECK(training_accuracy(tree, data) == 1.0);
}

TEST_CASE("all-zero-gain data yields a single majority leaf") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 2;
    // Both columns split the labels evenly; no information in either.
    data.rows = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
    data.labels = {0, 1, 0, 1};
    const DecisionTree tree = train_c45(data, {1, true});
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].label == 0);
}

TEST_CASE("too few rows stop the recursion even when separable") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 1;
    data.rows = {{1}, {0}, {1}};
    data.labels = {0, 1, 0};
    // min_leaf 2 requires at least 4 rows to split.
    const DecisionTree tree = train_c45(data, {2, true});
    REQUIRE(tree.nodes.size() == 1);
    CHECK(tree.nodes[0].label == 0);

    const DecisionTree unlimited = train_c45(data, {1, true});
    CHECK(unlimited.nodes.size() == 3);
}

TEST_CASE("the mean-gain filter can veto the best-ratio column") {
    // Column 0: tiny pure split (1 of 16 rows), low gain but top gain ratio.
    // Column 1: balanced 8/8 split, far higher gain, lower ratio.
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 2;
    for (std::size_t i = 0; i < 16; ++i) {
        FeatureRow row(2, 0);
        if (i == 0) row[0] = 1;
        if (i < 6 || i == 8 || i == 9) row[1] = 1;
        data.rows.push_back(row);
        data.labels.push_back(i < 8 ? 1 : 0);
    }

    const testsupport::OracleSplit s0 = testsupport::oracle_split(data.rows, data.labels, 2, 0);
    const testsupport::OracleSplit s1 = testsupport::oracle_split(data.rows, data.labels, 2, 1);
    REQUIRE(s0.ratio > s1.ratio);
    REQUIRE(s0.gain < (s0.gain + s1.gain) / 2.0);

    const DecisionTree filtered = train_c45(data, {1, true});
    CHECK(filtered.nodes[0].feature == 1);

    const DecisionTree unfiltered = train_c45(data, {1, false});
    CHECK(unfiltered.nodes[0].feature == 0);
}

TEST_CASE("gain-ratio ties resolve to the lowest column") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 3;
    // Columns 1 and 2 are identical perfect separators; column 0 is noise.
    data.rows = {{0, 1, 1}, {1, 1, 1}, {0, 0, 0}, {1, 0, 0}};
    data.labels = {0, 0, 1, 1};
    const DecisionTree tree = train_c45(data, {1, true});
    CHECK(tree.nodes[0].feature == 1);
}

TEST_CASE("min_leaf=1 trees reach full training accuracy on shattered data") {
    Rng rng(31337);
    for (int round = 0; round < 25; ++round) {
        const std::size_t num_classes = 2 + rng.below(3);
        const TrainingData data = shattered_data(rng, num_classes, 3);
        const DecisionTree tree = train_c45(data, {1, true});
        REQUIRE(training_accuracy(tree, data) == 1.0);
    }
}

TEST_CASE("internal nodes carry their class counts") {
    TrainingData data;
    data.num_classes = 2;
    data.num_features = 1;
    data.rows = {{1}, {1}, {0}, {0}};
    data.labels = {0, 0, 1, 1};
    const DecisionTree tree = train_c45(data, {1, true});
    REQUIRE(tree.nodes.size() == 3);
    CHECK(tree.nodes[0].class_counts == std::vector<std::size_t>{2, 2});
    for (const TreeNode& node : tree.nodes) REQUIRE_FALSE(node.class_counts.empty());
}

TEST_CASE("c45 rejects empty training data") {
    TrainingData empty;
    empty.num_classes = 2;
    CHECK_THROWS_AS(train_c45(empty), EmptyTrainingSet);
}
