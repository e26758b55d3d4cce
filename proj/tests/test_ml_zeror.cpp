#include "catch2/catch_amalgamated.hpp"

#include "condminer/ml/zeror.hpp"

using namespace condminer;
using namespace condminer::ml;

namespace {

TrainingData make_data(std::vector<std::size_t> labels, std::size_t num_classes) {
    TrainingData data;
    data.labels = std::move(labels);
    data.num_classes = num_classes;
    data.num_features = 2;
    data.rows.assign(data.labels.size(), FeatureRow{0, 1});
    return data;
}

}  // namespace

TEST_CASE("zeror stores the majority label") {
    // Class order CA, CC, NC; labels NC, NC, CA.
    const ZeroRModel model = train_zeror(make_data({2, 2, 0}, 3));
    CHECK(model.majority == 2);
    CHECK(model.class_counts == std::vector<std::size_t>{1, 0, 2});
    CHECK(predict(model, {0, 0}) == 2);
    CHECK(predict(model, {1, 1}) == 2);
}

TEST_CASE("zeror ties resolve to the earliest class") {
    const ZeroRModel model = train_zeror(make_data({0, 2}, 3));
    CHECK(model.majority == 0);

    const ZeroRModel all_tied = train_zeror(make_data({2, 1, 0}, 3));
    CHECK(all_tied.majority == 0);
}

TEST_CASE("zeror rejects bad input") {
    TrainingData empty;
    empty.num_classes = 2;
    CHECK_THROWS_AS(train_zeror(empty), EmptyTrainingSet);

    TrainingData bad_label = make_data({0, 5}, 3);
    CHECK_THROWS_AS(train_zeror(bad_label), BadConfig);

    TrainingData ragged = make_data({0, 1}, 2);
    ragged.rows[1] = {1};
    CHECK_THROWS_AS(train_zeror(ragged), DimensionMismatch);

    TrainingData mismatched = make_data({0, 1}, 2);
    mismatched.labels.push_back(1);
    CHECK_THROWS_AS(train_zeror(mismatched), DimensionMismatch);
}
