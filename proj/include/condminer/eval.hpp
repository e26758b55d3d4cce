#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "condminer/corpus.hpp"
#include "condminer/features.hpp"
#include "condminer/ml/model.hpp"
#include "condminer/rng.hpp"

namespace condminer {

using ml::ClassifierConfig;

using ConfusionMatrix = std::vector<std::vector<std::size_t>>;

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

struct MetricSet {
    std::vector<ClassMetrics> per_class;
    double accuracy = 0.0;
    double weighted_precision = 0.0;
    std::size_t total = 0;
};

/// Precision, recall and F per class from a gold x predicted matrix, plus
/// accuracy and gold-share-weighted precision. Every 0/0 cell is 0.
inline MetricSet compute_metrics(const ConfusionMatrix& confusion) {
    const std::size_t k = confusion.size();
    if (k == 0) throw EmptyMatrix("confusion matrix has no classes");
    for (const auto& row : confusion)
        if (row.size() != k) throw EmptyMatrix("confusion matrix is not square");

    MetricSet metrics;
    metrics.per_class.resize(k);
    std::size_t trace = 0;
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t tp = confusion[c][c];
        std::size_t gold = 0;
        std::size_t predicted = 0;
        for (std::size_t o = 0; o < k; ++o) {
            gold += confusion[c][o];
            predicted += confusion[o][c];
            metrics.total += confusion[c][o];
        }
        trace += tp;
        ClassMetrics& m = metrics.per_class[c];
        m.precision = predicted == 0 ? 0.0 : static_cast<double>(tp) / predicted;
        m.recall = gold == 0 ? 0.0 : static_cast<double>(tp) / gold;
        m.f_measure = m.precision + m.recall == 0.0
                          ? 0.0
                          : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    if (metrics.total > 0) {
        metrics.accuracy = static_cast<double>(trace) / metrics.total;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t gold = std::accumulate(confusion[c].begin(), confusion[c].end(),
                                               static_cast<std::size_t>(0));
            metrics.weighted_precision += static_cast<double>(gold) / metrics.total *
                                          metrics.per_class[c].precision;
        }
    }
    return metrics;
}

namespace detail {

// Distinct derived streams: one family for per-class shuffles, one for
// per-fold training seeds.
inline constexpr std::uint64_t kFoldStream = 0xF01D;
inline constexpr std::uint64_t kTrainStream = 0x7E41;

inline std::vector<std::size_t> order_by_id(const std::vector<std::string>& ids) {
    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&ids](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    return order;
}

}  // namespace detail

/// Fold index per row. Rows are taken in id order, each class is shuffled by
/// its own seeded stream, then dealt round-robin starting at fold 0, so a
/// fold's class count never strays more than 1 from proportionality and the
/// assignment ignores input row order.
inline std::vector<std::size_t> stratified_folds(const std::vector<std::string>& ids,
                                                 const std::vector<std::size_t>& labels,
                                                 std::size_t num_classes, std::size_t k,
                                                 std::uint64_t seed) {
    if (k < 2) throw BadConfig("fold count must be at least 2");
    if (ids.size() != labels.size())
        throw DimensionMismatch("id count != label count");
    if (ids.size() < k)
        throw TooFewInstances("dataset size " + std::to_string(ids.size()) +
                              " is smaller than fold count " + std::to_string(k));
    const std::vector<std::size_t> order = detail::order_by_id(ids);
    std::vector<std::size_t> fold_of(ids.size(), 0);
    for (std::size_t c = 0; c < num_classes; ++c) {
        std::vector<std::size_t> members;
        for (std::size_t row : order)
            if (labels[row] == c) members.push_back(row);
        Rng rng(mix_seed(mix_seed(seed, detail::kFoldStream), c));
        rng.shuffle(members);
        for (std::size_t pos = 0; pos < members.size(); ++pos)
            fold_of[members[pos]] = pos % k;
    }
    return fold_of;
}

inline std::vector<std::size_t> stratified_folds(const Dataset& ds, const LabelMapping& mapping,
                                                 std::size_t k, std::uint64_t seed) {
    std::vector<std::string> ids;
    ids.reserve(ds.size());
    for (const AnnotatedSentence& s : ds.sentences) ids.push_back(s.id);
    return stratified_folds(ids, ds.task_labels(mapping), mapping.num_classes(), k, seed);
}

struct EvaluationReport {
    std::string classifier;
    std::string label_map;
    std::size_t folds = 0;
    std::uint64_t seed = 0;
    double alpha = 1.0;
    std::size_t trees = 0;
    std::size_t min_leaf = 0;
    std::vector<std::string> classes;
    ConfusionMatrix confusion;
    std::vector<ConfusionMatrix> fold_confusion;
    MetricSet metrics;
    std::size_t dataset_size = 0;
};

/// k-fold cross-validation of one classifier configuration. Each fold gets
/// its own vocabulary, built from that fold's training sentences only; the
/// pooled matrix over all folds feeds the reported metrics. config.seed is
/// ignored: per-fold training seeds derive from the seed argument.
inline EvaluationReport cross_validate(const Dataset& ds, const LabelMapping& mapping,
                                       const ClassifierConfig& base_config, std::size_t k,
                                       std::uint64_t seed) {
    ClassifierConfig config = base_config;
    if (config.min_leaf == 0) {
        if (config.kind == ml::ClassifierKind::C45) config.min_leaf = 2;
        if (config.kind == ml::ClassifierKind::RandomForest) config.min_leaf = 1;
    }
    const std::vector<std::size_t> labels = ds.task_labels(mapping);
    std::vector<std::string> ids;
    ids.reserve(ds.size());
    for (const AnnotatedSentence& s : ds.sentences) ids.push_back(s.id);
    const std::vector<std::size_t> fold_of =
        stratified_folds(ids, labels, mapping.num_classes(), k, seed);
    const std::vector<std::size_t> order = detail::order_by_id(ids);

    std::vector<FeatureBag> bags;
    bags.reserve(ds.size());
    for (const AnnotatedSentence& s : ds.sentences) bags.push_back(extract_features(s.parse));

    const std::size_t nc = mapping.num_classes();
    EvaluationReport report;
    report.classifier = std::string(ml::classifier_name(config.kind));
    report.label_map = mapping.name;
    report.folds = k;
    report.seed = seed;
    report.alpha = config.alpha;
    report.trees = config.trees;
    report.min_leaf = config.min_leaf;
    report.classes = mapping.classes;
    report.confusion.assign(nc, std::vector<std::size_t>(nc, 0));
    report.dataset_size = ds.size();

    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::size_t> train_rows;
        std::vector<std::size_t> test_rows;
        for (std::size_t row : order)
            (fold_of[row] == f ? test_rows : train_rows).push_back(row);

        Vocabulary vocab;
        for (std::size_t row : train_rows)
            for (const std::string& token : bags[row].tokens) vocab.insert(token);

        ml::TrainingData data;
        data.num_classes = nc;
        data.num_features = vocab.size();
        for (std::size_t row : train_rows) {
            data.rows.push_back(vectorize(bags[row], vocab));
            data.labels.push_back(labels[row]);
        }
        ClassifierConfig fold_config = config;
        fold_config.seed = mix_seed(mix_seed(seed, detail::kTrainStream), f);
        const ml::TrainedModel model =
            ml::train_classifier(data, fold_config, mapping.classes, vocab);

        ConfusionMatrix fold_matrix(nc, std::vector<std::size_t>(nc, 0));
        for (std::size_t row : test_rows) {
            const std::size_t predicted = ml::predict(model, vectorize(bags[row], vocab));
            ++fold_matrix[labels[row]][predicted];
            ++report.confusion[labels[row]][predicted];
        }
        report.fold_confusion.push_back(std::move(fold_matrix));
    }
    report.metrics = compute_metrics(report.confusion);
    return report;
}

inline nlohmann::json report_to_json(const EvaluationReport& report) {
    nlohmann::json per_class = nlohmann::json::array();
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        per_class.push_back({{"class", report.classes[c]},
                             {"precision", report.metrics.per_class[c].precision},
                             {"recall", report.metrics.per_class[c].recall},
                             {"f_measure", report.metrics.per_class[c].f_measure}});
    }
    return nlohmann::json{
        {"format_version", 1},
        {"config",
         {{"classifier", report.classifier},
          {"label_map", report.label_map},
          {"folds", report.folds},
          {"seed", report.seed},
          {"alpha", report.alpha},
          {"trees", report.trees},
          {"min_leaf", report.min_leaf}}},
        {"classes", report.classes},
        {"confusion", report.confusion},
        {"fold_confusion", report.fold_confusion},
        {"metrics",
         {{"accuracy", report.metrics.accuracy},
          {"weighted_precision", report.metrics.weighted_precision},
          {"per_class", std::move(per_class)}}},
        {"dataset_size", report.dataset_size}};
}

inline EvaluationReport report_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("format_version"))
        throw BadConfig("report document is missing format_version");
    if (doc.at("format_version").get<int>() != 1)
        throw BadConfig("unsupported report format_version");
    EvaluationReport report;
    const nlohmann::json& config = doc.at("config");
    report.classifier = config.at("classifier").get<std::string>();
    report.label_map = config.at("label_map").get<std::string>();
    report.folds = config.at("folds").get<std::size_t>();
    report.seed = config.at("seed").get<std::uint64_t>();
    report.alpha = config.at("alpha").get<double>();
    report.trees = config.at("trees").get<std::size_t>();
    report.min_leaf = config.at("min_leaf").get<std::size_t>();
    report.classes = doc.at("classes").get<std::vector<std::string>>();
    report.confusion = doc.at("confusion").get<ConfusionMatrix>();
    report.fold_confusion = doc.at("fold_confusion").get<std::vector<ConfusionMatrix>>();
    const nlohmann::json& metrics = doc.at("metrics");
    report.metrics.accuracy = metrics.at("accuracy").get<double>();
    report.metrics.weighted_precision = metrics.at("weighted_precision").get<double>();
    for (const nlohmann::json& entry : metrics.at("per_class")) {
        ClassMetrics m;
        m.precision = entry.at("precision").get<double>();
        m.recall = entry.at("recall").get<double>();
        m.f_measure = entry.at("f_measure").get<double>();
        report.metrics.per_class.push_back(m);
    }
    report.metrics.total = 0;
    for (const auto& row : report.confusion)
        for (std::size_t cell : row) report.metrics.total += cell;
    report.dataset_size = doc.at("dataset_size").get<std::size_t>();
    return report;
}

namespace detail {

inline std::string fmt3(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return buf;
}

}  // namespace detail

/// Text table: a classifier row with the first class's P/R/F plus the
/// weighted precision as Total, then per-class metrics and the pooled
/// confusion matrix. Renders identically from a freshly computed report and
/// from its JSON round trip.
inline std::string render_report_table(const EvaluationReport& report) {
    std::ostringstream os;
    std::size_t class_width = std::string("Classifier").size();
    for (const std::string& name : report.classes)
        class_width = std::max(class_width, name.size());
    const int cw = static_cast<int>(class_width + 2);

    os << std::left << std::setw(cw) << "Classifier" << std::right << std::setw(11) << "Precision"
       << std::setw(9) << "Recall" << std::setw(12) << "F-measure" << std::setw(8) << "Total"
       << '\n';
    const ClassMetrics& first = report.metrics.per_class.at(0);
    os << std::left << std::setw(cw) << report.classifier << std::right << std::setw(11)
       << detail::fmt3(first.precision) << std::setw(9) << detail::fmt3(first.recall)
       << std::setw(12) << detail::fmt3(first.f_measure) << std::setw(8)
       << detail::fmt3(report.metrics.weighted_precision) << "\n\n";

    os << "Per-class metrics\n";
    os << std::left << std::setw(cw) << "Class" << std::right << std::setw(11) << "Precision"
       << std::setw(9) << "Recall" << std::setw(12) << "F-measure" << '\n';
    for (std::size_t c = 0; c < report.classes.size(); ++c) {
        const ClassMetrics& m = report.metrics.per_class[c];
        os << std::left << std::setw(cw) << report.classes[c] << std::right << std::setw(11)
           << detail::fmt3(m.precision) << std::setw(9) << detail::fmt3(m.recall) << std::setw(12)
           << detail::fmt3(m.f_measure) << '\n';
    }
    os << '\n';

    os << "Confusion matrix (rows gold, columns predicted)\n";
    os << std::left << std::setw(cw) << "";
    for (const std::string& name : report.classes)
        os << std::right << std::setw(static_cast<int>(std::max<std::size_t>(name.size(), 6) + 2))
           << name;
    os << '\n';
    for (std::size_t g = 0; g < report.classes.size(); ++g) {
        os << std::left << std::setw(cw) << report.classes[g];
        for (std::size_t p = 0; p < report.classes.size(); ++p)
            os << std::right
               << std::setw(static_cast<int>(std::max<std::size_t>(report.classes[p].size(), 6) + 2))
               << report.confusion[g][p];
        os << '\n';
    }
    os << '\n';

    std::ostringstream alpha_repr;
    alpha_repr << report.alpha;
    os << "Config: classifier=" << report.classifier << " label-map=" << report.label_map
       << " folds=" << report.folds << " seed=" << report.seed << " alpha=" << alpha_repr.str()
       << " trees=" << report.trees << " min-leaf=" << report.min_leaf << '\n';
    os << "Dataset: " << report.dataset_size << " sentences\n";
    os << "Accuracy: " << detail::fmt3(report.metrics.accuracy) << '\n';
    os << "Weighted precision: " << detail::fmt3(report.metrics.weighted_precision) << '\n';
    return os.str();
}

}  // namespace condminer
