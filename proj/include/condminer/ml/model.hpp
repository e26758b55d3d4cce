#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "condminer/features.hpp"
#include "condminer/ml/c45.hpp"
#include "condminer/ml/common.hpp"
#include "condminer/ml/naive_bayes.hpp"
#include "condminer/ml/random_forest.hpp"
#include "condminer/ml/zeror.hpp"

namespace condminer::ml {

using ModelVariant = std::variant<ZeroRModel, NaiveBayesModel, DecisionTree, RandomForestModel>;

/// A classifier bound to the class order and vocabulary it was trained with.
struct TrainedModel {
    std::vector<std::string> classes;
    Vocabulary vocabulary;
    ClassifierConfig config;
    ModelVariant model;
};

inline TrainedModel train_classifier(const TrainingData& data, const ClassifierConfig& config,
                                     std::vector<std::string> classes, Vocabulary vocabulary) {
    TrainedModel out;
    out.classes = std::move(classes);
    out.vocabulary = std::move(vocabulary);
    out.config = config;
    switch (config.kind) {
        case ClassifierKind::ZeroR:
            out.model = train_zeror(data);
            break;
        case ClassifierKind::NaiveBayes:
            out.model = train_naive_bayes(data, config.alpha);
            break;
        case ClassifierKind::C45: {
            C45Config c45;
            c45.min_leaf = config.min_leaf == 0 ? 2 : config.min_leaf;
            c45.mean_gain_filter = config.mean_gain_filter;
            out.model = train_c45(data, c45);
            break;
        }
        case ClassifierKind::RandomForest: {
            RandomForestConfig rf;
            rf.trees = config.trees;
            rf.features_per_split = config.features_per_split;
            rf.min_leaf = config.min_leaf == 0 ? 1 : config.min_leaf;
            rf.bootstrap = config.bootstrap;
            rf.seed = config.seed;
            out.model = train_random_forest(data, rf);
            break;
        }
    }
    return out;
}

inline std::size_t predict(const TrainedModel& model, const FeatureRow& x) {
    if (x.size() != model.vocabulary.size())
        throw DimensionMismatch("feature vector width " + std::to_string(x.size()) +
                                " != vocabulary size " + std::to_string(model.vocabulary.size()));
    return std::visit([&x](const auto& m) { return predict(m, x); }, model.model);
}

namespace detail {

inline nlohmann::json tree_to_json(const DecisionTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& node : tree.nodes) {
        nodes.push_back({{"feature", node.feature},
                         {"label", node.label},
                         {"class_counts", node.class_counts},
                         {"absent", node.absent},
                         {"present", node.present}});
    }
    return nodes;
}

inline DecisionTree tree_from_json(const nlohmann::json& nodes) {
    DecisionTree tree;
    for (const nlohmann::json& n : nodes) {
        TreeNode node;
        node.feature = n.at("feature").get<std::int64_t>();
        node.label = n.at("label").get<std::size_t>();
        node.class_counts = n.at("class_counts").get<std::vector<std::size_t>>();
        node.absent = n.at("absent").get<std::int64_t>();
        node.present = n.at("present").get<std::int64_t>();
        tree.nodes.push_back(std::move(node));
    }
    return tree;
}

}  // namespace detail

inline constexpr int kModelFormatVersion = 1;

inline nlohmann::json model_to_json(const TrainedModel& model) {
    nlohmann::json doc{{"format_version", kModelFormatVersion},
                       {"classes", model.classes},
                       {"vocabulary", model.vocabulary.to_json()}};
    if (const auto* zr = std::get_if<ZeroRModel>(&model.model)) {
        doc["variant"] = "zeror";
        doc["parameters"] = {{"class_counts", zr->class_counts}, {"majority", zr->majority}};
    } else if (const auto* nb = std::get_if<NaiveBayesModel>(&model.model)) {
        doc["variant"] = "nb";
        doc["parameters"] = {{"alpha", nb->alpha},
                             {"total", nb->total},
                             {"class_counts", nb->class_counts},
                             {"present_counts", nb->present_counts}};
    } else if (const auto* tree = std::get_if<DecisionTree>(&model.model)) {
        doc["variant"] = "c45";
        doc["parameters"] = {{"min_leaf", model.config.min_leaf == 0 ? 2 : model.config.min_leaf},
                             {"nodes", detail::tree_to_json(*tree)}};
    } else if (const auto* rf = std::get_if<RandomForestModel>(&model.model)) {
        doc["variant"] = "rf";
        nlohmann::json trees = nlohmann::json::array();
        for (const DecisionTree& tree : rf->trees) trees.push_back(detail::tree_to_json(tree));
        doc["parameters"] = {{"trees", std::move(trees)},
                             {"tree_count", rf->config.trees},
                             {"features_per_split", rf->resolved_features_per_split},
                             {"min_leaf", rf->config.min_leaf},
                             {"bootstrap", rf->config.bootstrap},
                             {"seed", rf->config.seed},
                             {"num_classes", rf->num_classes}};
    }
    return doc;
}

inline TrainedModel model_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("format_version"))
        throw BadConfig("model document is missing format_version");
    if (doc.at("format_version").get<int>() != kModelFormatVersion)
        throw BadConfig("unsupported model format_version");
    TrainedModel model;
    model.classes = doc.at("classes").get<std::vector<std::string>>();
    model.vocabulary = Vocabulary::from_json(doc.at("vocabulary"));
    const std::string variant = doc.at("variant").get<std::string>();
    const nlohmann::json& p = doc.at("parameters");
    if (variant == "zeror") {
        model.config.kind = ClassifierKind::ZeroR;
        ZeroRModel zr;
        zr.class_counts = p.at("class_counts").get<std::vector<std::size_t>>();
        zr.majority = p.at("majority").get<std::size_t>();
        model.model = std::move(zr);
    } else if (variant == "nb") {
        model.config.kind = ClassifierKind::NaiveBayes;
        NaiveBayesModel nb;
        nb.alpha = p.at("alpha").get<double>();
        nb.total = p.at("total").get<std::size_t>();
        nb.class_counts = p.at("class_counts").get<std::vector<std::size_t>>();
        nb.present_counts = p.at("present_counts").get<std::vector<std::vector<std::size_t>>>();
        model.config.alpha = nb.alpha;
        model.model = std::move(nb);
    } else if (variant == "c45") {
        model.config.kind = ClassifierKind::C45;
        model.config.min_leaf = p.at("min_leaf").get<std::size_t>();
        model.model = detail::tree_from_json(p.at("nodes"));
    } else if (variant == "rf") {
        model.config.kind = ClassifierKind::RandomForest;
        RandomForestModel rf;
        rf.config.trees = p.at("tree_count").get<std::size_t>();
        rf.config.features_per_split = p.at("features_per_split").get<std::size_t>();
        rf.config.min_leaf = p.at("min_leaf").get<std::size_t>();
        rf.config.bootstrap = p.at("bootstrap").get<bool>();
        rf.config.seed = p.at("seed").get<std::uint64_t>();
        rf.num_classes = p.at("num_classes").get<std::size_t>();
        rf.resolved_features_per_split = rf.config.features_per_split;
        for (const nlohmann::json& tree : p.at("trees"))
            rf.trees.push_back(detail::tree_from_json(tree));
        model.config.trees = rf.config.trees;
        model.config.min_leaf = rf.config.min_leaf;
        model.config.seed = rf.config.seed;
        model.model = std::move(rf);
    } else {
        throw BadConfig("unknown model variant \"" + variant + "\"");
    }
    return model;
}

}  // namespace condminer::ml
