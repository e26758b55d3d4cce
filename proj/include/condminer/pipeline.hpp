#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "condminer/corpus.hpp"
#include "condminer/eval.hpp"
#include "condminer/features.hpp"
#include "condminer/log.hpp"
#include "condminer/ml/model.hpp"
#include "condminer/synthetic.hpp"

namespace condminer {

enum class EmitFormat { Json, Table };

inline EmitFormat emit_from_name(std::string_view name) {
    if (name == "json") return EmitFormat::Json;
    if (name == "table") return EmitFormat::Table;
    throw BadConfig("unknown emit format \"" + std::string(name) + "\"");
}

/// Everything the subcommands need; fields irrelevant to a subcommand are
/// ignored.
struct PipelineConfig {
    std::string input;
    CorpusFormat format = CorpusFormat::Jsonl;
    TaskMapping mapping = TaskMapping::ThreeClass;
    ml::ClassifierConfig classifier;
    std::size_t folds = 10;
    std::uint64_t seed = 42;
    std::string out;
    EmitFormat emit = EmitFormat::Json;
    std::string vocab_out;
    std::string manifest_out;
    std::size_t size = 200;
};

namespace detail {

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
}

inline Dataset load_input(const PipelineConfig& config) {
    Dataset ds = load_corpus(std::filesystem::path(config.input), config.format);
    log_info("loaded ", ds.size(), " sentences from ", config.input);
    return ds;
}

}  // namespace detail

/// Lists every candidate condition part per sentence, then per-guideline
/// kept/removed counts. JSON mode emits one object per match followed by one
/// summary object.
inline void run_candidates(const PipelineConfig& config, std::ostream& out) {
    const Dataset ds = detail::load_input(config);
    const FilterOutcome outcome = filter_candidates(ds);

    std::ostringstream body;
    for (const AnnotatedSentence& s : ds.sentences) {
        for (const CandidateMatch& match : find_condition_candidates(s.parse)) {
            if (config.emit == EmitFormat::Json) {
                body << nlohmann::json{{"sentence_id", s.id},
                                       {"pattern", std::string(pattern_name(match.pattern))},
                                       {"position", match.position},
                                       {"subtree", serialize(match.subtree)}}
                            .dump()
                     << '\n';
            } else {
                body << s.id << " [" << s.guideline << "] "
                     << pattern_name(match.pattern) << " at " << match.position << ": "
                     << serialize(match.subtree) << '\n';
            }
        }
    }

    if (config.emit == EmitFormat::Json) {
        nlohmann::json per_guideline = nlohmann::json::object();
        for (const auto& [guideline, kept] : outcome.kept_per_guideline)
            per_guideline[guideline]["kept"] = kept;
        for (const auto& [guideline, removed] : outcome.removed_per_guideline) {
            per_guideline[guideline]["removed"] = removed;
            if (!per_guideline[guideline].contains("kept")) per_guideline[guideline]["kept"] = 0;
        }
        for (auto& [guideline, entry] : per_guideline.items())
            if (!entry.contains("removed")) entry["removed"] = 0;
        body << nlohmann::json{{"kept", outcome.kept.size()},
                               {"removed", outcome.removed_total},
                               {"per_guideline", per_guideline}}
                    .dump()
             << '\n';
    } else {
        body << "Guideline        Kept  Removed\n";
        std::set<std::string> guidelines;
        for (const auto& [g, n] : outcome.kept_per_guideline) guidelines.insert(g);
        for (const auto& [g, n] : outcome.removed_per_guideline) guidelines.insert(g);
        for (const std::string& g : guidelines) {
            const auto kept_it = outcome.kept_per_guideline.find(g);
            const auto removed_it = outcome.removed_per_guideline.find(g);
            body << std::left << std::setw(17) << g << std::right << std::setw(4)
                 << (kept_it == outcome.kept_per_guideline.end() ? 0 : kept_it->second)
                 << std::setw(9)
                 << (removed_it == outcome.removed_per_guideline.end() ? 0 : removed_it->second)
                 << '\n';
        }
        body << std::left << std::setw(17) << "Total" << std::right << std::setw(4)
             << outcome.kept.size() << std::setw(9) << outcome.removed_total << '\n';
    }

    if (!config.out.empty()) detail::write_text_file(config.out, body.str());
    out << body.str();
}

/// Dumps the feature bag of every sentence (no candidate filtering) as JSON
/// lines; optionally writes the whole-file vocabulary.
inline void run_featurize(const PipelineConfig& config, std::ostream& out) {
    const Dataset ds = detail::load_input(config);
    std::ostringstream body;
    std::vector<FeatureBag> bags;
    bags.reserve(ds.size());
    for (const AnnotatedSentence& s : ds.sentences) {
        bags.push_back(extract_features(s.parse));
        if (config.emit == EmitFormat::Json) {
            body << nlohmann::json{{"sentence_id", s.id}, {"tokens", bags.back().tokens}}.dump()
                 << '\n';
        } else {
            body << s.id << ":";
            for (const std::string& token : bags.back().tokens) body << ' ' << token;
            body << '\n';
        }
    }
    if (!config.vocab_out.empty()) {
        const Vocabulary vocab = build_vocabulary(bags);
        detail::write_text_file(config.vocab_out, vocab.to_json().dump() + "\n");
    }
    if (!config.out.empty()) detail::write_text_file(config.out, body.str());
    out << body.str();
}

/// Trains one model on the whole corpus after candidate filtering and writes
/// the serialized model to --out (stdout when --out is missing).
inline void run_train(const PipelineConfig& config, std::ostream& out) {
    const Dataset ds = detail::load_input(config);
    const FilterOutcome outcome = filter_candidates(ds);
    if (outcome.kept.empty()) throw EmptyTrainingSet("no sentences with candidate parts");
    const LabelMapping mapping = label_mapping(config.mapping);
    log_info("training on ", outcome.kept.size(), " sentences, ", outcome.removed_total,
             " removed by the candidate filter");

    std::vector<std::string> ids;
    for (const AnnotatedSentence& s : outcome.kept.sentences) ids.push_back(s.id);
    const std::vector<std::size_t> order = detail::order_by_id(ids);
    std::vector<FeatureBag> bags;
    bags.reserve(outcome.kept.size());
    for (const AnnotatedSentence& s : outcome.kept.sentences)
        bags.push_back(extract_features(s.parse));

    Vocabulary vocab;
    for (std::size_t row : order)
        for (const std::string& token : bags[row].tokens) vocab.insert(token);

    ml::TrainingData data;
    data.num_classes = mapping.num_classes();
    data.num_features = vocab.size();
    const std::vector<std::size_t> labels = outcome.kept.task_labels(mapping);
    for (std::size_t row : order) {
        data.rows.push_back(vectorize(bags[row], vocab));
        data.labels.push_back(labels[row]);
    }
    ClassifierConfig model_config = config.classifier;
    model_config.seed = config.seed;
    if (model_config.min_leaf == 0) {
        if (model_config.kind == ml::ClassifierKind::C45) model_config.min_leaf = 2;
        if (model_config.kind == ml::ClassifierKind::RandomForest) model_config.min_leaf = 1;
    }
    const ml::TrainedModel model =
        ml::train_classifier(data, model_config, mapping.classes, vocab);
    const std::string doc = ml::model_to_json(model).dump() + "\n";
    if (!config.out.empty()) {
        detail::write_text_file(config.out, doc);
        out << "model written to " << config.out << '\n';
    } else {
        out << doc;
    }
}

/// Candidate filter, per-fold featurization and cross-validation. With --out
/// the chosen emit format goes to the file and the table to stdout;
/// otherwise the emit format goes to stdout.
inline void run_evaluate(const PipelineConfig& config, std::ostream& out) {
    const Dataset ds = detail::load_input(config);
    const FilterOutcome outcome = filter_candidates(ds);
    log_info("kept ", outcome.kept.size(), " sentences, removed ", outcome.removed_total);
    const LabelMapping mapping = label_mapping(config.mapping);
    const EvaluationReport report =
        cross_validate(outcome.kept, mapping, config.classifier, config.folds, config.seed);
    const std::string rendered = config.emit == EmitFormat::Json
                                     ? report_to_json(report).dump(2) + "\n"
                                     : render_report_table(report);
    if (!config.out.empty()) {
        detail::write_text_file(config.out, rendered);
        out << render_report_table(report);
    } else {
        out << rendered;
    }
}

/// Raw per-guideline label counts, before any filtering.
inline void run_stats(const PipelineConfig& config, std::ostream& out) {
    const Dataset ds = detail::load_input(config);
    const CorpusStats stats = corpus_stats(ds);
    const std::string rendered = config.emit == EmitFormat::Json
                                     ? stats_to_json(stats).dump(2) + "\n"
                                     : render_stats_table(stats);
    if (!config.out.empty()) detail::write_text_file(config.out, rendered);
    out << rendered;
}

/// Deterministic labeled corpus as JSON lines; the manifest records which
/// sentences were built patternless.
inline void run_generate(const PipelineConfig& config, std::ostream& out) {
    SyntheticConfig synth;
    synth.seed = config.seed;
    synth.size = config.size;
    const SyntheticCorpus corpus = generate_synthetic(synth);
    std::ostringstream body;
    save_corpus_jsonl(corpus.dataset, body);
    if (!config.manifest_out.empty())
        detail::write_text_file(config.manifest_out,
                                synthetic_manifest(synth, corpus).dump(2) + "\n");
    if (!config.out.empty()) {
        detail::write_text_file(config.out, body.str());
        out << "corpus written to " << config.out << '\n';
    } else {
        out << body.str();
    }
}

}  // namespace condminer
