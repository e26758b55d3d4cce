#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "condminer/pipeline.hpp"

namespace {

struct CliOptions {
    condminer::PipelineConfig config;
    std::string format = "jsonl";
    std::string label_map = "three";
    std::string classifier = "zeror";
    std::string emit = "table";
};

void add_io_options(CLI::App* sub, CliOptions& opt, bool with_input = true) {
    if (with_input)
        sub->add_option("--input", opt.config.input, "corpus file")->required();
    sub->add_option("--format", opt.format, "corpus format")
        ->check(CLI::IsMember({"jsonl", "tsv"}))
        ->capture_default_str();
    sub->add_option("--out", opt.config.out, "output file");
    sub->add_option("--emit", opt.emit, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
}

void add_model_options(CLI::App* sub, CliOptions& opt) {
    sub->add_option("--label-map", opt.label_map, "label mapping")
        ->check(CLI::IsMember({"raw4", "three", "binary-ca", "merged-cond"}))
        ->capture_default_str();
    sub->add_option("--classifier", opt.classifier, "classifier")
        ->check(CLI::IsMember({"zeror", "nb", "c45", "rf"}))
        ->capture_default_str();
    sub->add_option("--seed", opt.config.seed, "random seed")->capture_default_str();
    sub->add_option("--trees", opt.config.classifier.trees, "forest size")
        ->capture_default_str();
    sub->add_option("--alpha", opt.config.classifier.alpha, "smoothing strength")
        ->capture_default_str();
    sub->add_option("--min-leaf", opt.config.classifier.min_leaf,
                    "minimum rows to keep splitting (0 = per-classifier default)")
        ->capture_default_str();
}

void finalize(CliOptions& opt) {
    opt.config.format = condminer::corpus_format_from_name(opt.format);
    opt.config.mapping = condminer::mapping_from_name(opt.label_map);
    opt.config.classifier.kind = condminer::ml::classifier_from_name(opt.classifier);
    opt.config.emit = condminer::emit_from_name(opt.emit);
    opt.config.classifier.seed = opt.config.seed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"condition statement mining over constituency parses"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* candidates = app.add_subcommand("candidates", "list candidate condition parts");
    add_io_options(candidates, opt);

    CLI::App* featurize = app.add_subcommand("featurize", "dump per-sentence feature bags");
    add_io_options(featurize, opt);
    featurize->add_option("--vocab-out", opt.config.vocab_out, "write the vocabulary here");

    CLI::App* train = app.add_subcommand("train", "train one model on the whole corpus");
    add_io_options(train, opt);
    add_model_options(train, opt);

    CLI::App* evaluate = app.add_subcommand("evaluate", "cross-validate a classifier");
    add_io_options(evaluate, opt);
    add_model_options(evaluate, opt);
    evaluate->add_option("--folds", opt.config.folds, "fold count")->capture_default_str();

    CLI::App* stats = app.add_subcommand("stats", "per-guideline label counts");
    add_io_options(stats, opt);

    CLI::App* generate =
        app.add_subcommand("generate-synthetic", "emit the deterministic synthetic corpus");
    add_io_options(generate, opt, false);
    generate->add_option("--seed", opt.config.seed, "random seed")->capture_default_str();
    generate->add_option("--size", opt.config.size, "sentence count")->capture_default_str();
    generate->add_option("--manifest-out", opt.config.manifest_out,
                         "write generator metadata here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        finalize(opt);
        if (app.got_subcommand(candidates)) condminer::run_candidates(opt.config, std::cout);
        if (app.got_subcommand(featurize)) condminer::run_featurize(opt.config, std::cout);
        if (app.got_subcommand(train)) condminer::run_train(opt.config, std::cout);
        if (app.got_subcommand(evaluate)) condminer::run_evaluate(opt.config, std::cout);
        if (app.got_subcommand(stats)) condminer::run_stats(opt.config, std::cout);
        if (app.got_subcommand(generate)) condminer::run_generate(opt.config, std::cout);
        return 0;
    } catch (const condminer::Error& e) {
        std::cerr << "cond-miner: error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "cond-miner: internal error: " << e.what() << '\n';
        return 2;
    }
}
