#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "catch2/catch_amalgamated.hpp"

#include "condminer/pipeline.hpp"
#include "support/schema_check.hpp"

using namespace condminer;

namespace {

namespace fs = std::filesystem;

std::string tmp_path(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "condminer-pipeline-tests";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
    std::vector<nlohmann::json> docs;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) docs.push_back(nlohmann::json::parse(line));
    return docs;
}

nlohmann::json schema(const std::string& name) {
    return testsupport::load_json_file(std::string(COND_MINER_SOURCE_DIR) + "/schemas/" + name +
                                       ".schema.json");
}

void require_schema(const nlohmann::json& doc, const std::string& schema_name) {
    std::string error;
    const bool ok = testsupport::schema_matches(schema(schema_name), doc, error);
    INFO(schema_name << ": " << error << "\n" << doc.dump(2));
    REQUIRE(ok);
}

// A 20-sentence corpus written once and shared by the in-process tests.
const std::string& small_corpus() {
    static const std::string path = [] {
        PipelineConfig config;
        config.seed = 42;
        config.size = 20;
        config.out = tmp_path("small.jsonl");
        std::ostringstream sink;
        run_generate(config, sink);
        return config.out;
    }();
    return path;
}

int run_binary(const std::string& args) {
    const std::string command = std::string(COND_MINER_BIN) + " " + args;
    const int status = std::system(command.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("generated corpora match the corpus line format") {
    PipelineConfig config;
    config.seed = 42;
    config.size = 20;
    config.out = tmp_path("gen.jsonl");
    config.manifest_out = tmp_path("gen.manifest.json");
    std::ostringstream out;
    run_generate(config, out);
    CHECK(out.str() == "corpus written to " + config.out + "\n");

    const std::vector<nlohmann::json> lines = parse_lines(read_file(config.out));
    REQUIRE(lines.size() == 20);
    for (const nlohmann::json& line : lines) require_schema(line, "corpus_line");

    const nlohmann::json manifest = testsupport::load_json_file(config.manifest_out);
    require_schema(manifest, "manifest");
    CHECK(manifest.at("size") == 20);
    CHECK(manifest.at("patternless_ids").size() == 7);
}

TEST_CASE("candidate listing reports matches and the filter summary") {
    PipelineConfig config;
    config.input = small_corpus();
    config.emit = EmitFormat::Json;
    config.out = tmp_path("candidates.jsonl");
    std::ostringstream out;
    run_candidates(config, out);
    CHECK(read_file(config.out) == out.str());

    const std::vector<nlohmann::json> lines = parse_lines(out.str());
    REQUIRE(lines.size() >= 2);
    const nlohmann::json summary = lines.back();
    require_schema(summary, "candidates_summary");
    CHECK(summary.at("kept") == 13);
    CHECK(summary.at("removed") == 7);
    for (std::size_t i = 0; i + 1 < lines.size(); ++i)
        require_schema(lines[i], "candidates_line");

    config.emit = EmitFormat::Table;
    config.out.clear();
    std::ostringstream table;
    run_candidates(config, table);
    CHECK(table.str().find("Total") != std::string::npos);
    CHECK(table.str().find("  13        7") != std::string::npos);
}

TEST_CASE("featurize covers every sentence, candidates or not") {
    PipelineConfig config;
    config.input = small_corpus();
    config.emit = EmitFormat::Json;
    config.vocab_out = tmp_path("vocab.json");
    std::ostringstream out;
    run_featurize(config, out);

    const Dataset ds = load_corpus(fs::path(small_corpus()), CorpusFormat::Jsonl);
    const std::vector<nlohmann::json> lines = parse_lines(out.str());
    REQUIRE(lines.size() == ds.size());
    std::size_t empty_bags = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        require_schema(lines[i], "features_line");
        CHECK(lines[i].at("sentence_id") == ds.sentences[i].id);
        if (lines[i].at("tokens").empty()) ++empty_bags;
    }
    CHECK(empty_bags == 7);  // the patternless sentences still get a row

    const Vocabulary vocab =
        Vocabulary::from_json(testsupport::load_json_file(config.vocab_out));
    CHECK(vocab.size() > 0);
    CHECK(vocab.index_of("SBARINS").has_value());
}

TEST_CASE("train writes a reloadable model document") {
    PipelineConfig config;
    config.input = small_corpus();
    config.classifier.kind = ml::ClassifierKind::C45;
    config.out = tmp_path("model.json");
    std::ostringstream out;
    run_train(config, out);
    CHECK(out.str() == "model written to " + config.out + "\n");

    const nlohmann::json doc = testsupport::load_json_file(config.out);
    require_schema(doc, "model");
    CHECK(doc.at("parameters").at("min_leaf") == 2);

    const ml::TrainedModel model = ml::model_from_json(doc);
    CHECK(model.classes == std::vector<std::string>{"CA", "CC", "NC"});
    CHECK(ml::model_to_json(model).dump() == doc.dump());
}

TEST_CASE("evaluate with an output file also prints the table") {
    PipelineConfig config;
    config.input = small_corpus();
    config.classifier.kind = ml::ClassifierKind::NaiveBayes;
    config.folds = 3;
    config.emit = EmitFormat::Json;
    config.out = tmp_path("report.json");
    std::ostringstream out;
    run_evaluate(config, out);
    CHECK(out.str().find("Per-class metrics") != std::string::npos);

    const nlohmann::json doc = testsupport::load_json_file(config.out);
    require_schema(doc, "report");
    const EvaluationReport report = report_from_json(doc);
    CHECK(report.dataset_size == 13);
    CHECK(report.folds == 3);
    CHECK(render_report_table(report) == out.str());
}

TEST_CASE("stats reads the tab-separated format too") {
    const std::string path = tmp_path("tiny.tsv");
    {
        std::ofstream out(path);
        out << "id\tguideline\ttext\tparse\tlabel\n";
        out << "t1\tasthma\tIf x then y .\t(ROOT (S (NN x)))\tCA\n";
        out << "t2\tasthma\tPlain .\t(ROOT (S (NN y)))\tNC\n";
        out << "t3\trhinitis\tDo y .\t(ROOT (S (NN z)))\tACTION\n";
    }
    PipelineConfig config;
    config.input = path;
    config.format = CorpusFormat::Tsv;
    config.emit = EmitFormat::Json;
    std::ostringstream out;
    run_stats(config, out);
    const nlohmann::json doc = nlohmann::json::parse(out.str());
    require_schema(doc, "stats");
    CHECK(doc.at("totals").at("total") == 3);
    CHECK(doc.at("guidelines").size() == 2);

    config.emit = EmitFormat::Table;
    std::ostringstream table;
    run_stats(config, table);
    CHECK(table.str().find("asthma") != std::string::npos);
    CHECK(table.str().find("Total") != std::string::npos);
}

TEST_CASE("the command line binary behaves like the library") {
    const std::string corpus = tmp_path("cli.jsonl");
    const std::string quiet = " > /dev/null 2>&1";
    REQUIRE(run_binary("generate-synthetic --seed 7 --size 40 --out " + corpus + quiet) == 0);

    const std::string r1 = tmp_path("cli-r1.json");
    const std::string r2 = tmp_path("cli-r2.json");
    REQUIRE(run_binary("evaluate --input " + corpus +
                       " --classifier rf --seed 7 --emit json --out " + r1 + quiet) == 0);
    REQUIRE(run_binary("evaluate --input " + corpus +
                       " --classifier rf --seed 7 --emit json --out " + r2 + quiet) == 0);
    CHECK(read_file(r1) == read_file(r2));
    require_schema(nlohmann::json::parse(read_file(r1)), "report");

    CHECK(run_binary("--help" + quiet) == 0);
    CHECK(run_binary("evaluate --input " + tmp_path("absent.jsonl") + quiet) == 1);
    CHECK(run_binary("train --input " + corpus + " --classifier svm" + quiet) != 0);
    CHECK(run_binary("evaluate --input " + corpus + " --folds 1" + quiet) == 1);
}
