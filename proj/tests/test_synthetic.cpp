#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "catch2/catch_amalgamated.hpp"

#include "condminer/features.hpp"
#include "condminer/synthetic.hpp"

using namespace condminer;

namespace {

std::array<std::size_t, 4> raw_counts(const Dataset& ds) {
    std::array<std::size_t, 4> counts{};
    for (const AnnotatedSentence& s : ds.sentences) ++counts[static_cast<std::size_t>(s.label)];
    return counts;
}

}  // namespace

TEST_CASE("each 20-sentence cycle yields 13 sentences with parts and 7 without") {
    SyntheticConfig config;
    config.size = 20;
    const SyntheticCorpus corpus = generate_synthetic(config);
    REQUIRE(corpus.dataset.size() == 20);
    CHECK(corpus.patternless_ids.size() == 7);

    const std::array<std::size_t, 4> counts = raw_counts(corpus.dataset);
    CHECK(counts[0] == 5);  // condition-action
    CHECK(counts[1] == 4);  // condition-consequence
    CHECK(counts[2] == 3);  // action
    CHECK(counts[3] == 8);  // plain, half of them still carrying a part

    const FilterOutcome outcome = filter_candidates(corpus.dataset);
    CHECK(outcome.kept.size() == 13);
    CHECK(outcome.removed_total == 7);
}

TEST_CASE("the filter removes exactly the generator-declared sentences") {
    const SyntheticCorpus corpus = generate_synthetic({});
    REQUIRE(corpus.dataset.size() == 200);
    const FilterOutcome outcome = filter_candidates(corpus.dataset);
    CHECK(outcome.removed_total == corpus.patternless_ids.size());

    std::set<std::string> removed;
    for (const AnnotatedSentence& s : corpus.dataset.sentences)
        if (!is_candidate_sentence(s.parse)) removed.insert(s.id);
    const std::set<std::string> declared(corpus.patternless_ids.begin(),
                                         corpus.patternless_ids.end());
    CHECK(removed == declared);
}

TEST_CASE("generation is deterministic per seed and varies across seeds") {
    const SyntheticCorpus a = generate_synthetic({});
    const SyntheticCorpus b = generate_synthetic({});
    REQUIRE(a.dataset.size() == b.dataset.size());
    for (std::size_t i = 0; i < a.dataset.size(); ++i) {
        CHECK(a.dataset.sentences[i].id == b.dataset.sentences[i].id);
        CHECK(a.dataset.sentences[i].parse_text == b.dataset.sentences[i].parse_text);
        CHECK(a.dataset.sentences[i].text == b.dataset.sentences[i].text);
        CHECK(a.dataset.sentences[i].label == b.dataset.sentences[i].label);
    }

    SyntheticConfig other;
    other.seed = 7;
    const SyntheticCorpus c = generate_synthetic(other);
    bool any_difference = false;
    for (std::size_t i = 0; i < a.dataset.size(); ++i) {
        // Labels and ids are schedule-driven and never move.
        CHECK(c.dataset.sentences[i].label == a.dataset.sentences[i].label);
        CHECK(c.dataset.sentences[i].id == a.dataset.sentences[i].id);
        if (c.dataset.sentences[i].parse_text != a.dataset.sentences[i].parse_text)
            any_difference = true;
    }
    CHECK(any_difference);
    CHECK(c.patternless_ids == a.patternless_ids);
}

TEST_CASE("parses are canonical and texts mirror the leaves") {
    SyntheticConfig config;
    config.size = 40;
    const SyntheticCorpus corpus = generate_synthetic(config);
    for (const AnnotatedSentence& s : corpus.dataset.sentences) {
        CHECK(serialize(s.parse) == s.parse_text);
        CHECK_FALSE(s.text.empty());
        CHECK(s.text.back() == '.');
    }
}

TEST_CASE("kept sentences carry exactly their own class marker feature") {
    const SyntheticCorpus corpus = generate_synthetic({});
    const FilterOutcome outcome = filter_candidates(corpus.dataset);
    REQUIRE(outcome.kept.size() == 130);

    const std::string ca_marker = "SBARINSNPNNVPVBZ";
    const std::string cc_marker = "SBARWHADVPWRBSNPNNSVPVBP";
    const std::string nc_marker = "PPINNPDTNN";

    std::array<std::size_t, 3> seen{};
    for (const AnnotatedSentence& s : outcome.kept.sentences) {
        const FeatureBag bag = extract_features(s.parse);
        const std::set<std::string> tokens(bag.tokens.begin(), bag.tokens.end());
        const bool has_ca = tokens.count(ca_marker) > 0;
        const bool has_cc = tokens.count(cc_marker) > 0;
        const bool has_nc = tokens.count(nc_marker) > 0;
        switch (s.label) {
            case Label::CA:
                CHECK((has_ca && !has_cc && !has_nc));
                ++seen[0];
                break;
            case Label::CC:
                CHECK((!has_ca && has_cc && !has_nc));
                ++seen[1];
                break;
            case Label::NC:
                CHECK((!has_ca && !has_cc && has_nc));
                ++seen[2];
                break;
            case Label::ACTION:
                FAIL("action sentences are built patternless");
        }
    }
    CHECK(seen[0] == 50);
    CHECK(seen[1] == 40);
    CHECK(seen[2] == 40);
}

TEST_CASE("manifest summarizes the generation") {
    SyntheticConfig config;
    config.size = 20;
    const SyntheticCorpus corpus = generate_synthetic(config);
    const nlohmann::json manifest = synthetic_manifest(config, corpus);
    CHECK(manifest.at("seed") == 42);
    CHECK(manifest.at("size") == 20);
    CHECK(manifest.at("patternless_ids").size() == 7);
    CHECK(manifest.at("label_counts").at("CA") == 5);
    CHECK(manifest.at("label_counts").at("NC") == 8);
}

TEST_CASE("the bundled corpus file is the seed-42 size-200 generation") {
    const SyntheticCorpus corpus = generate_synthetic({});
    std::ostringstream expected;
    save_corpus_jsonl(corpus.dataset, expected);

    std::ifstream in(std::string(COND_MINER_SOURCE_DIR) + "/data/synthetic_200.jsonl");
    REQUIRE(in.good());
    std::ostringstream actual;
    actual << in.rdbuf();
    CHECK(actual.str() == expected.str());
}
