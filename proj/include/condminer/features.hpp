#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "condminer/candidates.hpp"
#include "condminer/treebank.hpp"

namespace condminer {

/// Ordered feature tokens for one sentence. Tokens are constituent tags or
/// glued tag runs (e.g. "PPINNP"); duplicates are preserved here and only
/// collapse at vectorization time.
struct FeatureBag {
    std::vector<std::string> tokens;

    bool empty() const { return tokens.empty(); }
};

/// Tag-sequence features for one sentence. For each candidate condition
/// subtree, in sentence pre-order: every tag as its own token, then each run
/// of 3 consecutive tags glued, then all tags glued into one token.
/// Candidates with fewer than 3 tags contribute no glued trigrams.
inline FeatureBag extract_features(const ParseTree& sentence) {
    FeatureBag bag;
    for (const CandidateMatch& match : find_condition_candidates(sentence)) {
        const std::vector<std::string> labels = preorder_labels(match.subtree);
        for (const std::string& label : labels) bag.tokens.push_back(label);
        for (std::size_t i = 0; i + 3 <= labels.size(); ++i)
            bag.tokens.push_back(labels[i] + labels[i + 1] + labels[i + 2]);
        std::string all;
        for (const std::string& label : labels) all += label;
        bag.tokens.push_back(std::move(all));
    }
    return bag;
}

/// Token -> dense column index, in first-occurrence order over the training
/// bags it was built from.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Returns the token's column, inserting it at the next free column if new.
    std::size_t insert(const std::string& token) {
        auto [it, added] = index_.emplace(token, tokens_.size());
        if (added) tokens_.push_back(token);
        return it->second;
    }

    std::optional<std::size_t> index_of(const std::string& token) const {
        auto it = index_.find(token);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const { return tokens_.size(); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    /// JSON form is a flat array of tokens; a token's index is its position.
    nlohmann::json to_json() const { return nlohmann::json(tokens_); }

    static Vocabulary from_json(const nlohmann::json& doc) {
        if (!doc.is_array()) throw BadConfig("vocabulary document must be a JSON array");
        Vocabulary vocab;
        for (const auto& item : doc) {
            if (!item.is_string()) throw BadConfig("vocabulary entries must be strings");
            vocab.insert(item.get<std::string>());
        }
        return vocab;
    }

private:
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> tokens_;
};

/// Builds the vocabulary from training bags only, one column per distinct
/// token, first occurrence first.
inline Vocabulary build_vocabulary(const std::vector<FeatureBag>& bags) {
    Vocabulary vocab;
    for (const FeatureBag& bag : bags)
        for (const std::string& token : bag.tokens) vocab.insert(token);
    return vocab;
}

/// Binary presence vector over the vocabulary. Tokens outside the vocabulary
/// are ignored, which is how unseen test-time tokens are handled.
inline std::vector<std::uint8_t> vectorize(const FeatureBag& bag, const Vocabulary& vocab) {
    std::vector<std::uint8_t> v(vocab.size(), 0);
    for (const std::string& token : bag.tokens)
        if (auto column = vocab.index_of(token)) v[*column] = 1;
    return v;
}

}  // namespace condminer
