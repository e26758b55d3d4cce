#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "condminer/treebank.hpp"

namespace condminer {

/// The three structural patterns that open a candidate condition part.
/// Matching is on whole labels: the outer node's label and the label of its
/// FIRST child must be exactly the named tags ("PP-TMP" never matches "PP").
enum class Pattern { SbarPpIn, SbarWhadvp, PpTo };

inline std::string_view pattern_name(Pattern p) {
    switch (p) {
        case Pattern::SbarPpIn: return "SBAR_PP_IN";
        case Pattern::SbarWhadvp: return "SBAR_WHADVP";
        case Pattern::PpTo: return "PP_TO";
    }
    return "?";
}

inline Pattern pattern_from_name(std::string_view name) {
    if (name == "SBAR_PP_IN") return Pattern::SbarPpIn;
    if (name == "SBAR_WHADVP") return Pattern::SbarWhadvp;
    if (name == "PP_TO") return Pattern::PpTo;
    throw BadConfig("unknown pattern name: " + std::string(name));
}

/// One candidate condition subtree found in a sentence.
/// position is the 0-based pre-order index of the subtree root within the
/// sentence tree, counting every node (any ROOT wrapper included).
struct CandidateMatch {
    ParseTree subtree;
    Pattern pattern;
    std::size_t position = 0;
};

/// Tests whether a node opens one of the three candidate patterns.
inline bool matches_pattern(const ParseTree& node, Pattern& pattern_out) {
    if (node.children.empty()) return false;
    const std::string& first = node.children.front().label;
    if ((node.label == "SBAR" || node.label == "PP") && first == "IN") {
        pattern_out = Pattern::SbarPpIn;
        return true;
    }
    if (node.label == "SBAR" && first == "WHADVP") {
        pattern_out = Pattern::SbarWhadvp;
        return true;
    }
    if (node.label == "PP" && first == "TO") {
        pattern_out = Pattern::PpTo;
        return true;
    }
    return false;
}

/// All candidate condition subtrees in pre-order. Candidates nested inside
/// other candidates are reported too.
inline std::vector<CandidateMatch> find_condition_candidates(const ParseTree& tree) {
    std::vector<CandidateMatch> matches;
    for_each_node(tree, [&](const ParseTree& node, std::size_t index) {
        Pattern pattern;
        if (matches_pattern(node, pattern))
            matches.push_back(CandidateMatch{node, pattern, index});
    });
    return matches;
}

/// True iff the sentence has at least one candidate condition part.
inline bool is_candidate_sentence(const ParseTree& tree) {
    bool found = false;
    for_each_node(tree, [&](const ParseTree& node, std::size_t) {
        Pattern pattern;
        if (!found && matches_pattern(node, pattern)) found = true;
    });
    return found;
}

}  // namespace condminer
