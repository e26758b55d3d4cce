#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "condminer/corpus.hpp"
#include "condminer/rng.hpp"

namespace condminer {

struct SyntheticConfig {
    std::uint64_t seed = 42;
    std::size_t size = 200;
};

/// Generator output. patternless_ids lists the sentences built without any
/// candidate condition part, i.e. exactly what filter_candidates removes.
struct SyntheticCorpus {
    Dataset dataset;
    std::vector<std::string> patternless_ids;
};

namespace detail {

// Every sentence of a kind shares one tree shape, so its label-derived
// features are constant; only the words vary. Each kept kind plants one
// tag sequence no other kind produces, which keeps the classes separable.
enum class SynthKind { CondAction, CondConsequence, PlainWithPart, ActionOnly, Plain };

inline constexpr std::array<SynthKind, 20> kSchedule = {
    SynthKind::CondAction,      SynthKind::CondConsequence, SynthKind::PlainWithPart,
    SynthKind::ActionOnly,      SynthKind::Plain,           SynthKind::CondAction,
    SynthKind::CondConsequence, SynthKind::PlainWithPart,   SynthKind::Plain,
    SynthKind::CondAction,      SynthKind::CondConsequence, SynthKind::PlainWithPart,
    SynthKind::ActionOnly,      SynthKind::Plain,           SynthKind::CondAction,
    SynthKind::CondConsequence, SynthKind::PlainWithPart,   SynthKind::Plain,
    SynthKind::CondAction,      SynthKind::ActionOnly};

inline const std::vector<std::string>& synth_nouns() {
    static const std::vector<std::string> v = {"dose",       "pressure", "therapy", "treatment",
                                               "risk",       "agent",    "response", "followup"};
    return v;
}

inline const std::vector<std::string>& synth_plural_nouns() {
    static const std::vector<std::string> v = {"patients", "symptoms", "levels",
                                               "readings", "outcomes", "visits"};
    return v;
}

inline const std::vector<std::string>& synth_verbs_s() {
    static const std::vector<std::string> v = {"persists", "increases", "drops", "worsens",
                                               "stabilizes"};
    return v;
}

inline const std::vector<std::string>& synth_verbs_p() {
    static const std::vector<std::string> v = {"persist", "improve", "decline", "respond"};
    return v;
}

inline const std::vector<std::string>& synth_verbs_base() {
    static const std::vector<std::string> v = {"adjust", "monitor", "refer", "treat", "reassess"};
    return v;
}

inline const std::vector<std::string>& synth_verbs_past() {
    static const std::vector<std::string> v = {"improved", "declined", "stabilized", "varied"};
    return v;
}

inline const std::vector<std::string>& synth_adjectives() {
    static const std::vector<std::string> v = {"necessary", "appropriate", "required", "optional"};
    return v;
}

inline const std::vector<std::string>& synth_action_nouns() {
    static const std::vector<std::string> v = {"Adjustment", "Monitoring", "Referral", "Treatment",
                                               "Screening"};
    return v;
}

inline const std::vector<std::string>& synth_plain_subjects() {
    static const std::vector<std::string> v = {"Results", "Levels", "Outcomes", "Readings"};
    return v;
}

inline const std::string& pick(Rng& rng, const std::vector<std::string>& bank) {
    return bank[rng.below(bank.size())];
}

// Optional trailing modifier shared by all kept kinds, so classes overlap on
// harmless features.
inline std::string maybe_with_phrase(Rng& rng) {
    const bool attach = rng.unit() < 0.3;
    const std::string& noun = pick(rng, synth_nouns());
    if (!attach) return "";
    return " (PP (IN with) (NP (NN " + noun + ")))";
}

inline std::string synth_parse(SynthKind kind, Rng& rng) {
    switch (kind) {
        case SynthKind::CondAction: {
            const std::string& n1 = pick(rng, synth_nouns());
            const std::string& v1 = pick(rng, synth_verbs_s());
            const std::string& n2 = pick(rng, synth_nouns());
            const std::string& v2 = pick(rng, synth_verbs_base());
            const std::string tail = maybe_with_phrase(rng);
            return "(ROOT (S (SBAR (IN If) (S (NP (NN " + n1 + ")) (VP (VBZ " + v1 +
                   ")))) (, ,) (NP (NN " + n2 + ")) (VP (MD should) (VP (VB " + v2 + ")" + tail +
                   ")) (. .)))";
        }
        case SynthKind::CondConsequence: {
            const std::string& ns1 = pick(rng, synth_plural_nouns());
            const std::string& vp1 = pick(rng, synth_verbs_p());
            const std::string& ns2 = pick(rng, synth_plural_nouns());
            const std::string& vp2 = pick(rng, synth_verbs_p());
            const std::string tail = maybe_with_phrase(rng);
            return "(ROOT (S (SBAR (WHADVP (WRB When)) (S (NP (NNS " + ns1 + ")) (VP (VBP " + vp1 +
                   ")))) (, ,) (NP (NNS " + ns2 + ")) (VP (VBP " + vp2 + ")" + tail + ") (. .)))";
        }
        case SynthKind::PlainWithPart: {
            const std::string& n1 = pick(rng, synth_nouns());
            const std::string& n2 = pick(rng, synth_nouns());
            const std::string& v1 = pick(rng, synth_verbs_s());
            const std::string tail = maybe_with_phrase(rng);
            return "(ROOT (S (NP (NP (DT The) (NN " + n1 + ")) (PP (IN of) (NP (DT the) (NN " +
                   n2 + ")))) (VP (VBZ " + v1 + ")" + tail + ") (. .)))";
        }
        case SynthKind::ActionOnly: {
            const std::string& n1 = pick(rng, synth_action_nouns());
            const std::string& adj = pick(rng, synth_adjectives());
            return "(ROOT (S (NP (NN " + n1 + ")) (VP (VBZ is) (ADJP (JJ " + adj + "))) (. .)))";
        }
        case SynthKind::Plain: {
            const std::string& ns1 = pick(rng, synth_plain_subjects());
            const std::string& vbd = pick(rng, synth_verbs_past());
            return "(ROOT (S (NP (NNS " + ns1 + ")) (VP (VBD " + vbd + ")) (. .)))";
        }
    }
    throw BadConfig("unknown synthetic kind");
}

inline Label synth_label(SynthKind kind) {
    switch (kind) {
        case SynthKind::CondAction: return Label::CA;
        case SynthKind::CondConsequence: return Label::CC;
        case SynthKind::ActionOnly: return Label::ACTION;
        case SynthKind::PlainWithPart:
        case SynthKind::Plain: return Label::NC;
    }
    throw BadConfig("unknown synthetic kind");
}

inline bool synth_has_pattern(SynthKind kind) {
    return kind != SynthKind::ActionOnly && kind != SynthKind::Plain;
}

inline std::string leaf_text(const ParseTree& tree) {
    std::string text;
    for_each_node(tree, [&](const ParseTree& node, std::size_t) {
        if (!node.is_leaf()) return;
        if (!text.empty()) text += ' ';
        text += node.token;
    });
    return text;
}

}  // namespace detail

/// Builds a deterministic labeled corpus by cycling a 20-sentence schedule:
/// per full cycle, 5 condition-action, 4 condition-consequence, 4 plain
/// sentences that still carry a candidate part, 3 action-only and 4 plain
/// sentences without any candidate (13 kept, 7 removed by the filter).
inline SyntheticCorpus generate_synthetic(const SyntheticConfig& config) {
    SyntheticCorpus out;
    Rng rng(config.seed);
    static const std::array<std::string, 3> kGuidelines = {"synthetic-a", "synthetic-b",
                                                           "synthetic-c"};
    for (std::size_t i = 0; i < config.size; ++i) {
        const detail::SynthKind kind = detail::kSchedule[i % detail::kSchedule.size()];
        AnnotatedSentence s;
        std::string id = std::to_string(i + 1);
        s.id = "s" + std::string(id.size() < 4 ? 4 - id.size() : 0, '0') + id;
        s.guideline = kGuidelines[i % kGuidelines.size()];
        s.parse_text = detail::synth_parse(kind, rng);
        s.parse = parse_ptb(s.parse_text);
        s.text = detail::leaf_text(s.parse);
        s.label = detail::synth_label(kind);
        if (!detail::synth_has_pattern(kind)) out.patternless_ids.push_back(s.id);
        out.dataset.sentences.push_back(std::move(s));
    }
    return out;
}

inline nlohmann::json synthetic_manifest(const SyntheticConfig& config,
                                         const SyntheticCorpus& corpus) {
    std::array<std::size_t, 4> counts{};
    for (const AnnotatedSentence& s : corpus.dataset.sentences)
        ++counts[static_cast<std::size_t>(s.label)];
    return nlohmann::json{{"seed", config.seed},
                          {"size", corpus.dataset.size()},
                          {"patternless_ids", corpus.patternless_ids},
                          {"label_counts",
                           {{"CA", counts[0]}, {"CC", counts[1]}, {"ACTION", counts[2]},
                            {"NC", counts[3]}}}};
}

}  // namespace condminer
