#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "json.hpp"

#include "condminer/candidates.hpp"
#include "condminer/treebank.hpp"

namespace condminer {

/// Raw annotation labels, in the fixed order used for tie-breaking and for
/// statistics columns.
enum class Label : std::size_t { CA = 0, CC = 1, ACTION = 2, NC = 3 };

inline constexpr std::array<std::string_view, 4> kRawLabelNames = {"CA", "CC", "ACTION", "NC"};

inline std::string_view label_name(Label label) {
    return kRawLabelNames[static_cast<std::size_t>(label)];
}

inline Label parse_label(std::string_view text) {
    for (std::size_t i = 0; i < kRawLabelNames.size(); ++i)
        if (text == kRawLabelNames[i]) return static_cast<Label>(i);
    throw BadLabel("unknown label \"" + std::string(text) + "\"");
}

/// One gold-standard sentence. parse_text is kept verbatim so a dataset can
/// be re-serialized without loss; parse is its validated tree form.
struct AnnotatedSentence {
    std::string id;
    std::string guideline;
    std::string text;
    std::string parse_text;
    ParseTree parse;
    Label label = Label::NC;
};

/// Maps the 4 raw labels onto a task's class set. classes is the fixed class
/// order for the task; class_of is total over the raw labels.
struct LabelMapping {
    std::string name;
    std::vector<std::string> classes;
    std::array<std::size_t, 4> class_of{};

    std::size_t apply(Label label) const { return class_of[static_cast<std::size_t>(label)]; }
    std::size_t num_classes() const { return classes.size(); }
};

enum class TaskMapping { Raw4, ThreeClass, BinaryCa, MergedCond };

/// The named mappings:
///   raw4        CA/CC/ACTION/NC kept as is
///   three       ACTION folded into NC; classes CA/CC/NC
///   binary-ca   CA -> POS, everything else -> NEG
///   merged-cond CA and CC -> COND, ACTION and NC -> NC
inline LabelMapping label_mapping(TaskMapping task) {
    switch (task) {
        case TaskMapping::Raw4:
            return {"raw4", {"CA", "CC", "ACTION", "NC"}, {0, 1, 2, 3}};
        case TaskMapping::ThreeClass:
            return {"three", {"CA", "CC", "NC"}, {0, 1, 2, 2}};
        case TaskMapping::BinaryCa:
            return {"binary-ca", {"POS", "NEG"}, {0, 1, 1, 1}};
        case TaskMapping::MergedCond:
            return {"merged-cond", {"COND", "NC"}, {0, 0, 1, 1}};
    }
    throw BadConfig("unknown task mapping");
}

inline TaskMapping mapping_from_name(std::string_view name) {
    if (name == "raw4") return TaskMapping::Raw4;
    if (name == "three") return TaskMapping::ThreeClass;
    if (name == "binary-ca") return TaskMapping::BinaryCa;
    if (name == "merged-cond") return TaskMapping::MergedCond;
    throw BadConfig("unknown label mapping \"" + std::string(name) + "\"");
}

/// An ordered, validated collection of annotated sentences with unique ids.
struct Dataset {
    std::vector<AnnotatedSentence> sentences;

    std::size_t size() const { return sentences.size(); }
    bool empty() const { return sentences.empty(); }

    /// Task class index per sentence under the given mapping.
    std::vector<std::size_t> task_labels(const LabelMapping& mapping) const {
        std::vector<std::size_t> labels;
        labels.reserve(sentences.size());
        for (const AnnotatedSentence& s : sentences) labels.push_back(mapping.apply(s.label));
        return labels;
    }
};

enum class CorpusFormat { Jsonl, Tsv };

inline CorpusFormat corpus_format_from_name(std::string_view name) {
    if (name == "jsonl") return CorpusFormat::Jsonl;
    if (name == "tsv") return CorpusFormat::Tsv;
    throw BadConfig("unknown corpus format \"" + std::string(name) + "\"");
}

namespace detail {

inline AnnotatedSentence make_sentence(std::string id, std::string guideline, std::string text,
                                       std::string parse_text, std::string_view label,
                                       const std::string& where) {
    AnnotatedSentence s;
    s.id = std::move(id);
    s.guideline = std::move(guideline);
    s.text = std::move(text);
    s.parse_text = std::move(parse_text);
    s.label = parse_label(label);
    try {
        s.parse = parse_ptb(s.parse_text);
    } catch (const Error& e) {
        throw BadParse(where + ": bad parse for id \"" + s.id + "\": " + e.what());
    }
    return s;
}

inline void check_unique_id(std::unordered_set<std::string>& seen, const std::string& id,
                            const std::string& where) {
    if (!seen.insert(id).second) throw DuplicateId(where + ": duplicate id \"" + id + "\"");
}

inline std::string require_string_field(const nlohmann::json& row, const char* field,
                                        const std::string& where) {
    auto it = row.find(field);
    if (it == row.end())
        throw MissingField(where + ": missing field \"" + std::string(field) + "\"");
    if (!it->is_string())
        throw MissingField(where + ": field \"" + std::string(field) + "\" must be a string");
    return it->get<std::string>();
}

}  // namespace detail

/// JSON-lines corpus: one object per line with string fields
/// id, guideline, text, parse, label. Blank lines are ignored; unknown extra
/// fields are tolerated.
inline Dataset load_corpus_jsonl(std::istream& in) {
    Dataset ds;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t pos = 0;
        while (pos < line.size() && detail::is_ws(line[pos])) ++pos;
        if (pos == line.size()) continue;
        const std::string where = "line " + std::to_string(line_no);
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded()) throw Error(where + ": invalid JSON");
        if (!row.is_object()) throw Error(where + ": expected a JSON object");
        AnnotatedSentence s = detail::make_sentence(
            detail::require_string_field(row, "id", where),
            detail::require_string_field(row, "guideline", where),
            detail::require_string_field(row, "text", where),
            detail::require_string_field(row, "parse", where),
            detail::require_string_field(row, "label", where), where);
        detail::check_unique_id(seen, s.id, where);
        ds.sentences.push_back(std::move(s));
    }
    return ds;
}

/// Tab-separated corpus with a mandatory header line
/// "id<TAB>guideline<TAB>text<TAB>parse<TAB>label". Fields cannot contain
/// tabs; there is no escaping.
inline Dataset load_corpus_tsv(std::istream& in) {
    Dataset ds;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;

    auto split = [](const std::string& row) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = row.find('\t', start);
            if (tab == std::string::npos) {
                cells.push_back(row.substr(start));
                break;
            }
            cells.push_back(row.substr(start, tab - start));
            start = tab + 1;
        }
        return cells;
    };

    if (!std::getline(in, line)) return ds;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split(line);
    const std::vector<std::string> expected = {"id", "guideline", "text", "parse", "label"};
    if (header != expected)
        throw MissingField("line 1: TSV header must be exactly: id, guideline, text, parse, label");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        std::vector<std::string> cells = split(line);
        if (cells.size() != 5)
            throw MissingField(where + ": expected 5 tab-separated fields, got " +
                               std::to_string(cells.size()));
        AnnotatedSentence s = detail::make_sentence(std::move(cells[0]), std::move(cells[1]),
                                                    std::move(cells[2]), std::move(cells[3]),
                                                    cells[4], where);
        detail::check_unique_id(seen, s.id, where);
        ds.sentences.push_back(std::move(s));
    }
    return ds;
}

inline Dataset load_corpus(std::istream& in, CorpusFormat format) {
    return format == CorpusFormat::Jsonl ? load_corpus_jsonl(in) : load_corpus_tsv(in);
}

inline Dataset load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus file: " + path.string());
    return load_corpus(in, format);
}

inline nlohmann::json sentence_to_json(const AnnotatedSentence& s) {
    return nlohmann::json{{"id", s.id},
                          {"guideline", s.guideline},
                          {"text", s.text},
                          {"parse", s.parse_text},
                          {"label", std::string(label_name(s.label))}};
}

/// Writes the dataset back as JSON lines, reproducing every field verbatim.
inline void save_corpus_jsonl(const Dataset& ds, std::ostream& out) {
    for (const AnnotatedSentence& s : ds.sentences) out << sentence_to_json(s).dump() << '\n';
}

/// Result of the candidate-sentence filter: the kept dataset plus, per
/// guideline, how many sentences were removed and their raw-label breakdown.
struct FilterOutcome {
    Dataset kept;
    std::size_t removed_total = 0;
    std::map<std::string, std::size_t> removed_per_guideline;
    std::map<std::string, std::array<std::size_t, 4>> removed_by_label;
    std::map<std::string, std::size_t> kept_per_guideline;
};

/// Keeps exactly the sentences that contain at least one candidate condition
/// part; everything else is counted as removed.
inline FilterOutcome filter_candidates(const Dataset& ds) {
    FilterOutcome out;
    for (const AnnotatedSentence& s : ds.sentences) {
        if (is_candidate_sentence(s.parse)) {
            out.kept.sentences.push_back(s);
            ++out.kept_per_guideline[s.guideline];
        } else {
            ++out.removed_total;
            ++out.removed_per_guideline[s.guideline];
            auto [it, added] = out.removed_by_label.emplace(s.guideline, std::array<std::size_t, 4>{});
            ++it->second[static_cast<std::size_t>(s.label)];
        }
    }
    return out;
}

/// Per-guideline raw-label counts, guidelines in alphabetical order.
struct CorpusStats {
    std::map<std::string, std::array<std::size_t, 4>> rows;
    std::array<std::size_t, 4> totals{};
    std::size_t total_sentences = 0;
};

inline CorpusStats corpus_stats(const Dataset& ds) {
    CorpusStats stats;
    for (const AnnotatedSentence& s : ds.sentences) {
        auto [it, added] = stats.rows.emplace(s.guideline, std::array<std::size_t, 4>{});
        ++it->second[static_cast<std::size_t>(s.label)];
        ++stats.totals[static_cast<std::size_t>(s.label)];
        ++stats.total_sentences;
    }
    return stats;
}

inline nlohmann::json stats_to_json(const CorpusStats& stats) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [guideline, counts] : stats.rows) {
        rows.push_back({{"guideline", guideline},
                        {"condition_action", counts[0]},
                        {"condition_consequence", counts[1]},
                        {"action", counts[2]},
                        {"no_condition", counts[3]},
                        {"total", counts[0] + counts[1] + counts[2] + counts[3]}});
    }
    return nlohmann::json{{"guidelines", rows},
                          {"totals",
                           {{"condition_action", stats.totals[0]},
                            {"condition_consequence", stats.totals[1]},
                            {"action", stats.totals[2]},
                            {"no_condition", stats.totals[3]},
                            {"total", stats.total_sentences}}}};
}

/// Aligned text table with one row per guideline. An empty corpus renders
/// the header only.
inline std::string render_stats_table(const CorpusStats& stats) {
    std::ostringstream os;
    std::size_t name_width = std::string("Guideline").size();
    for (const auto& [guideline, counts] : stats.rows)
        name_width = std::max(name_width, guideline.size());
    name_width = std::max(name_width, std::string("Total").size());

    const std::array<std::string, 4> headers = {"Condition-Action", "Condition-Effect", "Action",
                                                "No Condition"};
    os << std::left << std::setw(static_cast<int>(name_width + 2)) << "Guideline";
    for (const auto& h : headers) os << std::right << std::setw(18) << h;
    os << std::right << std::setw(18) << "Total" << '\n';

    auto emit_row = [&](const std::string& name, const std::array<std::size_t, 4>& counts,
                        std::size_t total) {
        os << std::left << std::setw(static_cast<int>(name_width + 2)) << name;
        for (std::size_t c : counts) os << std::right << std::setw(18) << c;
        os << std::right << std::setw(18) << total << '\n';
    };

    for (const auto& [guideline, counts] : stats.rows)
        emit_row(guideline, counts, counts[0] + counts[1] + counts[2] + counts[3]);
    if (!stats.rows.empty()) emit_row("Total", stats.totals, stats.total_sentences);
    return os.str();
}

}  // namespace condminer
