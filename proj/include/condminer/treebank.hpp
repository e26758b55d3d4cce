#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "condminer/errors.hpp"

namespace condminer {

/// One node of a Penn-Treebank-style bracketed constituency parse.
/// Immutable by convention after construction; a node is a leaf exactly when
/// it has no children, and only leaves carry a surface token.
struct ParseTree {
    std::string label;
    std::string token;
    std::vector<ParseTree> children;

    bool is_leaf() const { return children.empty(); }

    friend bool operator==(const ParseTree& a, const ParseTree& b) {
        return a.label == b.label && a.token == b.token && a.children == b.children;
    }
};

namespace detail {

inline bool is_ws(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline void skip_ws(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && is_ws(text[pos])) ++pos;
}

// Reads a run of characters that is neither whitespace nor a bracket.
inline std::string_view read_atom(std::string_view text, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && !is_ws(text[pos]) && text[pos] != '(' && text[pos] != ')') ++pos;
    return text.substr(start, pos - start);
}

inline ParseTree parse_node(std::string_view text, std::size_t& pos) {
    if (pos >= text.size() || text[pos] != '(')
        throw UnbalancedParens("expected '(' at position " + std::to_string(pos));
    std::size_t open_pos = pos;
    ++pos;
    skip_ws(text, pos);

    ParseTree node;
    node.label = std::string(read_atom(text, pos));
    skip_ws(text, pos);

    if (pos < text.size() && text[pos] == '(') {
        if (node.label.empty())
            throw EmptyNode("node without label at position " + std::to_string(open_pos));
        while (pos < text.size() && text[pos] == '(') {
            node.children.push_back(parse_node(text, pos));
            skip_ws(text, pos);
        }
    } else {
        node.token = std::string(read_atom(text, pos));
        skip_ws(text, pos);
        if (node.label.empty() && node.token.empty())
            throw EmptyNode("empty node at position " + std::to_string(open_pos));
        if (node.token.empty())
            throw EmptyNode("node '" + node.label + "' has no token and no children at position " +
                            std::to_string(open_pos));
    }

    if (pos >= text.size())
        throw UnbalancedParens("unclosed '(' opened at position " + std::to_string(open_pos));
    if (text[pos] != ')')
        throw TrailingContent("unexpected content at position " + std::to_string(pos) +
                              " inside node '" + node.label + "'");
    ++pos;
    return node;
}

}  // namespace detail

/// Parses one bracketed tree. The whole input must be a single balanced
/// expression; any run of whitespace acts as one separator.
inline ParseTree parse_ptb(std::string_view text) {
    std::size_t pos = 0;
    detail::skip_ws(text, pos);
    ParseTree root = detail::parse_node(text, pos);
    detail::skip_ws(text, pos);
    if (pos != text.size()) {
        if (text[pos] == ')')
            throw UnbalancedParens("unmatched ')' at position " + std::to_string(pos));
        throw TrailingContent("trailing content after root tree at position " + std::to_string(pos));
    }
    return root;
}

/// Canonical single-space bracketed form; parse_ptb(serialize(t)) == t.
inline std::string serialize(const ParseTree& tree) {
    std::string out;
    out += '(';
    out += tree.label;
    if (tree.is_leaf()) {
        out += ' ';
        out += tree.token;
    } else {
        for (const ParseTree& child : tree.children) {
            out += ' ';
            out += serialize(child);
        }
    }
    out += ')';
    return out;
}

inline std::size_t node_count(const ParseTree& tree) {
    std::size_t n = 1;
    for (const ParseTree& child : tree.children) n += node_count(child);
    return n;
}

namespace detail {

inline void collect_labels(const ParseTree& tree, std::vector<std::string>& out) {
    out.push_back(tree.label);
    for (const ParseTree& child : tree.children) collect_labels(child, out);
}

}  // namespace detail

/// Depth-first pre-order label sequence of the subtree, root included.
/// A "ROOT" wrapper at the traversal root contributes no label; its
/// descendants are still visited.
inline std::vector<std::string> preorder_labels(const ParseTree& tree) {
    std::vector<std::string> labels;
    if (tree.label == "ROOT") {
        for (const ParseTree& child : tree.children) detail::collect_labels(child, labels);
    } else {
        detail::collect_labels(tree, labels);
    }
    return labels;
}

/// Visits every node in pre-order, calling fn(node, preorder_index).
/// Indices are 0-based and count every node, ROOT wrappers included.
template <class Fn>
void for_each_node(const ParseTree& tree, Fn&& fn) {
    std::size_t index = 0;
    auto walk = [&](auto&& self, const ParseTree& node) -> void {
        fn(node, index++);
        for (const ParseTree& child : node.children) self(self, child);
    };
    walk(walk, tree);
}

/// Reads one tree per line; blank (whitespace-only) lines are ignored.
inline std::vector<ParseTree> read_trees(std::istream& in) {
    std::vector<ParseTree> trees;
    std::string line;
    while (std::getline(in, line)) {
        std::size_t pos = 0;
        detail::skip_ws(line, pos);
        if (pos == line.size()) continue;
        trees.push_back(parse_ptb(line));
    }
    return trees;
}

inline std::vector<ParseTree> load_trees_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open tree file: " + path.string());
    return read_trees(in);
}

}  // namespace condminer
