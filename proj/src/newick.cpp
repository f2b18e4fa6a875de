#include <algorithm>
#include <cctype>
#include <functional>

#include "maf/errors.hpp"
#include "maf/phylo.hpp"

namespace maf {

namespace {

bool is_unquoted_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
           c == '-' || c == '+' || c == '|';
}

std::string quote_label(const std::string& label) {
    bool plain = !label.empty();
    for (char c : label) plain = plain && is_unquoted_char(c);
    if (plain) return label;
    std::string out = "'";
    for (char c : label) {
        out += c;
        if (c == '\'') out += '\'';
    }
    out += "'";
    return out;
}

class LineParser {
public:
    LineParser(std::string_view line, int line_no) : line_(line), line_no_(line_no) {}

    PhyloTree parse() {
        skip_ws();
        int top = parse_subtree(true);
        skip_ws();
        expect(';');
        skip_ws();
        if (pos_ != line_.size()) fail("trailing characters after ';'");
        (void)top;
        return builder_.build();
    }

private:
    std::string_view line_;
    int line_no_;
    size_t pos_ = 0;
    TreeBuilder builder_;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line_no_, static_cast<int>(pos_) + 1);
    }

    void skip_ws() {
        while (pos_ < line_.size() &&
               std::isspace(static_cast<unsigned char>(line_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string parse_label() {
        if (peek() == '\'') {
            ++pos_;
            std::string out;
            while (true) {
                if (pos_ >= line_.size()) fail("unterminated quoted label");
                char c = line_[pos_++];
                if (c == '\'') {
                    if (peek() == '\'') {
                        out += '\'';
                        ++pos_;
                    } else {
                        break;
                    }
                } else {
                    out += c;
                }
            }
            if (out.empty()) fail("empty quoted label");
            return out;
        }
        size_t start = pos_;
        while (pos_ < line_.size() && is_unquoted_char(line_[pos_])) ++pos_;
        if (pos_ == start) {
            if (peek() == '[') fail("bracket comments are not supported");
            fail("expected a label");
        }
        return std::string(line_.substr(start, pos_ - start));
    }

    void skip_branch_length() {
        skip_ws();
        if (peek() != ':') return;
        ++pos_;
        skip_ws();
        size_t start = pos_;
        while (pos_ < line_.size() &&
               (std::isdigit(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '.' ||
                line_[pos_] == '-' || line_[pos_] == '+' || line_[pos_] == 'e' ||
                line_[pos_] == 'E'))
            ++pos_;
        if (pos_ == start) fail("expected a branch length after ':'");
    }

    // Returns the vertex id of the subtree root; `top` marks the outermost
    // node, where two children mean a rooted-style Newick whose degree-2
    // vertex is suppressed and three children the plain unrooted form.
    int parse_subtree(bool top) {
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            std::vector<int> children;
            children.push_back(parse_subtree(false));
            while (true) {
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    children.push_back(parse_subtree(false));
                } else {
                    break;
                }
            }
            expect(')');
            skip_ws();
            if (peek() != ':' && peek() != ',' && peek() != ')' && peek() != ';' &&
                peek() != '\0')
                (void)parse_label();   // internal label, discarded
            skip_branch_length();

            if (children.size() == 1) fail("unary node is not a binary tree");
            if (top && children.size() == 2) {
                // Suppress the rooted-style top vertex.
                builder_.add_edge(children[0], children[1]);
                return children[0];
            }
            const size_t want = top ? 3 : 2;
            if (children.size() != want)
                fail("vertex of degree " + std::to_string(children.size() + (top ? 0 : 1)) +
                     " (multifurcating trees are not supported)");
            int v = builder_.add_internal();
            for (int c : children) builder_.add_edge(v, c);
            return v;
        }
        std::string label = parse_label();
        skip_branch_length();
        return builder_.add_leaf(std::move(label));
    }
};

} // namespace

PhyloTree parse_newick_line(std::string_view line, int line_no) {
    return LineParser(line, line_no).parse();
}

std::vector<PhyloTree> parse_newick(std::string_view text) {
    std::vector<PhyloTree> trees;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos) continue;
        if (line[first] == '#') continue;
        trees.push_back(parse_newick_line(line, line_no));
        if (trees.size() > 1 && !trees.back().same_taxa(trees.front()))
            throw ValidationError("taxon set of tree " + std::to_string(trees.size()) +
                                  " differs from tree 1");
    }
    return trees;
}

std::string write_newick(const PhyloTree& tree) {
    const int n = tree.num_taxa();
    if (n == 1) return quote_label(tree.label(0)) + ";";
    if (n == 2)
        return "(" + quote_label(tree.label(0)) + "," + quote_label(tree.label(1)) + ");";

    // Root at the internal vertex next to the smallest leaf; order children
    // by the smallest taxon in their subtree.
    const int start = tree.neighbors(tree.leaf_vertex(0))[0].first;
    std::function<std::pair<int, std::string>(int, int)> emit =
        [&](int v, int parent) -> std::pair<int, std::string> {
        if (tree.is_leaf(v))
            return {tree.vertex_taxon(v), quote_label(tree.label(tree.vertex_taxon(v)))};
        std::vector<std::pair<int, std::string>> parts;
        for (auto [u, e] : tree.neighbors(v))
            if (u != parent) parts.push_back(emit(u, v));
        std::sort(parts.begin(), parts.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += parts[i].second;
        }
        s += ")";
        return {parts.front().first, std::move(s)};
    };
    return emit(start, -1).second + ";";
}

} // namespace maf
