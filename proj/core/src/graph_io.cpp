#include "flowmag/graph_io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_map>

namespace flowmag {

namespace {

/// Interns labels in first-appearance order.
class LabelPool {
public:
    VertexId intern(const std::string& name) {
        auto [it, inserted] = index_.emplace(name, static_cast<VertexId>(names_.size()));
        if (inserted) {
            names_.push_back(name);
        }
        return it->second;
    }

    std::vector<std::string> take_names() { return std::move(names_); }
    VertexId size() const { return static_cast<VertexId>(names_.size()); }

private:
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::string> names_;
};

LoadResult finish(LabelPool& pool, std::vector<Edge> edges) {
    const std::size_t before = edges.size();
    const VertexId n = pool.size();
    Digraph g(n, std::move(edges), pool.take_names());
    const std::size_t collapsed = before - g.num_edges();
    return LoadResult{std::move(g), collapsed};
}

LoadResult load_edge_list(std::istream& in) {
    LabelPool pool;
    std::vector<Edge> edges;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string a, b, extra;
        if (!(ss >> a)) {
            continue; // blank line
        }
        if (!(ss >> b) || (ss >> extra)) {
            throw ParseError("expected exactly two whitespace-separated labels", line_no);
        }
        const VertexId src = pool.intern(a); // interning order defines the ids
        const VertexId dst = pool.intern(b);
        edges.emplace_back(src, dst);
    }
    return finish(pool, std::move(edges));
}

// --- DOT subset ------------------------------------------------------------
//
// Accepted grammar: [strict] digraph [name] { stmt* } where a statement is a
// node or an "a -> b -> c" edge chain; attribute blocks are skipped and the
// trailing semicolon is optional.

struct Token {
    enum Kind { Id, Arrow, Semi, LBrace, RBrace, LBracket, RBracket, Equals, Comma, End } kind;
    std::string text;
    int line;
};

class DotLexer {
public:
    explicit DotLexer(std::istream& in) : in_(in) {}

    Token next() {
        skip_space_and_comments();
        int line = line_;
        int c = in_.get();
        if (c == EOF) {
            return {Token::End, "", line};
        }
        switch (c) {
        case '{': return {Token::LBrace, "{", line};
        case '}': return {Token::RBrace, "}", line};
        case '[': return {Token::LBracket, "[", line};
        case ']': return {Token::RBracket, "]", line};
        case ';': return {Token::Semi, ";", line};
        case '=': return {Token::Equals, "=", line};
        case ',': return {Token::Comma, ",", line};
        case '-': {
            int c2 = in_.get();
            if (c2 == '>') {
                return {Token::Arrow, "->", line};
            }
            throw ParseError("expected '->' (undirected edges are not supported)", line);
        }
        case '"': {
            std::string text;
            while (true) {
                int q = in_.get();
                if (q == EOF) {
                    throw ParseError("unterminated quoted string", line);
                }
                if (q == '\\') {
                    int esc = in_.get();
                    if (esc == EOF) {
                        throw ParseError("unterminated escape in quoted string", line);
                    }
                    text.push_back(static_cast<char>(esc));
                    continue;
                }
                if (q == '"') {
                    break;
                }
                if (q == '\n') {
                    ++line_;
                }
                text.push_back(static_cast<char>(q));
            }
            return {Token::Id, text, line};
        }
        default:
            if (std::isalnum(c) || c == '_' || c == '.') {
                std::string text(1, static_cast<char>(c));
                while (std::isalnum(in_.peek()) || in_.peek() == '_' || in_.peek() == '.') {
                    text.push_back(static_cast<char>(in_.get()));
                }
                return {Token::Id, text, line};
            }
            throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'",
                             line);
        }
    }

    int line() const { return line_; }

private:
    void skip_space_and_comments() {
        while (true) {
            int c = in_.peek();
            if (c == '\n') {
                ++line_;
                in_.get();
            } else if (std::isspace(c)) {
                in_.get();
            } else if (c == '/') {
                in_.get();
                int c2 = in_.peek();
                if (c2 == '/') {
                    while (in_.peek() != '\n' && in_.peek() != EOF) {
                        in_.get();
                    }
                } else if (c2 == '*') {
                    in_.get();
                    int prev = 0;
                    while (true) {
                        int k = in_.get();
                        if (k == EOF) {
                            throw ParseError("unterminated block comment", line_);
                        }
                        if (k == '\n') {
                            ++line_;
                        }
                        if (prev == '*' && k == '/') {
                            break;
                        }
                        prev = k;
                    }
                } else {
                    throw ParseError("unexpected character '/'", line_);
                }
            } else if (c == '#') {
                while (in_.peek() != '\n' && in_.peek() != EOF) {
                    in_.get();
                }
            } else {
                return;
            }
        }
    }

    std::istream& in_;
    int line_ = 1;
};

LoadResult load_dot(std::istream& in) {
    DotLexer lex(in);
    LabelPool pool;
    std::vector<Edge> edges;

    Token t = lex.next();
    if (t.kind == Token::Id && t.text == "strict") {
        t = lex.next();
    }
    if (t.kind != Token::Id || t.text != "digraph") {
        throw ParseError("expected 'digraph'", t.line);
    }
    t = lex.next();
    if (t.kind == Token::Id) { // optional graph name
        t = lex.next();
    }
    if (t.kind != Token::LBrace) {
        throw ParseError("expected '{'", t.line);
    }

    auto skip_attributes = [&](Token& tok) {
        if (tok.kind != Token::LBracket) {
            return;
        }
        int depth = 1;
        while (depth > 0) {
            Token inner = lex.next();
            if (inner.kind == Token::End) {
                throw ParseError("unterminated attribute list", inner.line);
            }
            if (inner.kind == Token::LBracket) {
                ++depth;
            } else if (inner.kind == Token::RBracket) {
                --depth;
            }
        }
        tok = lex.next();
    };

    t = lex.next();
    while (t.kind != Token::RBrace) {
        if (t.kind == Token::End) {
            throw ParseError("expected '}' before end of input", t.line);
        }
        if (t.kind == Token::Semi) {
            t = lex.next();
            continue;
        }
        if (t.kind != Token::Id) {
            throw ParseError("expected a node or edge statement", t.line);
        }
        VertexId prev = pool.intern(t.text);
        t = lex.next();
        while (t.kind == Token::Arrow) {
            t = lex.next();
            if (t.kind != Token::Id) {
                throw ParseError("expected a vertex name after '->'", t.line);
            }
            VertexId cur = pool.intern(t.text);
            edges.emplace_back(prev, cur);
            prev = cur;
            t = lex.next();
        }
        skip_attributes(t);
    }

    return finish(pool, std::move(edges));
}

// --- Flare-style JSON -------------------------------------------------------

int line_of_offset(const std::string& text, std::size_t offset) {
    int line = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
        }
    }
    return line;
}

LoadResult load_flare_json(std::istream& in) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), line_of_offset(text, e.byte));
    }

    if (!doc.is_array()) {
        throw SchemaError("flare document must be an array of {name, imports} objects");
    }
    LabelPool pool;
    std::vector<std::pair<std::string, std::vector<std::string>>> entries;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("name") || !item["name"].is_string()) {
            throw SchemaError("every flare entry needs a string 'name'");
        }
        std::string name = item["name"].get<std::string>();
        if (pool.intern(name) != static_cast<VertexId>(entries.size())) {
            throw SchemaError("duplicate flare name: " + name);
        }
        std::vector<std::string> imports;
        if (item.contains("imports")) {
            if (!item["imports"].is_array()) {
                throw SchemaError("'imports' of " + name + " must be an array");
            }
            for (const auto& imp : item["imports"]) {
                if (!imp.is_string()) {
                    throw SchemaError("'imports' of " + name + " must contain strings");
                }
                imports.push_back(imp.get<std::string>());
            }
        }
        entries.emplace_back(std::move(name), std::move(imports));
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (const auto& imp : entries[i].second) {
            // Imports must reference declared names; inventing vertices here
            // would silently change the vertex count.
            auto pos = pool.intern(imp);
            if (pos >= static_cast<VertexId>(entries.size())) {
                throw SchemaError(entries[i].first + " imports undeclared module " + imp);
            }
            edges.emplace_back(static_cast<VertexId>(i), pos);
        }
    }
    return finish(pool, std::move(edges));
}

} // namespace

LoadResult load_digraph(std::istream& in, GraphFormat format) {
    switch (format) {
    case GraphFormat::EdgeList: return load_edge_list(in);
    case GraphFormat::Dot: return load_dot(in);
    case GraphFormat::FlareJson: return load_flare_json(in);
    }
    throw std::logic_error("unknown graph format");
}

GraphFormat infer_format(const std::string& path) {
    auto ends_with = [&](const std::string& suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with(".dot") || ends_with(".gv")) {
        return GraphFormat::Dot;
    }
    if (ends_with(".json")) {
        return GraphFormat::FlareJson;
    }
    return GraphFormat::EdgeList;
}

LoadResult load_digraph_file(const std::string& path, std::optional<GraphFormat> format) {
    GraphFormat fmt = format.value_or(infer_format(path));
    if (path == "-") {
        return load_digraph(std::cin, fmt);
    }
    std::ifstream in(path);
    if (!in) {
        throw std::ios_base::failure("cannot open " + path);
    }
    return load_digraph(in, fmt);
}

void write_edge_list(std::ostream& out, const Digraph& g) {
    for (const auto& [u, v] : g.edges()) {
        out << g.label(u) << ' ' << g.label(v) << '\n';
    }
}

} // namespace flowmag
