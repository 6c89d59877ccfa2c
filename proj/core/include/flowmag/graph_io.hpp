#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "flowmag/digraph.hpp"

namespace flowmag {

enum class GraphFormat { EdgeList, Dot, FlareJson };

/// Syntax error in an input stream; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Structurally well-formed input whose content contradicts the schema
/// (duplicate names, imports of undeclared modules).
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LoadResult {
    Digraph graph;
    /// Input edges collapsed onto an already-present edge.
    std::size_t duplicate_edges = 0;
};

LoadResult load_digraph(std::istream& in, GraphFormat format);

/// Loads from a file path, or standard input when `path` is "-".
LoadResult load_digraph_file(const std::string& path,
                             std::optional<GraphFormat> format = std::nullopt);

/// .dot/.gv -> Dot, .json -> FlareJson, anything else -> EdgeList.
GraphFormat infer_format(const std::string& path);

/// One "<src> <dst>" line per edge, using labels when present.
void write_edge_list(std::ostream& out, const Digraph& g);

} // namespace flowmag
