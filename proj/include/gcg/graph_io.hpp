#pragma once

#include <string>
#include <string_view>

#include "gcg/graph.hpp"

namespace gcg {

// graph6: size header N(n) (one byte for n <= 62, '~' plus three bytes up to
// 258047), then the upper triangle x(0,1) x(0,2) x(1,2) x(0,3) ... packed six
// bits per byte, most significant first, each byte offset by 63.
std::string to_graph6(const Graph& g);
// Accepts an optional ">>graph6<<" prefix and trailing newline.
Graph from_graph6(std::string_view text);

// `graph G { ... }` with one node line per vertex carrying its label.
std::string to_dot(const Graph& g, std::string_view name = "G");

// {"n": N, "edges": [[i, j], ...]} with i < j, sorted.
std::string to_json(const Graph& g);
Graph from_json(std::string_view text);

}  // namespace gcg
