#pragma once

#include <iosfwd>
#include <string>

#include "starcolor/graph.hpp"

namespace starcolor {

// DIMACS edge format:
//   c <comment>
//   p edge <n> <m>
//   e <u> <v>
// Parse failures throw input_error with the 1-based line number.
Graph parse_dimacs(std::istream& in);
Graph parse_dimacs_string(const std::string& text);
Graph load_dimacs_file(const std::string& path);

// Canonical form: single p-line then edges ascending, no comments.
std::string write_dimacs(const Graph& g);

// Coloring JSON: {"k": <int>, "colors": {"<vertex>": <color>, ...}}.
// Every vertex of the target graph must be present with a color in 1..k.
Coloring parse_coloring_json(const std::string& text, int num_vertices);
Coloring load_coloring_file(const std::string& path, int num_vertices);
std::string write_coloring_json(const Coloring& c, int num_vertices);

}  // namespace starcolor
