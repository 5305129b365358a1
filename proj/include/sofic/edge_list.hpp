#pragma once

#include <iosfwd>
#include <string>

#include "sofic/graph.hpp"

namespace sofic {

// Edge-list format:
//   n m d        vertex count, edge count, declared degree (-1 if irregular)
//   u v          m lines, 0-based endpoints; parallel edges repeat the line
// UTF-8, LF line endings. Blank lines after the last edge are ignored.

MultiGraph parse_edge_list(std::istream& in);
MultiGraph read_edge_list(const std::string& path);

void format_edge_list(const MultiGraph& g, std::ostream& out);
std::string edge_list_string(const MultiGraph& g);
void write_edge_list(const MultiGraph& g, const std::string& path);

}  // namespace sofic
