#include "sofic/edge_list.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include "sofic/errors.hpp"

namespace sofic {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_int(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line_no) + ": '" + std::string(field) +
                     "' is not an integer");
  }
  return value;
}

}  // namespace

MultiGraph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw InputError("empty edge-list file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') throw InputError("line 1: CRLF line endings are not accepted");
  const auto header = split_fields(line);
  if (header.size() != 3) throw InputError("line 1: header must be 'n m d'");
  const std::int64_t n = parse_int(header[0], 1);
  const std::int64_t m = parse_int(header[1], 1);
  const std::int64_t d = parse_int(header[2], 1);
  if (n < 0 || m < 0 || d < -1) throw InputError("line 1: negative count in header");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (edges.size() < static_cast<std::size_t>(m)) {
    if (!std::getline(in, line)) {
      throw InputError("expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    }
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'u v'");
    }
    const std::int64_t u = parse_int(fields[0], line_no);
    const std::int64_t v = parse_int(fields[1], line_no);
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("line " + std::to_string(line_no) + ": vertex index out of range");
    }
    if (u == v) throw InputError("line " + std::to_string(line_no) + ": loop edge " + std::to_string(u));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!split_fields(line).empty()) {
      throw InputError("line " + std::to_string(line_no) + ": more edge lines than declared");
    }
  }

  MultiGraph g(static_cast<std::size_t>(n), std::move(edges));
  const auto witness = degree_check(g);
  const std::int64_t actual = witness.valid ? static_cast<std::int64_t>(witness.degree) : -1;
  if (d != actual) {
    throw InputError("declared degree " + std::to_string(d) + " does not match the edges (" +
                     std::to_string(actual) + ")");
  }
  return g;
}

MultiGraph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return parse_edge_list(in);
}

void format_edge_list(const MultiGraph& g, std::ostream& out) {
  const auto witness = degree_check(g);
  out << g.vertex_count() << ' ' << g.edge_count() << ' '
      << (witness.valid ? static_cast<std::int64_t>(witness.degree) : -1) << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

std::string edge_list_string(const MultiGraph& g) {
  std::ostringstream out;
  format_edge_list(g, out);
  return out.str();
}

void write_edge_list(const MultiGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  format_edge_list(g, out);
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace sofic
