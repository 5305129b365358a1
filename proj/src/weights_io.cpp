#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <string_view>
#include <utility>

#include "sofic/covers.hpp"
#include "sofic/errors.hpp"

namespace sofic {

namespace {

std::vector<std::string_view> fields_of(std::string_view line) {
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

std::int64_t to_int(std::string_view field, std::size_t line_no) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("weights line " + std::to_string(line_no) + ": '" + std::string(field) + "' is not an integer");
  }
  return value;
}

}  // namespace

EdgeWeighting parse_weights(std::istream& in, const MultiGraph& g, std::int64_t p, std::int64_t L) {
  EdgeWeighting w{p, L, std::vector<std::int64_t>(g.edge_count(), 0)};
  // Validates p and L before reading any value.
  w.validate(g);

  std::map<std::pair<Vertex, Vertex>, std::vector<EdgeId>> instances;
  for (EdgeId e = 0; e < g.edge_count(); ++e) instances[{g.edge(e).lo(), g.edge(e).hi()}].push_back(e);
  std::map<std::pair<Vertex, Vertex>, std::size_t> used;
  std::vector<char> bound(g.edge_count(), 0);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      throw InputError("weights line " + std::to_string(line_no) + ": CRLF line endings are not accepted");
    }
    const auto f = fields_of(line);
    if (f.empty()) continue;
    if (f.size() != 3) throw InputError("weights line " + std::to_string(line_no) + ": expected 'u v w'");
    const std::int64_t u = to_int(f[0], line_no), v = to_int(f[1], line_no), x = to_int(f[2], line_no);
    const auto n = static_cast<std::int64_t>(g.vertex_count());
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
      throw InputError("weights line " + std::to_string(line_no) + ": " + std::to_string(u) + " " +
                       std::to_string(v) + " is not an edge");
    }
    if (x < -L || x > L) {
      throw InputError("weights line " + std::to_string(line_no) + ": weight " + std::to_string(x) +
                       " outside [-" + std::to_string(L) + ", " + std::to_string(L) + "]");
    }
    const auto a = static_cast<Vertex>(u), b = static_cast<Vertex>(v);
    const auto it = instances.find({std::min(a, b), std::max(a, b)});
    if (it == instances.end()) {
      throw InputError("weights line " + std::to_string(line_no) + ": " + std::to_string(u) + " " +
                       std::to_string(v) + " is not an edge");
    }
    const std::size_t k = used[{a, b}]++;
    if (k >= it->second.size()) {
      throw InputError("weights line " + std::to_string(line_no) + ": more lines for " + std::to_string(u) + " " +
                       std::to_string(v) + " than parallel edges");
    }
    const EdgeId e = it->second[k];
    const std::int64_t lo_hi = a < b ? x : -x;
    if (bound[e] && w.phi[e] != lo_hi) {
      throw InputError("weights line " + std::to_string(line_no) + ": antisymmetry violated for edge " +
                       std::to_string(u) + " " + std::to_string(v));
    }
    w.phi[e] = lo_hi;
    bound[e] = 1;
  }
  return w;
}

EdgeWeighting read_weights(const std::string& path, const MultiGraph& g, std::int64_t p, std::int64_t L) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open weights file '" + path + "'");
  return parse_weights(in, g, p, L);
}

void format_weights(const MultiGraph& g, const EdgeWeighting& w, std::ostream& out) {
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    out << g.edge(e).lo() << ' ' << g.edge(e).hi() << ' ' << w.phi[e] << '\n';
  }
}

}  // namespace sofic
