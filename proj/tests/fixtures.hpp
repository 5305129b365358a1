#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sofic/generators.hpp"
#include "sofic/graph.hpp"

namespace sofic::testing {

/// Two circulant(100, {1,2}) blocks on {0..99} and {100..199}. Inside each
/// block the edges {0,1} and {50,51} (shifted) are removed and the freed
/// endpoints are matched across: 0-100, 1-101, 50-150, 51-151. Degrees stay 4.
inline MultiGraph planted_two_blocks() {
  const MultiGraph block = make_circulant(100, {1, 2});
  std::vector<Edge> edges;
  for (Vertex shift : {0u, 100u}) {
    for (const Edge& e : block.edges()) {
      const Vertex a = e.lo(), b = e.hi();
      if ((a == 0 && b == 1) || (a == 50 && b == 51)) continue;
      edges.push_back({a + shift, b + shift});
    }
  }
  for (Vertex v : {0u, 1u, 50u, 51u}) edges.push_back({v, v + 100});
  return MultiGraph(200, std::move(edges));
}

inline constexpr std::size_t kPlantedPerturbation = 4;

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("sofic_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace sofic::testing
