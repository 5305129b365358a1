#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "sofic/errors.hpp"
#include "sofic/localstats.hpp"

namespace sofic {

namespace {

using Perm = std::vector<std::uint32_t>;

// Ordered partition of {0..n-1}. Cells are contiguous ranges of `lab`;
// a cell is identified by its start position.
struct Partition {
  std::vector<std::uint32_t> lab;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> cell_of;  // vertex -> start of its cell
  std::vector<std::uint32_t> size_at;  // start -> cell size (valid at starts)
  std::size_t cells = 0;

  bool discrete() const { return cells == lab.size(); }
};

class Canonizer {
 public:
  Canonizer(const MultiGraph& g, Vertex root) : g_(g), n_(g.vertex_count()) {
    count_.assign(n_, 0);
    Partition p = initial_partition(root);
    std::deque<std::uint32_t> queue;
    std::vector<char> in_queue(n_, 0);
    for (std::uint32_t s = 0; s < n_; s += p.size_at[s]) {
      queue.push_back(s);
      in_queue[s] = 1;
    }
    refine(p, queue, in_queue);
    std::vector<std::uint32_t> prefix;
    search(p, prefix);
  }

  std::string key() const {
    std::string out;
    auto put = [&out](std::uint32_t x) {
      for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((x >> (8 * b)) & 0xff));
    };
    put(static_cast<std::uint32_t>(n_));
    put(static_cast<std::uint32_t>(best_.size() / 2));
    for (std::uint32_t x : best_) put(x);
    return out;
  }

 private:
  Partition initial_partition(Vertex root) {
    constexpr auto kInf = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> color(n_, kInf);
    std::deque<Vertex> queue{root};
    color[root] = 0;
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g_.neighbors(x)) {
        if (color[y] == kInf) {
          color[y] = color[x] + 1;
          queue.push_back(y);
        }
      }
    }
    Partition p;
    p.lab.resize(n_);
    std::iota(p.lab.begin(), p.lab.end(), 0u);
    std::stable_sort(p.lab.begin(), p.lab.end(),
                     [&color](std::uint32_t a, std::uint32_t b) { return color[a] < color[b]; });
    p.pos.resize(n_);
    p.cell_of.resize(n_);
    p.size_at.assign(n_, 0);
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (i > 0 && color[p.lab[i]] != color[p.lab[i - 1]]) {
        p.size_at[start] = i - start;
        ++p.cells;
        start = i;
      }
      p.pos[p.lab[i]] = i;
      p.cell_of[p.lab[i]] = start;
    }
    if (n_ > 0) {
      p.size_at[start] = static_cast<std::uint32_t>(n_) - start;
      ++p.cells;
    }
    return p;
  }

  // Equitable refinement with a FIFO of splitter cells. Every decision
  // depends only on cell positions and neighbour counts, so isomorphic
  // inputs produce corresponding ordered partitions.
  void refine(Partition& p, std::deque<std::uint32_t>& queue, std::vector<char>& in_queue) {
    std::vector<std::uint32_t> touched, touched_cells, splitter;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> scratch;
    while (!queue.empty() && !p.discrete()) {
      const std::uint32_t w = queue.front();
      queue.pop_front();
      in_queue[w] = 0;
      splitter.assign(p.lab.begin() + w, p.lab.begin() + w + p.size_at[w]);

      touched.clear();
      for (std::uint32_t x : splitter) {
        for (Vertex y : g_.neighbors(x)) {
          if (count_[y]++ == 0) touched.push_back(y);
        }
      }
      touched_cells.clear();
      for (std::uint32_t y : touched) touched_cells.push_back(p.cell_of[y]);
      std::sort(touched_cells.begin(), touched_cells.end());
      touched_cells.erase(std::unique(touched_cells.begin(), touched_cells.end()), touched_cells.end());

      for (std::uint32_t c : touched_cells) {
        const std::uint32_t size = p.size_at[c];
        if (size == 1) continue;
        scratch.clear();
        for (std::uint32_t i = c; i < c + size; ++i) scratch.push_back({count_[p.lab[i]], p.lab[i]});
        std::sort(scratch.begin(), scratch.end());
        if (scratch.front().first == scratch.back().first) continue;

        const bool was_queued = in_queue[c] != 0;
        std::vector<std::uint32_t> frag_starts;
        std::uint32_t largest = c, largest_size = 0;
        std::uint32_t start = c;
        for (std::uint32_t k = 0; k < size; ++k) {
          const std::uint32_t i = c + k;
          if (k > 0 && scratch[k].first != scratch[k - 1].first) {
            p.size_at[start] = i - start;
            frag_starts.push_back(start);
            start = i;
          }
          p.lab[i] = scratch[k].second;
          p.pos[scratch[k].second] = i;
          p.cell_of[scratch[k].second] = start;
        }
        p.size_at[start] = c + size - start;
        frag_starts.push_back(start);
        p.cells += frag_starts.size() - 1;
        for (std::uint32_t f : frag_starts) {
          if (p.size_at[f] > largest_size) {
            largest_size = p.size_at[f];
            largest = f;
          }
        }
        for (std::uint32_t f : frag_starts) {
          if (in_queue[f]) continue;
          if (!was_queued && f == largest) continue;
          queue.push_back(f);
          in_queue[f] = 1;
        }
      }
      for (std::uint32_t y : touched) count_[y] = 0;
    }
  }

  Partition individualize(const Partition& parent, std::uint32_t v) const {
    Partition p = parent;
    const std::uint32_t c = p.cell_of[v];
    const std::uint32_t size = p.size_at[c];
    const std::uint32_t other = p.lab[c];
    std::swap(p.lab[c], p.lab[p.pos[v]]);
    p.pos[other] = p.pos[v];
    p.pos[v] = c;
    p.size_at[c] = 1;
    p.size_at[c + 1] = size - 1;
    for (std::uint32_t i = c + 1; i < c + size; ++i) p.cell_of[p.lab[i]] = c + 1;
    ++p.cells;
    return p;
  }

  std::vector<std::uint32_t> certificate(const Partition& p) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(g_.edge_count());
    for (const Edge& e : g_.edges()) {
      const std::uint32_t a = p.pos[e.u], b = p.pos[e.v];
      edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges.begin(), edges.end());
    std::vector<std::uint32_t> flat;
    flat.reserve(2 * edges.size());
    for (auto [a, b] : edges) {
      flat.push_back(a);
      flat.push_back(b);
    }
    return flat;
  }

  void record_automorphism(const Partition& reference, const Partition& leaf) {
    Perm sigma(n_);
    bool identity = true;
    for (std::uint32_t i = 0; i < n_; ++i) {
      sigma[reference.lab[i]] = leaf.lab[i];
      identity = identity && reference.lab[i] == leaf.lab[i];
    }
    if (!identity) generators_.push_back(std::move(sigma));
  }

  // Union-find orbits of the group generated by the stored automorphisms
  // that fix every vertex of `prefix`.
  std::vector<std::uint32_t> stabilizer_orbits(const std::vector<std::uint32_t>& prefix) const {
    std::vector<std::uint32_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&parent](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Perm& sigma : generators_) {
      bool fixes = true;
      for (std::uint32_t v : prefix) {
        if (sigma[v] != v) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      for (std::uint32_t x = 0; x < n_; ++x) {
        const std::uint32_t a = find(x), b = find(sigma[x]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (std::uint32_t x = 0; x < n_; ++x) parent[x] = find(x);
    return parent;
  }

  void search(const Partition& p, std::vector<std::uint32_t>& prefix) {
    if (p.discrete()) {
      std::vector<std::uint32_t> cert = certificate(p);
      if (!have_best_) {
        have_best_ = true;
        best_ = cert;
        best_leaf_ = p;
        first_ = std::move(cert);
        first_leaf_ = p;
        return;
      }
      if (cert == first_) {
        record_automorphism(first_leaf_, p);
      } else if (cert == best_) {
        record_automorphism(best_leaf_, p);
      } else if (cert < best_) {
        best_ = std::move(cert);
        best_leaf_ = p;
      }
      return;
    }

    std::uint32_t target = 0;
    while (p.size_at[target] == 1) target += 1;
    std::vector<std::uint32_t> cell(p.lab.begin() + target, p.lab.begin() + target + p.size_at[target]);
    std::sort(cell.begin(), cell.end());

    std::vector<std::uint32_t> explored;
    std::size_t gens_seen = 0;
    std::vector<std::uint32_t> orbit;
    for (std::uint32_t v : cell) {
      if (!explored.empty()) {
        if (orbit.empty() || gens_seen != generators_.size()) {
          orbit = stabilizer_orbits(prefix);
          gens_seen = generators_.size();
        }
        const bool redundant = std::any_of(explored.begin(), explored.end(),
                                           [&](std::uint32_t u) { return orbit[u] == orbit[v]; });
        if (redundant) continue;
      }
      Partition child = individualize(p, v);
      std::deque<std::uint32_t> queue{child.cell_of[v]};
      std::vector<char> in_queue(n_, 0);
      in_queue[child.cell_of[v]] = 1;
      refine(child, queue, in_queue);
      prefix.push_back(v);
      search(child, prefix);
      prefix.pop_back();
      explored.push_back(v);
    }
  }

  const MultiGraph& g_;
  std::size_t n_;
  std::vector<std::uint32_t> count_;
  std::vector<Perm> generators_;
  bool have_best_ = false;
  std::vector<std::uint32_t> best_, first_;
  Partition best_leaf_, first_leaf_;
};

}  // namespace

std::string canonical_form(const MultiGraph& graph, Vertex root, std::size_t cap) {
  if (graph.vertex_count() > cap) {
    throw LimitError("ball has " + std::to_string(graph.vertex_count()) +
                     " vertices, above the canonical-form cap " + std::to_string(cap));
  }
  if (graph.vertex_count() == 0) return std::string(8, '\0');
  if (root >= graph.vertex_count()) throw InputError("root out of range");
  return Canonizer(graph, root).key();
}

std::string canonical_form(const RootedBall& ball, std::size_t cap) {
  return canonical_form(ball.graph, ball.root, cap);
}

std::string to_hex(const std::string& bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out.push_back(kDigits[c >> 4]);
    out.push_back(kDigits[c & 0xf]);
  }
  return out;
}

}  // namespace sofic
