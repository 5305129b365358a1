#include "sofic/cayley.hpp"

#include <array>
#include <map>
#include <vector>

#include "sofic/errors.hpp"
#include "sofic/kernels.hpp"

namespace sofic {

CayleyOracle::CayleyOracle(GroupId group, std::size_t rank) : group_(group), rank_(rank) {
  if (group_ == GroupId::kSL3Z) rank_ = 3;
  if (rank_ == 0) throw InputError("Cayley oracle rank must be positive");
}

CayleyOracle CayleyOracle::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  std::size_t rank = 1;
  if (colon != std::string::npos) {
    try {
      rank = std::stoul(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("bad oracle rank in '" + spec + "'");
    }
  }
  if (head == "grid") return CayleyOracle(GroupId::kGrid, rank);
  if (head == "free") return CayleyOracle(GroupId::kFreeGroup, rank);
  if (head == "sl3z") return CayleyOracle(GroupId::kSL3Z, 3);
  throw InputError("unknown oracle '" + spec + "' (expected grid:k, free:k or sl3z)");
}

std::size_t CayleyOracle::generator_count() const {
  return group_ == GroupId::kSL3Z ? 12 : 2 * rank_;
}

std::string CayleyOracle::name() const {
  switch (group_) {
    case GroupId::kGrid: return "grid:" + std::to_string(rank_);
    case GroupId::kFreeGroup: return "free:" + std::to_string(rank_);
    case GroupId::kSL3Z: return "sl3z";
  }
  return "?";
}

namespace {

RootedBall grid_ball(std::size_t k, std::size_t radius) {
  using Point = std::vector<std::int64_t>;
  std::map<Point, Vertex> id;
  std::vector<Point> order{Point(k, 0)};
  std::vector<std::size_t> dist{0};
  id.emplace(order[0], 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (dist[head] == radius) continue;
    for (std::size_t i = 0; i < k; ++i) {
      for (int sgn : {+1, -1}) {
        Point q = order[head];
        q[i] += sgn;
        if (id.emplace(q, static_cast<Vertex>(order.size())).second) {
          order.push_back(q);
          dist.push_back(dist[head] + 1);
        }
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (std::size_t i = 0; i < k; ++i) {
      Point q = order[a];
      ++q[i];
      const auto it = id.find(q);
      if (it != id.end()) edges.push_back({static_cast<Vertex>(a), it->second});
    }
  }
  return {radius, MultiGraph(order.size(), std::move(edges)), 0, {}};
}

RootedBall free_group_ball(std::size_t k, std::size_t radius) {
  // Vertices are reduced words; store the last letter (0..2k-1, inverse of
  // letter a is a^1) and extend by every letter except its inverse.
  std::vector<int> last{-1};
  std::vector<std::size_t> depth{0};
  std::vector<Edge> edges;
  for (std::size_t head = 0; head < last.size(); ++head) {
    if (depth[head] == radius) continue;
    for (int a = 0; a < static_cast<int>(2 * k); ++a) {
      if (last[head] >= 0 && (a ^ 1) == last[head]) continue;
      const auto child = static_cast<Vertex>(last.size());
      last.push_back(a);
      depth.push_back(depth[head] + 1);
      edges.push_back({static_cast<Vertex>(head), child});
    }
  }
  return {radius, MultiGraph(last.size(), std::move(edges)), 0, {}};
}

using Matrix3 = std::array<std::int64_t, 9>;

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw Error("SL3(Z) ball: 64-bit overflow");
  return out;
}

// A * (I + sign * E_ij): column j += sign * column i.
Matrix3 times_transvection(const Matrix3& a, int i, int j, int sign) {
  Matrix3 out = a;
  for (int row = 0; row < 3; ++row) {
    out[row * 3 + j] = checked_add(a[row * 3 + j], sign * a[row * 3 + i]);
  }
  return out;
}

struct Transvection {
  int i, j, sign;
};

std::vector<Transvection> sl3z_generators() {
  std::vector<Transvection> gens;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j)
        for (int sign : {+1, -1}) gens.push_back({i, j, sign});
  return gens;
}

}  // namespace

RootedBall sl3z_ball(std::size_t radius) {
  if (radius > kSL3ZMaxRadius) {
    throw InputError("sl3z_ball radius capped at " + std::to_string(kSL3ZMaxRadius));
  }
  const auto gens = sl3z_generators();
  std::map<Matrix3, Vertex> id;
  std::vector<Matrix3> order{Matrix3{1, 0, 0, 0, 1, 0, 0, 0, 1}};
  std::vector<std::size_t> dist{0};
  id.emplace(order[0], 0);
  for (std::size_t head = 0; head < order.size(); ++head) {
    if (dist[head] == radius) continue;
    for (const auto& s : gens) {
      Matrix3 b = times_transvection(order[head], s.i, s.j, s.sign);
      if (id.emplace(b, static_cast<Vertex>(order.size())).second) {
        order.push_back(b);
        dist.push_back(dist[head] + 1);
      }
    }
  }
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < order.size(); ++a) {
    for (const auto& s : gens) {
      const auto it = id.find(times_transvection(order[a], s.i, s.j, s.sign));
      if (it != id.end() && a < it->second) edges.push_back({static_cast<Vertex>(a), it->second});
    }
  }
  return {radius, MultiGraph(order.size(), std::move(edges)), 0, {}};
}

RootedBall CayleyOracle::ball(std::size_t radius) const {
  switch (group_) {
    case GroupId::kGrid: return grid_ball(rank_, radius);
    case GroupId::kFreeGroup: return free_group_ball(rank_, radius);
    case GroupId::kSL3Z: return sl3z_ball(radius);
  }
  throw InputError("unknown group");
}

Rational cayley_defect(const MultiGraph& g, const CayleyOracle& oracle, std::size_t radius,
                       std::size_t cap) {
  if (g.vertex_count() == 0) return Rational(0);
  const std::string target = canonical_form(oracle.ball(radius), cap);
  const auto keys = kernels::parallel::ball_keys(g, radius, cap);
  std::int64_t bad = 0;
  for (const std::string& k : keys) bad += (k != target);
  return Rational(bad, static_cast<std::int64_t>(g.vertex_count()));
}

}  // namespace sofic
