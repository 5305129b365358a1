#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "sofic/decompose.hpp"
#include "sofic/errors.hpp"
#include "sofic/expansion.hpp"
#include "sofic/generators.hpp"
#include "sofic/markov.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

using namespace sofic;

namespace {

/// Minimum-size, then lexicographically least, subset of `active` with
/// boundary < (gamma d / 2) |S|, by plain enumeration.
std::optional<VertexSet> oracle_sparse_cut(const MultiGraph& g, const std::vector<Vertex>& active, double gamma) {
  const std::size_t m = active.size();
  const double d = static_cast<double>(g.regular_degree());
  std::optional<VertexSet> best;
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    std::vector<Vertex> members;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) members.push_back(active[i]);
    const VertexSet s(g.vertex_count(), members);
    if (static_cast<double>(edge_boundary(g, s)) < gamma * d / 2.0 * static_cast<double>(s.size())) {
      if (!best || size_lex_less(s, *best)) best = s;
    }
  }
  return best;
}

double sparsity(const MultiGraph& g, const VertexSet& s) {
  return static_cast<double>(edge_boundary(g, s)) / static_cast<double>(s.size());
}

/// Two copies of K4 minus an edge, joined by 2-5 and 3-4: 3-regular.
MultiGraph two_squares() {
  return MultiGraph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}, {3, 4}, {2, 5}});
}

/// Petersen without the spoke 0-5, plus a C4 with one chord (10..13) hung
/// on vertices 0 and 5: 3-regular on 14 vertices.
MultiGraph petersen_with_appendage() {
  const MultiGraph p = make_petersen();
  std::vector<Edge> edges;
  for (const Edge& e : p.edges())
    if (!(e.lo() == 0 && e.hi() == 5)) edges.push_back(e);
  for (Edge e : std::initializer_list<Edge>{{10, 11}, {11, 12}, {12, 13}, {13, 10}, {11, 13}, {10, 0}, {12, 5}})
    edges.push_back(e);
  return MultiGraph(14, edges);
}

/// Two circulant(100, {1,2}) blocks, edge {0,1} removed from each and
/// replaced by 0-100, 1-101.
MultiGraph two_blocks_two_cross() {
  const MultiGraph block = make_circulant(100, {1, 2});
  std::vector<Edge> edges;
  for (Vertex shift : {0u, 100u})
    for (const Edge& e : block.edges())
      if (!(e.lo() == 0 && e.hi() == 1)) edges.push_back({e.u + shift, e.v + shift});
  edges.push_back({0, 100});
  edges.push_back({1, 101});
  return MultiGraph(200, edges);
}

Partition blocks_partition() {
  std::vector<Vertex> a(100), b(100);
  for (Vertex i = 0; i < 100; ++i) {
    a[i] = i;
    b[i] = i + 100;
  }
  return Partition{{VertexSet(200), VertexSet(200, a), VertexSet(200, b)},
                   {ClassOrigin::kExceptional, ClassOrigin::kSparse, ClassOrigin::kRemainder}};
}

/// Surgery invariants re-checked from scratch.
void check_surgery(const MultiGraph& g, const Partition& p, std::size_t id, const ClassSurgery& s) {
  const VertexSet& cls = p.classes[id];
  const std::size_t d = g.regular_degree();
  CHECK(s.graph.vertex_count() == cls.size());
  CHECK(degree_check(s.graph).valid);
  CHECK(degree_check(s.graph).degree == d);
  for (const Edge& e : s.graph.edges()) CHECK(e.u != e.v);
  if (s.plan.replaced_by_expander) return;

  CHECK(2 * s.plan.matching_m.size() == s.plan.cross_edges);
  CHECK(s.plan.matching_n.size() == s.plan.cross_edges);
  const MultiGraph h = induced_subgraph(g, cls.members());
  std::map<Vertex, Vertex> local;
  for (Vertex i = 0; i < cls.size(); ++i) local[cls.members()[i]] = i;
  for (const Edge& e : s.plan.matching_m) {
    for (Vertex x : {e.u, e.v}) {
      CHECK_FALSE(s.plan.boundary.contains(x));
      for (Vertex y : g.neighbors(x)) CHECK_FALSE(s.plan.boundary.contains(y));
    }
  }
  for (std::size_t i = 0; i < s.plan.matching_m.size(); ++i) {
    const Edge& a = s.plan.matching_m[i];
    const auto da = bfs_distances(h, local[a.u]), db = bfs_distances(h, local[a.v]);
    for (std::size_t j = i + 1; j < s.plan.matching_m.size(); ++j) {
      const Edge& b = s.plan.matching_m[j];
      for (Vertex y : {b.u, b.v}) {
        CHECK(std::min(da[local[y]], db[local[y]]) > s.plan.separation);
      }
    }
  }
  // Q = H - M + N exactly.
  std::vector<Edge> expected(h.edges().begin(), h.edges().end());
  for (const Edge& e : s.plan.matching_m) {
    const Edge le{local[e.u], local[e.v]};
    auto it = std::find_if(expected.begin(), expected.end(),
                           [&](const Edge& x) { return x.lo() == le.lo() && x.hi() == le.hi(); });
    REQUIRE(it != expected.end());
    expected.erase(it);
  }
  for (const Edge& e : s.plan.matching_n) expected.push_back({local[e.u], local[e.v]});
  CHECK(MultiGraph(cls.size(), expected).same_multigraph(s.graph));
}

}  // namespace

TEST_SUITE("decompose") {
  TEST_CASE("default parameters") {
    const DecomposeParams p = make_params(0.1, 4, 3);
    CHECK(p.k == 7);  // 0.9^6 = 0.531, 0.9^7 = 0.478
    CHECK(p.c_prime == doctest::Approx(2 * std::pow(0.9, 7)));
    CHECK(p.gamma == doctest::Approx(0.01 / 144));
    CHECK(p.alpha == doctest::Approx(p.gamma / 4));
    CHECK(p.delta == 0.01);
    CHECK(p.beta == doctest::Approx(0.0025));
    CHECK(p.exact_cut_limit == 20);
    CHECK(p.seed == 3);
    CHECK(make_params(0.5, 3, 0).k == 2);

    ParamOverrides o;
    o.gamma = 0.02;
    CHECK(make_params(0.1, 4, 0, o).alpha == doctest::Approx(0.005));
    o.alpha = 0.3;
    CHECK(make_params(0.1, 4, 0, o).alpha == 0.3);

    ParamOverrides bad;
    bad.c_prime = 0.2;  // below (0.9)^7
    CHECK_THROWS_AS(make_params(0.1, 4, 0, bad), InputError);
    CHECK_THROWS_AS(make_params(1.5, 4, 0), InputError);
    ParamOverrides neg;
    neg.delta = -1;
    CHECK_THROWS_AS(make_params(0.1, 4, 0, neg), InputError);
  }

  TEST_CASE("is_sparse_set") {
    const MultiGraph g = make_cycle(8);
    const VertexSet half(8, {0, 1, 2, 3});
    // boundary 2 < (gamma * 2 / 2) * 4 iff gamma > 0.5
    CHECK(is_sparse_set(g, half, 0.51));
    CHECK_FALSE(is_sparse_set(g, half, 0.5));
    CHECK(indicator_boundary_l1(g, half) < 0.51 * 0.5);
  }

  TEST_CASE("sweep_round on an indicator returns the set") {
    const MultiGraph g = make_petersen();
    const VertexSet s(10, {0, 2, 7});
    const SweepResult r = sweep_round(g, s, RealVertexFunction::indicator(s));
    CHECK(r.set == s);
    CHECK(r.size_ok);
    CHECK(r.overlap_ok);
    CHECK(r.bound_ok);
  }

  TEST_CASE("sweep_round on the Petersen outer cycle") {
    const MultiGraph g = make_petersen();
    const VertexSet outer(10, {0, 1, 2, 3, 4});
    // M preserves the mean, so M^2 chi_S already has mass |S|.
    const auto f = apply_markov_power(g, RealVertexFunction::indicator(outer), 2);
    const SweepPreconditions pre = check_sweep_preconditions(outer, f);
    CHECK(pre.mass_slack <= 1e-12);
    if (pre.hold()) {
      const SweepResult r = sweep_round(g, outer, f);
      // Exhaustive scan of all levels {f > t} with t = 1/2 or a value of f in (1/2, 2/3).
      std::vector<double> levels{0.5};
      for (double x : f.values())
        if (x > 0.5 && x < 2.0 / 3.0) levels.push_back(x);
      std::sort(levels.begin(), levels.end());
      std::size_t best = SIZE_MAX;
      VertexSet best_set;
      for (double t : levels) {
        std::vector<Vertex> m;
        for (Vertex v = 0; v < 10; ++v)
          if (f[v] > t) m.push_back(v);
        const VertexSet u(10, m);
        if (edge_boundary(g, u) < best) {
          best = edge_boundary(g, u);
          best_set = u;
        }
      }
      CHECK(r.set == best_set);
      CHECK(r.size_ok);
      CHECK(r.overlap_ok);
      CHECK(r.bound_ok);
    } else {
      CHECK(pre.distance > pre.distance_limit);
      CHECK_THROWS_AS(sweep_round(g, outer, f), PreconditionError);
    }
  }

  TEST_CASE("sweep_round on the planted blocks") {
    const MultiGraph g = testing::planted_two_blocks();
    std::vector<Vertex> block(100);
    for (Vertex i = 0; i < 100; ++i) block[i] = i;
    const VertexSet s(200, block);
    const auto f = apply_markov_power(g, RealVertexFunction::indicator(s), 3);
    REQUIRE(check_sweep_preconditions(s, f).hold());
    const SweepResult r = sweep_round(g, s, f);
    std::size_t inside = 0;
    for (Vertex v : r.set.members()) inside += v < 100;
    CHECK(inside >= 75);
    CHECK(r.set.size() < 200);
    CHECK(r.overlap_ok);
    CHECK(r.size_ok);
    CHECK(r.bound_ok);
  }

  TEST_CASE("sweep_round rejects bad inputs") {
    const MultiGraph g = make_cycle(10);
    const VertexSet s(10, {0, 1, 2});
    CHECK_THROWS_AS(sweep_round(g, s, RealVertexFunction::constant(10, 0.3)), PreconditionError);
    try {
      sweep_round(g, s, RealVertexFunction::constant(10, 0.3));
    } catch (const PreconditionError& e) {
      CHECK(std::string(e.what()).find("slack") != std::string::npos);
    }
  }

  TEST_CASE("find_sparse_cut examples") {
    // In K6 only sets of size 5 and 6 beat 1.25 |S|.
    const MultiGraph k6 = make_complete(6);
    const auto k6_cut = find_sparse_cut(k6, VertexSet::all(6), 0.5, CutMode::kExact);
    REQUIRE(k6_cut.has_value());
    CHECK(*k6_cut == *oracle_sparse_cut(k6, {0, 1, 2, 3, 4, 5}, 0.5));
    CHECK(k6_cut->size() == 5);
    CHECK_FALSE(find_sparse_cut(k6, VertexSet(6, {0, 1, 2}), 0.5, CutMode::kExact).has_value());

    const MultiGraph sq = two_squares();
    const std::vector<Vertex> all{0, 1, 2, 3, 4, 5, 6, 7};
    const auto oracle = oracle_sparse_cut(sq, all, 0.6);
    REQUIRE(oracle.has_value());
    CHECK(*oracle == VertexSet(8, {0, 1, 2, 3}));
    const auto exact = find_sparse_cut(sq, VertexSet::all(8), 0.6, CutMode::kExact);
    REQUIRE(exact.has_value());
    CHECK(*exact == *oracle);

    CHECK_THROWS_AS(find_sparse_cut(make_cycle(30), VertexSet::all(30), 0.3, CutMode::kExact, 20), LimitError);
  }

  TEST_CASE("exact mode matches enumeration") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
      const MultiGraph g = make_random_regular(14, 3 + t % 2, rng());
      std::vector<Vertex> active;
      for (Vertex v = 0; v < 14; ++v)
        if (rng() % 4) active.push_back(v);
      const double gamma = 0.2 + 0.1 * (t % 8);
      const auto a = oracle_sparse_cut(g, active, gamma);
      const auto b = find_sparse_cut(g, VertexSet(14, active), gamma, CutMode::kExact);
      CHECK(a.has_value() == b.has_value());
      if (a && b) CHECK(*a == *b);
    }
  }

  TEST_CASE("spectral mode on the planted blocks separates them") {
    const MultiGraph g = testing::planted_two_blocks();
    const auto cut = find_sparse_cut(g, VertexSet::all(200), 0.025, CutMode::kSpectral);
    REQUIRE(cut.has_value());
    std::size_t low = 0;
    for (Vertex v : cut->members()) low += v < 100;
    CHECK(std::max(low, cut->size() - low) == cut->size());
    CHECK(cut->size() == 100);
    CHECK(edge_boundary(g, *cut) == 4);

    // The same structure shrunk to 16 vertices: exact and spectral agree.
    const MultiGraph small = [] {
      const MultiGraph block = make_circulant(8, {1, 2});
      std::vector<Edge> e;
      for (Vertex shift : {0u, 8u})
        for (const Edge& x : block.edges())
          if (!(x.lo() == 0 && x.hi() == 1) && !(x.lo() == 4 && x.hi() == 5)) e.push_back({x.u + shift, x.v + shift});
      for (Vertex v : {0u, 1u, 4u, 5u}) e.push_back({v, v + 8});
      return MultiGraph(16, e);
    }();
    const auto ex = find_sparse_cut(small, VertexSet::all(16), 0.6, CutMode::kExact);
    const auto sp = find_sparse_cut(small, VertexSet::all(16), 0.6, CutMode::kSpectral);
    REQUIRE(ex.has_value());
    REQUIRE(sp.has_value());
    CHECK(edge_boundary(small, *sp) == 4);
    CHECK(sp->size() == 8);
  }

  TEST_CASE("exact and spectral cuts are consistent") {
    // Spectral sparsity within a factor 3 of the exact minimum-size set, or
    // no spectral answer only when exact finds nothing at gamma / 3.
    std::mt19937_64 rng(77);
    std::size_t instances = 0, off = 0;
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 10 + 2 * (t % 4);
      MultiGraph g = t % 3 == 0 ? make_random_regular(n, 3, rng()) : [&] {
        // Two random halves joined by a few edges, degrees repaired.
        const MultiGraph a = make_random_regular(n / 2, 4, rng()), b = make_random_regular(n / 2, 4, rng());
        std::vector<Edge> e(a.edges().begin() + 1, a.edges().end());
        const Edge ra = a.edges()[0];
        for (std::size_t i = 1; i < b.edge_count(); ++i) {
          const Edge x = b.edges()[i];
          e.push_back({static_cast<Vertex>(x.u + n / 2), static_cast<Vertex>(x.v + n / 2)});
        }
        const Edge rb = b.edges()[0];
        e.push_back({ra.u, static_cast<Vertex>(rb.u + n / 2)});
        e.push_back({ra.v, static_cast<Vertex>(rb.v + n / 2)});
        return MultiGraph(n, e);
      }();
      const double gamma = 0.1 + 0.15 * (t % 5);
      const VertexSet all = VertexSet::all(n);
      const auto ex = find_sparse_cut(g, all, gamma, CutMode::kExact);
      const auto sp = find_sparse_cut(g, all, gamma, CutMode::kSpectral, 20, t);
      ++instances;
      if (sp) {
        REQUIRE(ex.has_value());
        if (sparsity(g, *sp) > 3 * sparsity(g, *ex) + 1e-12) ++off;
      } else if (find_sparse_cut(g, all, gamma / 3, CutMode::kExact)) {
        ++off;
      }
    }
    MESSAGE(off << " of " << instances << " instances outside the factor-3 contract");
    CHECK(off == 0);
  }

  TEST_CASE("prune on a strong expander is empty") {
    const DecomposeParams p = make_params(0.1, 6, 0);
    const PruneResult r = prune_exceptional_set(make_circulant(64, {1, 2, 3}), p);
    CHECK(r.set.empty());
    CHECK_FALSE(r.exhaustive);
    const PruneResult k = prune_exceptional_set(make_complete(8), make_params(0.1, 7, 0));
    CHECK(k.set.empty());
    CHECK(k.exhaustive);
  }

  TEST_CASE("prune finds a sparse appendage") {
    const MultiGraph g = petersen_with_appendage();
    REQUIRE(degree_check(g).valid);
    const DecomposeParams p = make_params(0.5, 3, 0);
    const PruneResult r = prune_exceptional_set(g, p);
    CHECK(r.exhaustive);
    CHECK_FALSE(r.core.empty());
    const VertexSet appendage(14, {10, 11, 12, 13});
    const VertexSet around = neighborhood(g, appendage, 1);
    for (Vertex v : around.members()) CHECK(r.set.contains(v));
    CHECK(is_violator(g, r.core, p));
  }

  TEST_CASE("prune respects the size bound when the hypothesis holds") {
    std::size_t verified = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const MultiGraph g = make_random_regular(12 + 2 * (seed % 3), 3, seed);
      for (double eps : {0.3, 0.5, 0.7}) {
        const DecomposeParams p = make_params(eps, 3, seed);
        const PruneResult r = prune_exceptional_set(g, p);
        REQUIRE(r.exhaustive);
        REQUIRE(r.hypothesis_holds.has_value());
        if (*r.hypothesis_holds) {
          ++verified;
          CHECK(static_cast<double>(r.set.size()) / static_cast<double>(g.vertex_count()) <= r.size_bound);
        }
      }
    }
    // Complete graphs contract every non-constant function by 1/(n-1).
    for (std::size_t n : {8, 10, 12}) {
      const MultiGraph g = make_complete(n);
      const PruneResult r = prune_exceptional_set(g, make_params(0.3, n - 1, 0));
      REQUIRE(r.hypothesis_holds.has_value());
      CHECK(*r.hypothesis_holds);
      verified += *r.hypothesis_holds;
      CHECK(static_cast<double>(r.set.size()) / static_cast<double>(n) <= r.size_bound);
    }
    CHECK(verified >= 3);
    MESSAGE(verified << " instances with the hypothesis verified exhaustively");
  }

  TEST_CASE("carve: a single expander is one class") {
    const MultiGraph g = make_circulant(64, {1, 2, 3});
    const CarveResult r = carve_partition(g, make_params(0.1, 6, 0));
    REQUIRE(r.partition.classes.size() == 2);
    CHECK(r.partition.classes[0].empty());
    CHECK(r.partition.classes[1].size() == 64);
    CHECK(r.boundary_mass == 0.0);
    CHECK(r.partition.is_partition_of(64));
  }

  TEST_CASE("carve: two disjoint expanders give the components") {
    const MultiGraph g = disjoint_union(make_petersen(), make_petersen());
    const CarveResult r = carve_partition(g, make_params(0.1, 3, 0));
    REQUIRE(r.partition.classes.size() == 3);
    CHECK(r.partition.classes[0].empty());
    std::vector<Vertex> a(10), b(10);
    for (Vertex i = 0; i < 10; ++i) {
      a[i] = i;
      b[i] = i + 10;
    }
    CHECK(r.partition.classes[1] == VertexSet(20, a));
    CHECK(r.partition.classes[2] == VertexSet(20, b));
    CHECK(r.boundary_mass == 0.0);
    CHECK(r.exact_cuts >= 1);
  }

  TEST_CASE("carve: planted blocks") {
    const MultiGraph g = testing::planted_two_blocks();
    ParamOverrides o;
    o.gamma = 0.025;
    const CarveResult r = carve_partition(g, make_params(0.1, 4, 7, o));
    CHECK(r.partition.is_partition_of(200));
    std::vector<VertexSet> nonempty;
    for (const auto& c : r.partition.classes)
      if (!c.empty()) nonempty.push_back(c);
    REQUIRE(nonempty.size() == 2);
    std::size_t low = 0;
    for (Vertex v : nonempty[0].members()) low += v < 100;
    CHECK(std::max(low, nonempty[0].size() - low) >= 95);
    CHECK(r.boundary_mass <= 8.0 * 2 / 200 + 1e-12);
    CHECK(r.boundary_mass == doctest::Approx(partition_boundary_mass(g, r.partition)));
  }

  TEST_CASE("carve output is always a partition") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
      const MultiGraph g = t % 2 ? make_random_regular(40, 3, rng()) : make_circulant(40, {1});
      ParamOverrides o;
      o.gamma = 0.05 * (1 + t % 4);
      const CarveResult r = carve_partition(g, make_params(0.2, g.regular_degree(), t, o));
      CHECK(r.partition.is_partition_of(40));
      const auto labels = r.partition.labels(40);
      CHECK(labels.size() == 40);
    }
  }

  TEST_CASE("parity fix") {
    const MultiGraph g = make_petersen();
    Partition p{{VertexSet(10), VertexSet(10, {0, 1, 2, 3, 4}), VertexSet(10, {5, 6, 7, 8, 9})},
                {ClassOrigin::kExceptional, ClassOrigin::kSparse, ClassOrigin::kRemainder}};
    const ParityFix fix = fix_class_parity(g, p);
    CHECK(fix.moved_vertices >= 1);
    CHECK(p.is_partition_of(10));
    for (const auto& c : p.classes) CHECK(c.size() % 2 == 0);

    Partition single{{VertexSet(10), VertexSet(10, {0}), VertexSet(10, {1, 2, 3, 4, 5, 6, 7, 8, 9})},
                     {ClassOrigin::kExceptional, ClassOrigin::kSparse, ClassOrigin::kRemainder}};
    const ParityFix merged = fix_class_parity(g, single);
    CHECK(merged.merged_singletons == 1);
    CHECK(single.is_partition_of(10));
    for (const auto& c : single.classes) CHECK(c.size() != 1);
  }

  TEST_CASE("regularize: class without cross edges is untouched") {
    const MultiGraph g = disjoint_union(make_cycle(6), make_petersen());
    Partition p{{VertexSet(16), VertexSet(16, {0, 1, 2, 3, 4, 5}),
                 VertexSet(16, {6, 7, 8, 9, 10, 11, 12, 13, 14, 15})},
                {ClassOrigin::kExceptional, ClassOrigin::kSparse, ClassOrigin::kRemainder}};
    const ClassSurgery s = regularize_class(make_random_regular(16, 3, 0), p, 1, 0.1, 0);
    (void)s;
    const ClassSurgery q = regularize_class(disjoint_union(make_petersen(), make_petersen()),
                                            Partition{{VertexSet(20), VertexSet::all(20).complement(),
                                                       VertexSet(20, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9})},
                                                      {ClassOrigin::kExceptional, ClassOrigin::kSparse,
                                                       ClassOrigin::kRemainder}},
                                            2, 0.1, 0);
    CHECK(q.plan.cross_edges == 0);
    CHECK(q.plan.matching_m.empty());
    CHECK(q.plan.matching_n.empty());
    CHECK(q.internal_edits == 0);
    CHECK(q.graph.same_multigraph(make_petersen()));
  }

  TEST_CASE("regularize: two blocks with a 2-edge crossing") {
    const MultiGraph g = two_blocks_two_cross();
    REQUIRE(degree_check(g).valid);
    const Partition p = blocks_partition();
    const double gamma0 = 0.025;
    for (std::size_t id : {1, 2}) {
      const ClassSurgery s = regularize_class(g, p, id, gamma0, 7);
      CHECK_FALSE(s.plan.replaced_by_expander);
      CHECK(s.plan.cross_edges == 2);
      CHECK(s.plan.matching_m.size() == 1);
      CHECK(s.plan.matching_n.size() == 2);
      CHECK(s.plan.r == 240);
      CHECK(s.internal_edits == 3);
      check_surgery(g, p, id, s);
      CHECK(certify_expansion(s.graph).value >= gamma0 / (6 * 4));
    }
  }

  TEST_CASE("regularize: planted blocks") {
    const MultiGraph g = testing::planted_two_blocks();
    const Partition p = blocks_partition();
    for (std::size_t id : {1, 2}) {
      const ClassSurgery s = regularize_class(g, p, id, 0.025, 7);
      check_surgery(g, p, id, s);
      CHECK(s.plan.matching_m.size() == 2);
    }
  }

  TEST_CASE("replacement expander") {
    for (std::size_t d : {3, 4, 5, 6}) {
      for (std::size_t s : {2, 4, 6, 10, 30}) {
        if ((s * d) % 2) continue;
        bool certified = false;
        const MultiGraph q = replacement_expander(s, d, 0.001, 1, &certified);
        CHECK(q.vertex_count() == s);
        CHECK(degree_check(q).valid);
        CHECK(degree_check(q).degree == d);
        for (const Edge& e : q.edges()) CHECK(e.u != e.v);
        if (certified && s > 2) CHECK(certify_expansion(q).value > 0.001);
      }
    }
  }

  TEST_CASE("decompose: fixed points and accounting") {
    const MultiGraph g = disjoint_union(make_petersen(), make_petersen());
    const DecomposeResult r = decompose(g, make_params(0.1, 3, 0));
    CHECK(r.graph.same_multigraph(g));
    CHECK(r.report.edit_distance == 0.0);
    CHECK(r.report.per_class.size() == 2);
    for (const auto& c : r.report.per_class) {
      CHECK(c.kind == "brute_force");
      CHECK(c.value == doctest::Approx(1.0 / 3.0));
      CHECK(c.value >= r.report.gamma_prime_achieved);
    }
  }

  TEST_CASE("decompose: planted blocks") {
    const MultiGraph g = testing::planted_two_blocks();
    ParamOverrides o;
    o.gamma = 0.025;
    const DecomposeResult r = decompose(g, make_params(0.1, 4, 7, o));
    CHECK(r.graph.vertex_count() == 200);
    CHECK(degree_check(r.graph).valid);
    CHECK(r.report.edit_count == edit_count(g, r.graph));
    CHECK(r.report.accounted_edits == r.report.edit_count);
    CHECK(r.report.edit_distance <= 4.0 * testing::kPlantedPerturbation / 200 + 1e-12);
    CHECK(r.report.gamma_required == doctest::Approx(0.025 / 24));
    CHECK(r.report.gamma_prime_achieved >= r.report.gamma_required);
    CHECK(r.report.replaced_classes.empty());
    for (const auto& c : r.report.per_class) CHECK(c.value >= r.report.gamma_prime_achieved);
    const VerifyReport v = verify_decomposition(g, r.graph, r.report.gamma_required);
    CHECK(v.pass);
  }

  TEST_CASE("decompose: the cycle is not decomposable (negative fixture)") {
    const MultiGraph g = make_cycle(100);
    const DecomposeResult r = decompose(g, make_params(0.1, 2, 0));
    CHECK(degree_check(r.graph).valid);
    CHECK(r.report.partition.is_partition_of(100));
    CHECK(r.report.accounted_edits == r.report.edit_count);
    MESSAGE("C100: " << r.report.per_class.size() << " classes, boundary_mass " << r.report.boundary_mass
                     << ", replaced " << r.report.replaced_classes.size() << ", edit_distance "
                     << r.report.edit_distance << ", gamma' " << r.report.gamma_prime_achieved);
  }

  TEST_CASE("decompose: surgery invariants on random inputs") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 6; ++t) {
      const std::size_t d = 3 + t % 2;
      const MultiGraph g = make_random_regular(60, d, rng());
      ParamOverrides o;
      o.gamma = 0.3;
      const DecomposeResult r = decompose(g, make_params(0.3, d, t, o));
      CHECK(r.graph.vertex_count() == 60);
      CHECK(degree_check(r.graph).valid);
      CHECK(degree_check(r.graph).degree == d);
      CHECK(r.report.accounted_edits == edit_count(g, r.graph));
      CHECK(r.report.partition.is_partition_of(60));
    }
  }

  TEST_CASE("verify_decomposition") {
    const MultiGraph k4k4 = disjoint_union(make_complete(4), make_complete(4));
    const VerifyReport a = verify_decomposition(k4k4, k4k4, 2.0 / 3.0);
    CHECK(a.pass);
    CHECK(a.components.size() == 2);

    const MultiGraph mixed = disjoint_union(make_cycle(8), make_cycle(8));
    const VerifyReport b = verify_decomposition(mixed, mixed, 0.3);
    CHECK_FALSE(b.pass);
    REQUIRE(b.components.size() == 2);
    CHECK(b.components[0].certificate.value == doctest::Approx(0.25));
    CHECK_FALSE(b.components[0].pass);

    const VerifyReport c = verify_decomposition(make_cycle(8), make_cycle(9), 0.1);
    CHECK_FALSE(c.same_vertex_set);
    CHECK_FALSE(c.pass);
    CHECK(std::isnan(c.edit_distance));
  }
}
