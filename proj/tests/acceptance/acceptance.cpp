// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run everything
//   acceptance --only 3   run one criterion (ids 1, 2a, 2b, 3, ..., 7a, 7b, 8)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../fixtures.hpp"
#include "../iso_oracle.hpp"
#include "sofic/cayley.hpp"
#include "sofic/cli.hpp"
#include "sofic/covers.hpp"
#include "sofic/decompose.hpp"
#include "sofic/edge_list.hpp"
#include "sofic/expansion.hpp"
#include "sofic/generators.hpp"
#include "sofic/localstats.hpp"
#include "sofic/markov.hpp"
#include "sofic/rng.hpp"
#include "sofic/spectral.hpp"

namespace {

using namespace sofic;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full{"sofic"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  return cli::run(full, out, err);
}

// ---------------------------------------------------------------------------

Outcome sweep_guarantees() {
  std::size_t checked = 0, misses = 0, violations = 0, attempts = 0;
  const std::size_t degrees[] = {3, 4, 6};
  while (checked < 200 && attempts < 2000) {
    auto rng = stream_engine(20261018, attempts);
    const std::size_t d = degrees[attempts % 3];
    std::size_t n = std::uniform_int_distribution<std::size_t>(20, 400)(rng);
    if (d % 2 == 1 && n % 2 == 1) ++n;
    ++attempts;
    const MultiGraph g = (attempts % 4 == 0 && d != 3)
                             ? make_circulant(n, d == 4 ? std::vector<std::int64_t>{1, 2}
                                                        : std::vector<std::int64_t>{1, 2, 3})
                             : make_random_regular(n, d, rng());

    // S: a BFS ball or a uniform random set, at most n/2 vertices.
    std::vector<Vertex> members;
    if (rng() % 2 == 0) {
      const Vertex c = static_cast<Vertex>(rng() % n);
      const auto dist = bfs_distances(g, c);
      const std::size_t radius = rng() % 4;
      for (Vertex v = 0; v < n; ++v)
        if (dist[v] <= radius) members.push_back(v);
      if (members.size() > n / 2) members.resize(n / 2);
    } else {
      const std::size_t size = std::uniform_int_distribution<std::size_t>(1, n / 2)(rng);
      std::vector<Vertex> all(n);
      std::iota(all.begin(), all.end(), 0);
      std::shuffle(all.begin(), all.end(), rng);
      members.assign(all.begin(), all.begin() + size);
    }
    const VertexSet s(n, members);
    const auto chi = RealVertexFunction::indicator(s);
    const auto smooth = apply_markov_power(g, chi, 1 + rng() % 3);
    const double t = std::uniform_real_distribution<double>(0.0, 0.7)(rng);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = (1.0 - t) * chi[i] + t * smooth[i];
    const RealVertexFunction fn(f);
    if (!check_sweep_preconditions(s, fn).hold()) {
      ++misses;
      continue;
    }
    const SweepResult r = sweep_round(g, s, fn);
    ++checked;
    if (!(r.size_ok && r.overlap_ok && r.bound_ok)) ++violations;
  }
  return {checked >= 200 && violations == 0,
          std::to_string(checked) + " instances checked, " + std::to_string(violations) + " violations, " +
              std::to_string(misses) + " precondition misses logged"};
}

double tent_defect(std::size_t n, double epsilon) {
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<double>(std::min(i, n - i)) / (n / 2.0);
  return contraction_defect(make_cycle(n), RealVertexFunction(f), epsilon);
}

double two_sided_epsilon(const MultiGraph& g) {
  const SpectralEstimate e = second_eigenvalue(g);
  return 0.5 * (1.0 - std::max(std::abs(e.lambda2), std::abs(e.lambda_min)));
}

Outcome expander_contraction() {
  double worst = -1e300;
  for (std::size_t n : {64, 128, 256}) {
    const MultiGraph g = make_circulant(n, {1, 2, 3});
    const double eps = two_sided_epsilon(g);
    const FunctionFamily fam = standard_family(g, n);
    worst = std::max(worst, family_defects(g, fam, eps).max_defect);
  }
  return {worst <= 1e-9, "max defect over the family " + fmt(worst) + " (limit 1e-9)"};
}

Outcome tent_separation() {
  // Each cycle is tested at the epsilon of the circulant of the same size
  // (clamped to the largest size measured there).
  std::string detail;
  bool all_positive = true;
  for (std::size_t n : {64, 128, 256, 512}) {
    const double eps = two_sided_epsilon(make_circulant(std::min<std::size_t>(n, 256), {1, 2, 3}));
    const double d = tent_defect(n, eps);
    all_positive = all_positive && d > 0.0;
    detail += "n=" + std::to_string(n) + " eps=" + fmt(eps) + " defect=" + fmt(d) + "; ";
  }
  return {all_positive, detail + "a positive lower bound needs every defect > 0"};
}

Outcome planted_recovery() {
  const MultiGraph g = testing::planted_two_blocks();
  ParamOverrides over;
  over.gamma = 0.025;
  const DecomposeParams params = make_params(0.1, 4, 7, over);
  const DecomposeResult res = decompose(g, params);
  const auto& rep = res.report;

  std::vector<const VertexSet*> nonempty;
  for (const auto& c : rep.partition.classes)
    if (!c.empty()) nonempty.push_back(&c);
  std::size_t agree = 0;
  if (nonempty.size() == 2) {
    auto low = [](const VertexSet& c) {
      return static_cast<std::size_t>(std::count_if(c.members().begin(), c.members().end(),
                                                    [](Vertex v) { return v < 100; }));
    };
    const std::size_t a0 = low(*nonempty[0]), a1 = low(*nonempty[1]);
    const std::size_t straight = a0 + (nonempty[1]->size() - a1);
    const std::size_t crossed = a1 + (nonempty[0]->size() - a0);
    agree = std::max(straight, crossed);
  }
  const double required = params.gamma / (6.0 * 4.0);
  bool certified = nonempty.size() == 2;
  double worst_cert = 1e300;
  for (const VertexSet* c : nonempty) {
    const MultiGraph q = induced_subgraph(res.graph, c->members());
    const double cert = cheeger_certificate(q).gamma_lower;
    worst_cert = std::min(worst_cert, cert);
    certified = certified && cert >= required;
  }
  const double edit_limit = 4.0 * testing::kPlantedPerturbation / 200.0;

  // The same run through the command line, verified with the report's gamma.
  const fs::path dir = testing::scratch_dir("acceptance3");
  write_edge_list(g, (dir / "g.el").string());
  const int dec = run_cli({"decompose", "--graph", (dir / "g.el").string(), "--epsilon", "0.1", "--gamma", "0.025",
                           "--seed", "7", "--out", (dir / "g2.el").string(), "--report", (dir / "r.json").string()});
  const int ver = run_cli({"verify", "--before", (dir / "g.el").string(), "--after", (dir / "g2.el").string(),
                           "--gamma-from-report", (dir / "r.json").string(), "--report",
                           (dir / "v.json").string()});

  const bool pass = nonempty.size() == 2 && agree * 100 >= 95 * 200 && certified &&
                    rep.edit_distance <= edit_limit + 1e-12 && dec == 0 && ver == 0;
  return {pass, std::to_string(nonempty.size()) + " classes, agreement " + std::to_string(agree) +
                    "/200, min Cheeger " + fmt(worst_cert) + " vs required " + fmt(required) +
                    ", edit distance " + fmt(rep.edit_distance) + " vs limit " + fmt(edit_limit) +
                    ", cli decompose/verify exit " + std::to_string(dec) + "/" + std::to_string(ver)};
}

Outcome cheeger_vs_exact() {
  std::vector<MultiGraph> graphs;
  for (std::size_t n = 3; n <= 10; ++n) graphs.push_back(make_cycle(n));
  for (std::size_t n = 2; n <= 10; ++n) graphs.push_back(make_complete(n));
  for (std::size_t n = 4; n <= 10; ++n) {
    const std::size_t half = n / 2;
    for (std::uint32_t mask = 1; mask < (1u << half); ++mask) {
      std::vector<std::int64_t> offsets;
      std::int64_t g = static_cast<std::int64_t>(n);
      for (std::size_t o = 1; o <= half; ++o) {
        if (mask & (1u << (o - 1))) {
          offsets.push_back(static_cast<std::int64_t>(o));
          g = std::gcd(g, static_cast<std::int64_t>(o));
        }
      }
      if (g != 1) continue;  // disconnected
      graphs.push_back(make_circulant(n, offsets));
    }
  }
  graphs.push_back(make_petersen());
  const std::size_t enumerated = graphs.size();
  std::size_t random_count = 0;
  for (std::uint64_t seed = 0; random_count < 100; ++seed) {
    auto rng = stream_engine(4, seed);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(4, 14)(rng);
    const std::size_t d = std::uniform_int_distribution<std::size_t>(3, std::min<std::size_t>(n - 1, 6))(rng);
    if ((n * d) % 2 == 1) continue;
    MultiGraph g = make_random_regular(n, d, rng());
    std::size_t comps = 0;
    connected_components(g, &comps);
    if (comps != 1) continue;
    graphs.push_back(std::move(g));
    ++random_count;
  }
  std::size_t violations = 0;
  for (const MultiGraph& g : graphs) {
    const double exact = exact_expansion_constant(g);
    const double lower = cheeger_certificate(g).gamma_lower;
    if (lower > exact) ++violations;
  }
  return {violations == 0, std::to_string(enumerated) + " enumerated + " + std::to_string(random_count) +
                               " random graphs, " + std::to_string(violations) + " violations"};
}

// C4 with phi(0 -> 1) = 1, p = 3: one 12-cycle.
constexpr const char* kC4CoverFixture =
    "12 12 2\n"
    "0 9\n1 2\n2 3\n0 3\n"
    "4 1\n5 6\n6 7\n4 7\n"
    "8 5\n9 10\n10 11\n8 11\n";

Outcome cover_machinery() {
  const std::int64_t primes[] = {3, 5, 7, 11, 13};
  std::size_t bad = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto rng = stream_engine(5, t);
    const std::size_t d = 3 + t % 2;
    std::size_t n = std::uniform_int_distribution<std::size_t>(6, 40)(rng);
    if (d == 3 && n % 2 == 1) ++n;
    const MultiGraph g = t % 3 == 0 ? make_circulant(n, {1, 2}) : make_random_regular(n, d, rng());
    const std::int64_t p = primes[t % 5];
    const std::int64_t L = std::uniform_int_distribution<std::int64_t>(1, (p - 1) / 2)(rng);
    EdgeWeighting w{p, L, std::vector<std::int64_t>(g.edge_count())};
    for (auto& x : w.phi) x = std::uniform_int_distribution<std::int64_t>(-L, L)(rng);
    const CoverGraph c = build_cover(g, w);
    bool ok = c.graph.vertex_count() == static_cast<std::size_t>(p) * g.vertex_count() &&
              degree_check(c.graph).valid && degree_check(c.graph).degree == g.regular_degree();
    for (std::int64_t z = 1; z < p && ok; ++z) ok = is_deck_automorphism(c, z);
    std::vector<std::int64_t> h(g.vertex_count());
    for (auto& x : h) x = std::uniform_int_distribution<std::int64_t>(0, L)(rng);
    const CoverGraph cc = build_cover(g, coboundary_weighting(g, p, L, h));
    std::size_t base_comps = 0, cover_comps = 0;
    connected_components(g, &base_comps);
    connected_components(cc.graph, &cover_comps);
    ok = ok && cover_comps == static_cast<std::size_t>(p) * base_comps;
    if (!ok) ++bad;
  }
  const MultiGraph c4 = make_cycle(4);
  EdgeWeighting w = zero_weighting(c4, 3, 1);
  w.phi[0] = 1;  // edge {0,1}, oriented 0 -> 1
  const bool fixture = edge_list_string(build_cover(c4, w).graph) == kC4CoverFixture;
  return {bad == 0 && fixture,
          std::to_string(bad) + "/100 triples failed; C4 -> C12 fixture " + (fixture ? "matches" : "differs")};
}

Outcome pfold_bound() {
  std::string detail;
  bool pass = true;
  const MultiGraph base = make_circulant(200, {1, 2, 3});
  const double gamma = cheeger_certificate(base).gamma_lower;
  const EdgeWeighting signs = random_sign_weighting(base, 3, 6);
  for (std::int64_t p : {3, 5, 7, 11}) {
    EdgeWeighting w = signs;
    w.p = p;
    const CoverGraph c = build_cover(base, w);
    const PfoldReport r = pfold_bound_check(c, w, gamma);
    const bool raw = r.cut_edges <= 2 * base.regular_degree() * 1 * base.vertex_count();
    pass = pass && raw && r.within_ceiling && r.within_weight_ceiling && r.consistent;
    detail += "p=" + std::to_string(p) + " cut=" + std::to_string(r.cut_edges) +
              (r.p_exceeds_bound ? " flagged" : "") + "; ";
  }
  detail += "gamma_cert=" + fmt(gamma) + " so the flag needs p > " + fmt(1 + 4 / gamma);

  // A base with a larger certificate, so that the flag is actually exercised.
  const MultiGraph rr = make_random_regular(100, 6, 11);
  const double g2 = cheeger_certificate(rr).gamma_lower;
  std::size_t flagged = 0;
  for (std::int64_t p = static_cast<std::int64_t>(std::floor(1 + 4 / g2)) + 1, found = 0; found < 2; ++p) {
    if (!is_prime(p)) continue;
    ++found;
    const EdgeWeighting w = random_sign_weighting(rr, p, 6);
    const PfoldReport r = pfold_bound_check(build_cover(rr, w), w, g2);
    pass = pass && r.within_ceiling && r.p_exceeds_bound && r.not_gamma_expander && r.consistent;
    flagged += r.not_gamma_expander;
  }
  detail += "; random_regular(100,6): gamma_cert=" + fmt(g2) + ", " + std::to_string(flagged) + "/2 large p flagged";
  return {pass, detail};
}

Outcome cycle_balls() {
  // Cycles against Z^1: every radius r < n/2 for n <= 128; above that every
  // n gets r <= 3, and every 16th n plus n in {255, 256, 511, 512} also gets
  // the largest two radii and n/4.
  const CayleyOracle line(GroupId::kGrid, 1);
  std::size_t cycle_failures = 0, cycle_checks = 0, wrap_failures = 0;
  for (std::size_t n = 3; n <= 512; ++n) {
    const MultiGraph c = make_circulant(n, {1});
    const std::size_t top = (n - 1) / 2;  // largest r < n/2
    std::vector<std::size_t> radii;
    const bool wide = n % 16 == 0 || n == 255 || n == 511;
    for (std::size_t r = 0; r <= top; ++r) {
      if (n <= 128 || r <= 3 || (wide && (r + 2 > top || r == n / 4))) radii.push_back(r);
    }
    for (std::size_t r : radii) {
      ++cycle_checks;
      if (cayley_defect(c, line, r) == Rational(0)) continue;
      ++cycle_failures;
      // For odd n and r = (n-1)/2 the ball holds every vertex and its two
      // ends are adjacent, so it is the whole cycle rather than a path.
      if (n % 2 == 1 && 2 * r + 1 == n) ++wrap_failures;
    }
  }
  return {cycle_failures == 0,
          std::to_string(cycle_checks) + " (n, r) checks, " + std::to_string(cycle_failures) +
              " nonzero defects, of which " + std::to_string(wrap_failures) +
              " are odd n with r = (n-1)/2 where the induced ball is the full cycle"};
}

Outcome ball_oracles() {
  const MultiGraph rr = make_random_regular(400, 4, 2024);
  const Rational grid_defect = cayley_defect(rr, CayleyOracle(GroupId::kGrid, 2), 2);
  const double grid_value = boost::rational_cast<double>(grid_defect);
  const std::size_t sl3z_1 = sl3z_ball(1).graph.vertex_count();

  // Isomorphism-completeness suite.
  std::size_t iso_pairs = 0, noniso_pairs = 0, errors = 0;
  std::mt19937_64 rng = stream_engine(7, 0);
  while (iso_pairs < 500 || noniso_pairs < 500) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 7)(rng);
    const std::size_t extra = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
    const MultiGraph g = testing::random_connected_multigraph(n, extra, rng);
    const Vertex root = static_cast<Vertex>(rng() % n);
    if (iso_pairs < 500) {
      std::vector<Vertex> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const MultiGraph h = testing::relabel(g, perm, rng);
      ++iso_pairs;
      if (canonical_form(g, root) != canonical_form(h, perm[root])) ++errors;
    }
    if (noniso_pairs < 500 && g.edge_count() > 0) {
      const MultiGraph h = testing::perturb_one_edge(g, rng);
      const Vertex hroot = static_cast<Vertex>(rng() % n);
      if (testing::brute_force_rooted_iso(g, root, h, hroot)) continue;
      ++noniso_pairs;
      if (canonical_form(g, root) == canonical_form(h, hroot)) ++errors;
    }
  }

  const bool pass = grid_value >= 0.9 && sl3z_1 == 13 && errors == 0;
  return {pass, "random_regular(400,4) grid_Z^2 r=2 defect " + fmt(grid_value) +
                    "; sl3z_ball(1) has " + std::to_string(sl3z_1) + " vertices; canonical suite " +
                    std::to_string(iso_pairs + noniso_pairs) + " pairs, " + std::to_string(errors) + " errors"};
}

Outcome determinism() {
  const fs::path dir = testing::scratch_dir("acceptance8");
  const std::string g = (dir / "g.el").string();
  const std::string planted = (dir / "planted.el").string();
  write_edge_list(testing::planted_two_blocks(), planted);
  {
    std::ofstream w(dir / "w.txt");
    w << "0 1 1\n1 2 -1\n5 6 1\n";
  }
  const std::vector<std::vector<std::string>> runs = {
      {"gen", "--kind", "circulant", "--n", "200", "--d", "6", "--offsets", "1,2,3", "--out", g, "--report",
       (dir / "gen.json").string()},
      {"gen", "--kind", "random-regular", "--n", "300", "--d", "4", "--seed", "9", "--out", (dir / "rr.el").string(),
       "--report", (dir / "gen_rr.json").string()},
      {"stats", "--graph", (dir / "rr.el").string(), "--radius", "2", "--oracle", "grid:2", "--report",
       (dir / "stats.json").string()},
      {"markov-test", "--graph", g, "--epsilon", "0.005", "--seed", "3", "--report", (dir / "markov.json").string()},
      {"decompose", "--graph", planted, "--epsilon", "0.1", "--gamma", "0.025", "--seed", "7", "--out",
       (dir / "planted2.el").string(), "--report", (dir / "dec.json").string()},
      {"verify", "--before", planted, "--after", (dir / "planted2.el").string(), "--gamma-from-report",
       (dir / "dec.json").string(), "--report", (dir / "verify.json").string()},
      {"decompose", "--graph", planted, "--epsilon", "0.1", "--seed", "7", "--out", (dir / "planted3.el").string(),
       "--report", (dir / "dec_default.json").string()},
      {"cover", "--graph", g, "--weights", (dir / "w.txt").string(), "--p", "5", "--L", "1", "--out",
       (dir / "cover.el").string(), "--report", (dir / "cover.json").string()},
      {"cover-stats", "--graph", g, "--random-signs", "--seed", "5", "--p", "5", "--steps", "400", "--trials",
       "20000", "--report", (dir / "cover_stats.json").string()},
  };
  const std::vector<std::string> outputs = {"gen.json",    "g.el",         "gen_rr.json",      "rr.el",
                                            "stats.json",  "markov.json",  "dec.json",         "planted2.el",
                                            "verify.json", "dec_default.json", "planted3.el", "cover.el",
                                            "cover.json",  "cover_stats.json"};
  auto run_all = [&](std::vector<int>& codes) {
    codes.clear();
    for (const auto& args : runs) codes.push_back(run_cli(args));
    std::vector<std::string> bytes;
    for (const auto& name : outputs) bytes.push_back(slurp(dir / name));
    return bytes;
  };
  std::vector<int> codes1, codes2;
  const auto first = run_all(codes1);
  const auto second = run_all(codes2);
  std::size_t differing = 0;
  for (std::size_t i = 0; i < outputs.size(); ++i) differing += first[i] != second[i] || first[i].empty();
  const bool all_ok = std::all_of(codes1.begin(), codes1.end(), [](int c) { return c == 0; }) && codes1 == codes2;
  std::string codes;
  for (int c : codes1) codes += std::to_string(c);
  return {differing == 0 && all_ok, std::to_string(runs.size()) + " CLI runs repeated, " +
                                        std::to_string(differing) + "/" + std::to_string(outputs.size()) +
                                        " outputs differ or are empty, exit codes " + codes};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string only;
  app.add_option("--only", only, "run one criterion, or every criterion whose id starts with it");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"1", "threshold-rounding guarantees", 120, sweep_guarantees},
      {"2a", "contraction holds on circulant expanders", 60, expander_contraction},
      {"2b", "tent function violates contraction on cycles", 60, tent_separation},
      {"3", "planted decomposition recovery", 60, planted_recovery},
      {"4", "Cheeger certificate never exceeds the exact constant", 300, cheeger_vs_exact},
      {"5", "cover machinery", 60, cover_machinery},
      {"6", "fiber-cut bound", 60, pfold_bound},
      {"7a", "cycle balls match the line", 180, cycle_balls},
      {"7b", "random-regular defect, SL3(Z) ball, canonical-form suite", 180, ball_oracles},
      {"8", "determinism of CLI reports", 120, determinism},
  };

  bool matched = false, all_pass = true;
  for (const auto& c : criteria) {
    if (!only.empty() && c.id != only && c.id.substr(0, only.size()) != only) continue;
    matched = true;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.time_limit_s;
    const bool pass = o.pass && in_time;
    all_pass = all_pass && pass;
    std::printf("%s criterion %s (%s): %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.id.c_str(),
                c.title.c_str(), o.detail.c_str(), seconds, c.time_limit_s);
    std::fflush(stdout);
  }
  if (!matched) {
    std::fprintf(stderr, "no criterion '%s'\n", only.c_str());
    return 2;
  }
  return all_pass ? 0 : 1;
}
