#include "sofic/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sofic/cayley.hpp"
#include "sofic/covers.hpp"
#include "sofic/decompose.hpp"
#include "sofic/edge_list.hpp"
#include "sofic/errors.hpp"
#include "sofic/generators.hpp"
#include "sofic/localstats.hpp"
#include "sofic/markov.hpp"
#include "sofic/spectral.hpp"

namespace sofic::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string rational_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Non-finite doubles become null.
Json number(double x) {
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

class Timer {
 public:
  explicit Timer(bool enabled) : enabled_(enabled) {}

  template <class F>
  auto time(const std::string& name, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      record(name, start);
    } else {
      auto value = body();
      record(name, start);
      return value;
    }
  }

  Json json() const { return enabled_ ? timings_ : Json::object(); }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    timings_[name] = ms.count();
  }

  bool enabled_;
  Json timings_ = Json::object();
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

void emit_report(const std::string& report_path, const Json& config, const Json& result, const Timer& timer,
                 std::ostream& out) {
  Json doc;
  doc["config"] = config;
  doc["result"] = result;
  doc["timings_ms"] = timer.json();
  const std::string text = doc.dump(2) + "\n";
  if (report_path.empty()) {
    out << text;
  } else {
    write_text(report_path, text);
  }
}

Json edge_json(const Edge& e) { return Json::array({e.u, e.v}); }

Json certificate_json(const ClassCertificate& c) {
  Json j;
  j["size"] = c.size;
  j["kind"] = c.kind;
  j["value"] = number(c.value);
  return j;
}

Json params_json(const DecomposeParams& p) {
  Json j;
  j["epsilon"] = p.epsilon;
  j["k"] = p.k;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["c_prime"] = p.c_prime;
  j["gamma"] = p.gamma;
  j["delta"] = p.delta;
  j["exact_cut_limit"] = p.exact_cut_limit;
  j["exact_prune_limit"] = p.exact_prune_limit;
  j["seed"] = p.seed;
  return j;
}

Json decomposition_json(const DecompositionReport& r) {
  Json j;
  j["gamma_required"] = number(r.gamma_required);
  j["gamma_prime_achieved"] = number(r.gamma_prime_achieved);
  j["edit_distance"] = number(r.edit_distance);
  j["boundary_mass"] = number(r.boundary_mass);
  j["per_class"] = Json::array();
  for (const auto& c : r.per_class) j["per_class"].push_back(certificate_json(c));
  j["replaced_classes"] = r.replaced_classes;

  Json diag;
  diag["edit_count"] = r.edit_count;
  diag["accounted_edits"] = r.accounted_edits;
  diag["boundary_mass_carved"] = number(r.carve.boundary_mass);
  Json prune;
  prune["core_size"] = r.carve.prune.core.size();
  prune["size"] = r.carve.prune.set.size();
  prune["size_bound"] = number(r.carve.prune.size_bound);
  prune["exhaustive"] = r.carve.prune.exhaustive;
  prune["candidates"] = r.carve.prune.candidates;
  prune["hypothesis_holds"] =
      r.carve.prune.hypothesis_holds ? Json(*r.carve.prune.hypothesis_holds) : Json(nullptr);
  diag["prune"] = prune;
  diag["exact_cuts"] = r.carve.exact_cuts;
  diag["spectral_cuts"] = r.carve.spectral_cuts;
  diag["sweep_precondition_misses"] = r.carve.sweep_precondition_misses;
  diag["carve_log"] = r.carve.log;
  diag["parity_moved_vertices"] = r.parity.moved_vertices;
  diag["merged_singletons"] = r.parity.merged_singletons;
  diag["classes"] = Json::array();
  for (std::size_t i = 0, plan = 0; i < r.partition.classes.size(); ++i) {
    const VertexSet& cls = r.partition.classes[i];
    Json c;
    c["id"] = i;
    c["size"] = cls.size();
    c["origin"] = to_string(r.partition.origins[i]);
    if (!cls.empty()) {
      const SurgeryPlan& s = r.plans[plan++];
      c["cross_edges"] = s.cross_edges;
      c["boundary_size"] = s.boundary.size();
      c["r"] = s.r;
      c["separation"] = s.separation;
      c["matching_m"] = Json::array();
      for (const Edge& e : s.matching_m) c["matching_m"].push_back(edge_json(e));
      c["matching_n"] = Json::array();
      for (const Edge& e : s.matching_n) c["matching_n"].push_back(edge_json(e));
      c["replaced_by_expander"] = s.replaced_by_expander;
      c["replacement_reason"] = s.replacement_reason;
    }
    diag["classes"].push_back(c);
  }
  j["diagnostics"] = diag;
  return j;
}

Json verify_json(const VerifyReport& r) {
  Json j;
  j["same_vertex_set"] = r.same_vertex_set;
  j["edit_count"] = r.edit_count;
  j["edit_distance"] = number(r.edit_distance);
  j["components"] = Json::array();
  for (const auto& c : r.components) {
    Json x;
    x["size"] = c.size;
    x["regular"] = c.regular;
    x["kind"] = c.certificate.kind;
    x["value"] = number(c.certificate.value);
    x["pass"] = c.pass;
    j["components"].push_back(x);
  }
  j["all_components_pass"] = r.all_components_pass;
  j["pass"] = r.pass;
  return j;
}

Json distribution_json(const LocalDistribution& d) {
  Json j;
  j["radius"] = d.radius;
  j["classes"] = Json::array();
  for (const auto& [key, count] : d.counts) {
    Json c;
    c["key"] = to_hex(key);
    c["count"] = count;
    c["total"] = d.total;
    j["classes"].push_back(c);
  }
  return j;
}

// Options shared by the weighting-based subcommands.
struct WeightOptions {
  std::string weights;
  bool random_signs = false;
  std::int64_t p = 0;
  std::int64_t L = 0;
  std::uint64_t seed = 0;

  EdgeWeighting load(const MultiGraph& g) const {
    const std::int64_t l = L > 0 ? L : (p - 1) / 2;
    if (random_signs) {
      if (!weights.empty()) throw InputError("--weights and --random-signs are exclusive");
      EdgeWeighting w = random_sign_weighting(g, p, seed);
      if (L > 0) w.L = L;
      w.validate(g);
      return w;
    }
    if (weights.empty()) return zero_weighting(g, p, l);
    return read_weights(weights, g, p, l);
  }

  void add_to(CLI::App* app) {
    app->add_option("--weights", weights, "weights file (lines 'u v w'); unlisted edges get 0");
    app->add_flag("--random-signs", random_signs, "independent +-1 weight on every edge instance");
    app->add_option("--p", p, "odd prime modulus")->required();
    app->add_option("--L", L, "weight bound (default 1 with --random-signs, else (p-1)/2)");
    app->add_option("--seed", seed, "seed");
  }

  Json json(const EdgeWeighting& w) const {
    Json j;
    j["weights"] = weights;
    j["random_signs"] = random_signs;
    j["p"] = w.p;
    j["L"] = w.L;
    j["seed"] = seed;
    return j;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expander decompositions, local statistics and Z_p covers of regular graphs", "sofic"};
  app.require_subcommand(1);
  bool timings = false;
  app.add_flag("--timings", timings, "fill timings_ms in reports (off by default so reports are reproducible)");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph");
  std::string gen_kind, gen_out, gen_report;
  std::size_t gen_n = 0, gen_d = 0;
  std::vector<std::int64_t> gen_offsets;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "cycle | complete | circulant | random-regular")->required();
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--d", gen_d, "degree (random-regular; checked for circulant)");
  gen->add_option("--offsets", gen_offsets, "circulant offsets, comma separated")->delimiter(',');
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--out", gen_out, "edge-list output")->required();
  gen->add_option("--report", gen_report, "JSON report path (default stdout)");

  // stats
  auto* stats = app.add_subcommand("stats", "exact local statistics and Cayley-oracle defect");
  std::string st_graph, st_oracle, st_report;
  std::size_t st_radius = 1, st_cap = kDefaultBallCap;
  stats->add_option("--graph", st_graph, "edge-list input")->required();
  stats->add_option("--radius", st_radius, "ball radius");
  stats->add_option("--oracle", st_oracle, "grid:k | free:k | sl3z");
  stats->add_option("--cap", st_cap, "largest ball to canonicalize");
  stats->add_option("--report", st_report, "JSON report path (default stdout)");

  // markov-test
  auto* mt = app.add_subcommand("markov-test", "contraction defects over the standard function family");
  std::string mt_graph, mt_report;
  double mt_epsilon = 0.1;
  std::uint64_t mt_seed = 0;
  FamilySpec mt_family;
  mt->add_option("--graph", mt_graph, "edge-list input")->required();
  mt->add_option("--epsilon", mt_epsilon, "contraction parameter")->required();
  mt->add_option("--seed", mt_seed, "seed");
  mt->add_option("--random-boxed", mt_family.random_boxed, "random [0,1]-valued members");
  mt->add_option("--random-indicators", mt_family.random_indicators, "random indicator members");
  mt->add_option("--ball-radii", mt_family.ball_radii, "ball indicators around vertex 0");
  mt->add_option("--eigen-levels", mt_family.eigen_levels, "level sets of the lambda_2 eigenvector");
  mt->add_option("--report", mt_report, "JSON report path (default stdout)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "rebuild a regular graph as a union of expanders");
  std::string dc_graph, dc_out, dc_report;
  double dc_epsilon = 0.1;
  std::uint64_t dc_seed = 0;
  ParamOverrides dc_over;
  std::size_t dc_k = 0, dc_exact = 0;
  double dc_alpha = 0, dc_beta = 0, dc_cprime = 0, dc_gamma = 0, dc_delta = 0;
  dec->add_option("--graph", dc_graph, "edge-list input")->required();
  dec->add_option("--epsilon", dc_epsilon, "contraction parameter in (0,1)")->required();
  dec->add_option("--seed", dc_seed, "seed");
  dec->add_option("--out", dc_out, "edge-list output for the rebuilt graph")->required();
  dec->add_option("--report", dc_report, "JSON report path (default stdout)");
  auto* o_k = dec->add_option("--k", dc_k, "Markov power");
  auto* o_alpha = dec->add_option("--alpha", dc_alpha, "boundedness threshold");
  auto* o_beta = dec->add_option("--beta", dc_beta, "exceptional-set budget");
  auto* o_cprime = dec->add_option("--c-prime", dc_cprime, "contraction threshold c'");
  auto* o_gamma = dec->add_option("--gamma", dc_gamma, "carving expansion parameter");
  auto* o_delta = dec->add_option("--delta", dc_delta, "contraction slack");
  auto* o_exact = dec->add_option("--exact-cut-limit", dc_exact, "largest active set searched exactly");

  // verify
  auto* ver = app.add_subcommand("verify", "check that a graph is a vertex-disjoint union of expanders");
  std::string vf_before, vf_after, vf_from, vf_report;
  double vf_gamma = 0.0;
  std::size_t vf_exact = kDefaultCertifyExactLimit;
  ver->add_option("--before", vf_before, "original edge list")->required();
  ver->add_option("--after", vf_after, "rebuilt edge list")->required();
  auto* o_vgamma = ver->add_option("--gamma", vf_gamma, "expansion to certify");
  ver->add_option("--gamma-from-report", vf_from, "take gamma_required from a decompose report");
  ver->add_option("--exact-limit", vf_exact, "largest component certified by brute force");
  ver->add_option("--report", vf_report, "JSON report path (default stdout)");

  // cover
  auto* cov = app.add_subcommand("cover", "build the p-fold cover of a weighted graph");
  std::string cv_graph, cv_out, cv_report;
  WeightOptions cv_w;
  cov->add_option("--graph", cv_graph, "edge-list input")->required();
  cv_w.add_to(cov);
  cov->add_option("--out", cv_out, "edge-list output for the cover")->required();
  cov->add_option("--report", cv_report, "JSON report path (default stdout)");

  // cover-stats
  auto* cs = app.add_subcommand("cover-stats", "cycle sums, walk sums, fiber balance and the fiber-cut bound");
  std::string cs_graph, cs_report;
  WeightOptions cs_w;
  std::size_t cs_length = 4, cs_steps = 100, cs_trials = 10000;
  double cs_gamma = 0.0;
  cs->add_option("--graph", cs_graph, "edge-list input (base graph)")->required();
  cs_w.add_to(cs);
  cs->add_option("--length", cs_length, "closed-walk length for cycle sums");
  cs->add_option("--steps", cs_steps, "walk length for the walk-sum distribution");
  cs->add_option("--trials", cs_trials, "random-walk trials");
  auto* o_cgamma = cs->add_option("--gamma", cs_gamma, "expansion for the bound check (default: Cheeger bound of the base)");
  cs->add_option("--report", cs_report, "JSON report path (default stdout)");

  std::vector<std::string> argv_rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_rest.begin(), argv_rest.end());
  try {
    app.parse(argv_rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  Timer timer(timings);
  try {
    if (*gen) {
      const GraphKind kind = parse_graph_kind(gen_kind);
      const MultiGraph g = timer.time("generate", [&] { return generate(kind, gen_n, gen_d, gen_offsets, gen_seed); });
      write_edge_list(g, gen_out);
      Json config;
      config["subcommand"] = "gen";
      config["kind"] = to_string(kind);
      config["n"] = gen_n;
      config["d"] = gen_d;
      config["offsets"] = gen_offsets;
      config["seed"] = gen_seed;
      config["out"] = gen_out;
      Json result;
      const auto w = degree_check(g);
      result["vertices"] = g.vertex_count();
      result["edges"] = g.edge_count();
      result["regular"] = w.valid;
      result["degree"] = w.degree;
      emit_report(gen_report, config, result, timer, out);
      return kExitOk;
    }

    if (*stats) {
      const MultiGraph g = read_edge_list(st_graph);
      Json config;
      config["subcommand"] = "stats";
      config["graph"] = st_graph;
      config["radius"] = st_radius;
      config["oracle"] = st_oracle;
      config["cap"] = st_cap;
      const LocalDistribution dist = timer.time("local_statistics", [&] { return local_statistics(g, st_radius, st_cap); });
      Json result = distribution_json(dist);
      if (!st_oracle.empty()) {
        const CayleyOracle oracle = CayleyOracle::parse(st_oracle);
        const Rational defect = timer.time("cayley_defect", [&] { return cayley_defect(g, oracle, st_radius, st_cap); });
        result["oracle"] = oracle.name();
        result["cayley_defect"] = rational_string(defect);
        result["cayley_defect_value"] = boost::rational_cast<double>(defect);
      }
      emit_report(st_report, config, result, timer, out);
      return kExitOk;
    }

    if (*mt) {
      const MultiGraph g = read_edge_list(mt_graph);
      if (!(mt_epsilon > 0.0 && mt_epsilon < 1.0)) throw InputError("epsilon must lie in (0, 1)");
      Json config;
      config["subcommand"] = "markov-test";
      config["graph"] = mt_graph;
      config["epsilon"] = mt_epsilon;
      config["seed"] = mt_seed;
      config["family"] = {{"random_boxed", mt_family.random_boxed},
                          {"random_indicators", mt_family.random_indicators},
                          {"ball_radii", mt_family.ball_radii},
                          {"eigen_levels", mt_family.eigen_levels}};
      const FunctionFamily fam = timer.time("family", [&] { return standard_family(g, mt_seed, mt_family); });
      const DefectSummary sum = timer.time("defects", [&] { return family_defects(g, fam, mt_epsilon); });
      const SpectralEstimate est = timer.time("spectrum", [&] { return second_eigenvalue(g); });
      Json result;
      result["lambda2"] = est.lambda2;
      result["lambda_min"] = est.lambda_min;
      result["spectral_converged"] = est.converged;
      result["max_defect"] = sum.max_defect;
      result["argmax"] = fam.names[sum.argmax];
      result["contraction_holds"] = sum.max_defect <= 1e-9;
      result["members"] = Json::array();
      for (std::size_t i = 0; i < fam.names.size(); ++i) {
        result["members"].push_back({{"name", fam.names[i]}, {"defect", sum.defects[i]}});
      }
      emit_report(mt_report, config, result, timer, out);
      return kExitOk;
    }

    if (*dec) {
      const MultiGraph g = read_edge_list(dc_graph);
      if (!g.is_regular()) throw InputError("decompose needs a regular graph");
      if (o_k->count()) dc_over.k = dc_k;
      if (o_alpha->count()) dc_over.alpha = dc_alpha;
      if (o_beta->count()) dc_over.beta = dc_beta;
      if (o_cprime->count()) dc_over.c_prime = dc_cprime;
      if (o_gamma->count()) dc_over.gamma = dc_gamma;
      if (o_delta->count()) dc_over.delta = dc_delta;
      if (o_exact->count()) dc_over.exact_cut_limit = dc_exact;
      const DecomposeParams params = make_params(dc_epsilon, g.regular_degree(), dc_seed, dc_over);
      const DecomposeResult res = timer.time("decompose", [&] { return decompose(g, params); });
      write_edge_list(res.graph, dc_out);
      Json config;
      config["subcommand"] = "decompose";
      config["graph"] = dc_graph;
      config["out"] = dc_out;
      config["params"] = params_json(params);
      emit_report(dc_report, config, decomposition_json(res.report), timer, out);
      return kExitOk;
    }

    if (*ver) {
      const MultiGraph before = read_edge_list(vf_before);
      const MultiGraph after = read_edge_list(vf_after);
      double gamma = vf_gamma;
      std::string source = "flag";
      if (o_vgamma->count() == 0) {
        if (vf_from.empty()) throw InputError("verify needs --gamma or --gamma-from-report");
        std::ifstream in(vf_from);
        if (!in) throw InputError("cannot open report '" + vf_from + "'");
        Json doc;
        try {
          doc = Json::parse(in);
          gamma = doc.at("result").at("gamma_required").get<double>();
        } catch (const nlohmann::json::exception& e) {
          throw InputError("report '" + vf_from + "' has no numeric result.gamma_required");
        }
        source = "report";
      }
      if (!(gamma > 0.0)) throw InputError("gamma must be positive");
      const VerifyReport rep = timer.time("verify", [&] { return verify_decomposition(before, after, gamma, vf_exact); });
      Json config;
      config["subcommand"] = "verify";
      config["before"] = vf_before;
      config["after"] = vf_after;
      config["gamma"] = gamma;
      config["gamma_source"] = source;
      config["gamma_from_report"] = vf_from;
      config["exact_limit"] = vf_exact;
      emit_report(vf_report, config, verify_json(rep), timer, out);
      return rep.pass ? kExitOk : kExitVerifyFailed;
    }

    if (*cov) {
      const MultiGraph g = read_edge_list(cv_graph);
      const EdgeWeighting w = cv_w.load(g);
      const CoverGraph c = timer.time("build_cover", [&] { return build_cover(g, w); });
      write_edge_list(c.graph, cv_out);
      Json config;
      config["subcommand"] = "cover";
      config["graph"] = cv_graph;
      config["weighting"] = cv_w.json(w);
      config["out"] = cv_out;
      Json result;
      result["vertices"] = c.graph.vertex_count();
      result["edges"] = c.graph.edge_count();
      const auto deg = degree_check(c.graph);
      result["regular"] = deg.valid;
      result["degree"] = deg.degree;
      std::size_t components = 0;
      connected_components(c.graph, &components);
      result["components"] = components;
      emit_report(cv_report, config, result, timer, out);
      return kExitOk;
    }

    if (*cs) {
      const MultiGraph g = read_edge_list(cs_graph);
      const EdgeWeighting w = cs_w.load(g);
      if (!g.is_regular()) throw InputError("cover-stats needs a regular base graph");
      const CoverGraph c = timer.time("build_cover", [&] { return build_cover(g, w); });
      double gamma = cs_gamma;
      std::string source = "flag";
      if (o_cgamma->count() == 0) {
        gamma = timer.time("cheeger", [&] { return cheeger_certificate(g).gamma_lower; });
        source = "cheeger_certificate_of_base";
      }
      Json config;
      config["subcommand"] = "cover-stats";
      config["graph"] = cs_graph;
      config["weighting"] = cs_w.json(w);
      config["length"] = cs_length;
      config["steps"] = cs_steps;
      config["trials"] = cs_trials;
      config["gamma"] = gamma;
      config["gamma_source"] = source;

      Json result;
      const CycleSampleResult cyc =
          timer.time("cycle_sums", [&] { return sample_cycle_sums(g, w, cs_length, cs_trials, cs_w.seed); });
      result["cycle_sums"] = {{"measure", cyc.exhaustive ? "all closed walks" : "closed random walks (rejection)"},
                              {"fraction_nonzero", cyc.fraction_nonzero},
                              {"accepted", cyc.accepted},
                              {"nonzero", cyc.nonzero},
                              {"trials", cyc.trials}};
      const WalkSumDistribution ws =
          timer.time("walk_sums", [&] { return walk_sum_distribution(g, w, cs_steps, cs_trials, cs_w.seed); });
      result["walk_sums"] = {{"counts", ws.counts}, {"trials", ws.trials}, {"tv_to_uniform", ws.tv_to_uniform}};
      const FiberBalance fb = timer.time("fiber_balance", [&] { return fiber_balance(c); });
      result["fiber_balance"] = {{"components", fb.components}, {"max_deviation", fb.max_deviation}};
      if (gamma > 0.0) {
        const PfoldReport pr = pfold_bound_check(c, w, gamma);
        result["pfold"] = {{"cut_set_size", pr.cut_set_size},
                           {"cut_edges", pr.cut_edges},
                           {"cut_normalized", pr.cut_normalized},
                           {"ceiling_normalized", pr.ceiling_normalized},
                           {"within_ceiling", pr.within_ceiling},
                           {"weight_ceiling", pr.weight_ceiling},
                           {"within_weight_ceiling", pr.within_weight_ceiling},
                           {"p_limit", pr.p_limit},
                           {"p_exceeds_bound", pr.p_exceeds_bound},
                           {"not_gamma_expander", pr.not_gamma_expander},
                           {"components", pr.components},
                           {"consistent", pr.consistent}};
      } else {
        result["pfold"] = nullptr;
      }
      emit_report(cs_report, config, result, timer, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sofic::cli
