#pragma once

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucw/axiom_checks.hpp"
#include "ucw/proximal.hpp"
#include "ucw/shadow_scenarios.hpp"
#include "ucw/version.hpp"

namespace ucw {

enum class Suite { axioms, cat0, property_g, lambda_convexity, afp, rates, shadow, prox, all };

inline const char* to_string(Suite s) {
  switch (s) {
    case Suite::axioms: return "axioms";
    case Suite::cat0: return "cat0";
    case Suite::property_g: return "property_g";
    case Suite::lambda_convexity: return "lambda_convexity";
    case Suite::afp: return "afp";
    case Suite::rates: return "rates";
    case Suite::shadow: return "shadow";
    case Suite::prox: return "prox";
    case Suite::all: return "all";
  }
  return "?";
}

inline Suite suite_from_string(const std::string& s) {
  for (Suite v : {Suite::axioms, Suite::cat0, Suite::property_g, Suite::lambda_convexity,
                  Suite::afp, Suite::rates, Suite::shadow, Suite::prox, Suite::all})
    if (s == to_string(v)) return v;
  throw UsageError("unknown suite '" + s + "'");
}

struct CampaignConfig {
  std::uint64_t seed = 42;
  Suite suite = Suite::all;
  ModelParams model;  // ignored by suite=all (runs the four standard models)
  bool model_explicit = false;
  std::uint64_t trials = 10000;
  double tol_override = 0.0;  // 0: per-model default
  std::string out_path;
  std::string format = "json";
  std::string trace_out;
};

/// The canonical model quartet used by suite=all and the acceptance runs.
inline std::vector<ModelParams> standard_model_params() {
  ModelParams e;
  e.kind = ModelKind::euclidean;
  e.dim = 2;
  e.r_sample = 1.0;
  e.label = "euclidean";
  ModelParams l;
  l.kind = ModelKind::lp;
  l.p = 4.0;
  l.dim = 3;
  l.r_sample = 1.0;
  l.label = "lp";
  ModelParams p;
  p.kind = ModelKind::poincare;
  p.r_sample = 0.9;
  p.label = "poincare";
  ModelParams t = demo_tree_params();
  t.label = "tree";
  return {e, l, p, t};
}

/// Model spec string: kind[:key=value[,key=value...]].
///   euclidean:n=2,r=1   lp:p=4,n=3,r=1   poincare:r=0.9
///   tree:demo           tree:file=PATH (edge list: vertex vertex length)
inline ModelParams parse_model_spec(const std::string& spec) {
  ModelParams params;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::istringstream rest(spec.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        kv[item] = "";
      else
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto num = [&](const std::string& key, double dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    try {
      return std::stod(it->second);
    } catch (const std::exception&) {
      throw UsageError("model spec: bad numeric value for '" + key + "'");
    }
  };
  if (kind == "euclidean") {
    params.kind = ModelKind::euclidean;
    params.dim = static_cast<std::size_t>(num("n", 2));
    params.r_sample = num("r", 1.0);
  } else if (kind == "lp") {
    params.kind = ModelKind::lp;
    params.p = num("p", 4.0);
    params.dim = static_cast<std::size_t>(num("n", 3));
    params.r_sample = num("r", 1.0);
    if (params.p < 2.0)
      throw UsageError("model spec: lp requires exponent p >= 2, got p = " +
                       std::to_string(params.p));
  } else if (kind == "poincare") {
    params.kind = ModelKind::poincare;
    params.r_sample = num("r", 0.9);
  } else if (kind == "tree") {
    if (kv.count("demo") || kv.empty()) {
      params = demo_tree_params();
    } else if (kv.count("file")) {
      std::ifstream in(kv["file"]);
      if (!in) throw UsageError("model spec: cannot open tree file '" + kv["file"] + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      const auto [nv, edges] = parse_tree_edge_list(buf.str());
      params.kind = ModelKind::tree;
      params.tree_vertices = nv;
      params.tree_edges = edges;
    } else {
      throw UsageError("model spec: tree needs 'demo' or 'file=PATH'");
    }
  } else {
    throw UsageError("model spec: unknown kind '" + kind +
                     "' (euclidean | lp | poincare | tree)");
  }
  params.label = kind;
  return params;
}

inline std::string model_spec_string(const ModelParams& p) {
  char buf[96];
  switch (p.kind) {
    case ModelKind::euclidean:
      std::snprintf(buf, sizeof(buf), "euclidean:n=%zu,r=%.17g", p.dim, p.r_sample);
      return buf;
    case ModelKind::lp:
      std::snprintf(buf, sizeof(buf), "lp:p=%.17g,n=%zu,r=%.17g", p.p, p.dim, p.r_sample);
      return buf;
    case ModelKind::poincare:
      std::snprintf(buf, sizeof(buf), "poincare:r=%.17g", p.r_sample);
      return buf;
    case ModelKind::tree:
      std::snprintf(buf, sizeof(buf), "tree:vertices=%d,edges=%zu", p.tree_vertices,
                    p.tree_edges.size());
      return buf;
  }
  return "?";
}

/// key=value lines, '#' comments; used by the CLI with flags taking
/// precedence over file entries.
inline std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config file: expected key=value on line " + std::to_string(lineno));
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct RunReport {
  nlohmann::ordered_json body;
  int exit_code = 0;

  std::string serialize(const std::string& format) const {
    if (format == "json") return body.dump(2) + "\n";
    if (format == "csv") {
      std::string out = "suite,model,check,status,trials,skipped,violations,max_gap,tolerance,"
                        "detail\n";
      for (const auto& c : body.at("checks")) {
        if (c.value("status", "") == "pass") continue;
        char line[512];
        std::snprintf(line, sizeof(line), "%s,%s,%s,%s,%llu,%llu,%llu,%.17g,%.17g,%s\n",
                      c.value("suite", "").c_str(), c.value("model", "").c_str(),
                      c.value("check", "").c_str(), c.value("status", "").c_str(),
                      static_cast<unsigned long long>(c.value("trials", 0ULL)),
                      static_cast<unsigned long long>(c.value("skipped", 0ULL)),
                      static_cast<unsigned long long>(c.value("violations", 0ULL)),
                      c.value("max_gap", 0.0), c.value("tolerance", 0.0),
                      c.value("detail", "").c_str());
        out += line;
      }
      return out;
    }
    throw UsageError("unknown report format '" + format + "' (json | csv)");
  }
};

namespace campaign_detail {

struct Tally {
  std::uint64_t pass = 0;
  std::uint64_t violation = 0;
  std::uint64_t inconclusive = 0;
  std::uint64_t input_error = 0;
};

inline void append_axiom_report(nlohmann::ordered_json& checks, Tally& tally,
                                const std::string& suite, const std::string& model,
                                const AxiomReport& rep) {
  nlohmann::ordered_json c;
  c["suite"] = suite;
  c["model"] = model;
  c["check"] = rep.id;
  c["status"] = rep.pass() ? "pass" : "violation";
  c["trials"] = rep.trials;
  c["skipped"] = rep.skipped;
  c["violations"] = rep.violation_count;
  c["max_gap"] = rep.max_gap;
  c["max_abs_gap"] = rep.max_abs_gap;
  c["tolerance"] = rep.tolerance;
  if (!rep.violations.empty()) {
    nlohmann::ordered_json details = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) {
      nlohmann::ordered_json d;
      d["inputs"] = v.inputs;
      d["lhs"] = v.lhs;
      d["rhs"] = v.rhs;
      d["gap"] = v.gap;
      details.push_back(std::move(d));
    }
    c["details"] = std::move(details);
  }
  rep.pass() ? ++tally.pass : ++tally.violation;
  checks.push_back(std::move(c));
}

inline void append_meta_report(nlohmann::ordered_json& checks, Tally& tally,
                               const std::string& suite, const std::string& model,
                               const std::string& check, const MetastabilityReport& rep) {
  nlohmann::ordered_json c;
  c["suite"] = suite;
  c["model"] = model;
  c["check"] = check;
  c["status"] = to_string(rep.status);
  c["eps"] = rep.eps;
  c["g"] = rep.g_name;
  c["sequence"] = rep.seq_descriptor;
  c["theoretical_bound"] = rep.theoretical_bound;
  c["bound_capped"] = rep.bound_capped;
  c["found"] = rep.found;
  c["found_N"] = rep.found_N;
  c["window_end"] = rep.window_end;
  c["max_oscillation"] = rep.max_oscillation;
  if (!rep.message.empty()) c["detail"] = rep.message;
  switch (rep.status) {
    case MetaStatus::pass: ++tally.pass; break;
    case MetaStatus::violation: ++tally.violation; break;
    case MetaStatus::inconclusive_at_cap: ++tally.inconclusive; break;
    case MetaStatus::input_error: ++tally.input_error; break;
  }
  checks.push_back(std::move(c));
}

inline void append_afp_campaign(nlohmann::ordered_json& checks, Tally& tally,
                                const std::string& model, const std::string& check,
                                const AfpCampaign& camp) {
  nlohmann::ordered_json c;
  c["suite"] = "afp";
  c["model"] = model;
  c["check"] = check;
  const bool healthy = camp.admissible_ratio() >= 0.5;
  c["status"] = camp.violations > 0 ? "violation" : (healthy ? "pass" : "inconclusive");
  c["instances"] = camp.instances;
  c["admissible"] = camp.admissible;
  c["skipped"] = camp.instances - camp.admissible;
  c["violations"] = camp.violations;
  c["admissible_ratio"] = camp.admissible_ratio();
  if (camp.violations > 0)
    ++tally.violation;
  else if (!healthy)
    ++tally.inconclusive;
  else
    ++tally.pass;
  checks.push_back(std::move(c));
}

inline double model_tol(const CampaignConfig& cfg, const ModelSpace& m) {
  return cfg.tol_override > 0.0 ? cfg.tol_override : m.tol();
}

inline void run_axioms(const CampaignConfig& cfg, const ModelSpace& m, std::uint64_t trials,
                       nlohmann::ordered_json& checks, Tally& tally) {
  const double tol = model_tol(cfg, m);
  for (const auto& rep : check_axioms(*m.space, cfg.seed, trials, tol))
    append_axiom_report(checks, tally, "axioms", m.space->name(), rep);
  append_axiom_report(checks, tally, "axioms", m.space->name(),
                      check_uc_certificate(m, cfg.seed, trials, tol));
}

inline void run_cat0(const CampaignConfig& cfg, const ModelSpace& m, std::uint64_t trials,
                     nlohmann::ordered_json& checks, Tally& tally) {
  append_axiom_report(checks, tally, "cat0", m.space->name(),
                      check_cat0(m, cfg.seed, trials, model_tol(cfg, m)));
}

inline void run_property_g(const CampaignConfig& cfg, const ModelSpace& m, std::uint64_t trials,
                           nlohmann::ordered_json& checks, Tally& tally) {
  const double tol = model_tol(cfg, m);
  append_axiom_report(checks, tally, "property_g", m.space->name(),
                      check_property_g(m, make_psi_from_eta(m.eta), cfg.seed, trials, tol));
  if (m.is_cat0())
    append_axiom_report(checks, tally, "property_g", m.space->name(),
                        check_property_g(m, make_psi_cat0_direct(), cfg.seed, trials, tol));
}

inline void run_lambda_convexity(const CampaignConfig& cfg, const ModelSpace& m,
                                 std::uint64_t trials, nlohmann::ordered_json& checks,
                                 Tally& tally) {
  for (const auto& rep : check_lambda_convexity(m, cfg.seed, trials, model_tol(cfg, m)))
    append_axiom_report(checks, tally, "lambda_convexity", m.space->name(), rep);
}

inline void run_afp(const CampaignConfig& cfg, const ModelSpace& m, std::uint64_t instances,
                    nlohmann::ordered_json& checks, Tally& tally) {
  const double tol = model_tol(cfg, m);
  append_afp_campaign(checks, tally, m.space->name(), "segment_transfer",
                      run_afp_segment_campaign(m, cfg.seed, instances, tol));
  append_afp_campaign(checks, tally, m.space->name(), "asymptotic_power",
                      run_afp_asymptotic_campaign(m, cfg.seed, instances, AfpMode::power_n, tol));
  append_afp_campaign(
      checks, tally, m.space->name(), "asymptotic_single_step",
      run_afp_asymptotic_campaign(m, cfg.seed, instances, AfpMode::single_step, tol));
  for (const auto& T : nonexpansive_library(m))
    append_axiom_report(checks, tally, "afp", m.space->name(),
                        check_fix_convexity(m, T, cfg.seed, std::max<std::uint64_t>(64, instances / 8), tol));
}

inline void run_rates(const CampaignConfig& cfg, const std::vector<double>& eps_grid,
                      nlohmann::ordered_json& checks, Tally& tally) {
  const auto g_family = standard_g_family(cfg.seed);

  std::vector<RealSeq> mono;
  mono.emplace_back("2^-n", 1.0,
                    [](Index n) { return std::pow(2.0, -static_cast<double>(n)); });
  mono.emplace_back("const", 1.0, [](Index) { return 0.375; });
  mono.emplace_back("1/(n+1)", 1.0,
                    [](Index n) { return 1.0 / static_cast<double>(n + 1); });
  mono.emplace_back("step25", 1.0, [](Index n) { return n < 25 ? 1.0 : 0.0; });
  for (const auto& seq : mono)
    for (const auto& g : g_family)
      for (double eps : eps_grid)
        append_meta_report(checks, tally, "rates", "-", "mono[" + seq.descriptor() + "]",
                          mono_metastability(seq, eps, g));

  std::vector<RealSeq> quasi;
  quasi.emplace_back("2^-n+tail", 2.5, [](Index n) {
    return std::pow(2.0, -static_cast<double>(n)) +
           (4.0 / 3.0) * std::pow(4.0, -static_cast<double>(n));
  });
  quasi.back().set_error_seq(
      [](Index n) { return std::pow(4.0, -static_cast<double>(n)); },
      [](double eps) { return detail::tail_index(0.5 * std::log2(2.0 / eps)); },
      4.0 / 3.0);
  const std::uint64_t walk_seed = cfg.seed;
  quasi.emplace_back("delta-walk", 1.0, [walk_seed](Index n) {
    double a = 0.7;
    for (Index i = 0; i < n; ++i) {
      const double s = Rng::derive(walk_seed, 31, i).uniform(-1.0, 1.0);
      a = std::clamp(a + 0.5 * std::pow(4.0, -static_cast<double>(i)) * s, 0.0, 1.0);
    }
    return a;
  });
  quasi.back().set_error_seq(
      [](Index n) { return 0.5 * std::pow(4.0, -static_cast<double>(n)); },
      [](double eps) {
        return detail::tail_index(0.5 * std::log2((4.0 / 3.0) * 0.5 / eps) + 1.0);
      },
      2.0 / 3.0);
  for (const auto& seq : quasi)
    for (const auto& g : g_family)
      for (double eps : eps_grid)
        append_meta_report(checks, tally, "rates", "-", "summable[" + seq.descriptor() + "]",
                          summable_metastability(seq, eps, g));
}

inline void run_shadow(const CampaignConfig& cfg, const std::vector<ShadowScenario>& scenarios,
                       const std::vector<double>& eps_grid, bool light,
                       nlohmann::ordered_json& checks, Tally& tally) {
  std::vector<CounterFn> gs;
  gs.push_back({"const1", [](Index) { return Index{1}; }});
  if (!light) gs.push_back({"const10", [](Index) { return Index{10}; }});
  gs.push_back({"linear", [](Index n) { return n; }});
  if (!light) {
    const auto seed = cfg.seed;
    gs.push_back({"random100", [seed](Index n) { return Rng::derive(seed, 901, n).below(101); }});
  }
  for (const auto& s : scenarios) {
    for (const auto& g : gs)
      for (double eps : eps_grid) {
        MetastabilityReport rep;
        if (s.quasi)
          rep = quasi_fejer_shadow_metastability(s.model, s.set, *s.trace, s.b, s.B, eps, g,
                                                 cfg.seed);
        else
          rep = fejer_shadow_metastability(s.model, s.set, *s.trace, s.b, eps, g, cfg.seed);
        append_meta_report(checks, tally, "shadow", s.model.space->name(), s.name, rep);
      }
  }
}

inline void run_prox(const CampaignConfig& cfg, const ModelSpace& m, std::uint64_t instances,
                     nlohmann::ordered_json& checks, Tally& tally) {
  const auto& space = *m.space;
  nlohmann::ordered_json c;
  c["suite"] = "prox";
  c["model"] = space.name();
  c["check"] = "closed_form_vs_generic";
  double worst = 0.0;
  std::uint64_t bad = 0;
  const bool vector_model =
      m.params.kind == ModelKind::euclidean || m.params.kind == ModelKind::lp ||
      m.params.kind == ModelKind::poincare;
  const double width = m.params.kind == ModelKind::poincare ? 1.0 : 3.0 * m.params.r_sample;
  for (std::uint64_t i = 0; i < instances && vector_model; ++i) {
    Rng rng = Rng::derive(cfg.seed, 1501, i);
    const Point a = space.sample(rng), p = space.sample(rng);
    const double lam = rng.uniform(0.2, 2.0);
    auto generic = ConvexFunctional::sum(
        ConvexFunctional::scale(0.5, ConvexFunctional::half_sq_dist_to(p)),
        ConvexFunctional::scale(0.5, ConvexFunctional::half_sq_dist_to(p)));
    ProxProblem prob{std::move(generic), lam, a, default_search_region(m, width)};
    const Point got = prox(m, prob, 1e-6);
    const Point want = space.combine(a, p, lam / (1.0 + lam));
    const double err = space.dist(got, want);
    worst = std::max(worst, err);
    if (err > 1e-6) ++bad;
  }
  c["instances"] = vector_model ? instances : 0;
  c["violations"] = bad;
  c["max_gap"] = worst;
  c["tolerance"] = 1e-6;
  c["status"] = bad ? "violation" : "pass";
  bad ? ++tally.violation : ++tally.pass;
  checks.push_back(std::move(c));

  // prox of an indicator equals the metric projection
  nlohmann::ordered_json c2;
  c2["suite"] = "prox";
  c2["model"] = space.name();
  c2["check"] = "indicator_equals_projection";
  Rng crng = Rng::derive(cfg.seed, 1502, 0);
  const Point center = space.sample(crng);
  const double radius = m.params.kind == ModelKind::poincare ? 0.5 : 0.5 * m.params.r_sample;
  const auto ball = ball_set(m.space, center, radius);
  double worst2 = 0.0;
  std::uint64_t bad2 = 0;
  for (std::uint64_t i = 0; i < instances; ++i) {
    Rng rng = Rng::derive(cfg.seed, 1503, i);
    const Point a = space.sample(rng);
    ProxProblem prob{ConvexFunctional::indicator_of(ball), rng.uniform(0.2, 2.0), a,
                     default_search_region(m, width)};
    const double err = space.dist(prox(m, prob, 1e-6), project(space, ball, a));
    worst2 = std::max(worst2, err);
    if (err > 1e-6) ++bad2;
  }
  c2["instances"] = instances;
  c2["violations"] = bad2;
  c2["max_gap"] = worst2;
  c2["tolerance"] = 1e-6;
  c2["status"] = bad2 ? "violation" : "pass";
  bad2 ? ++tally.violation : ++tally.pass;
  checks.push_back(std::move(c2));
}

}  // namespace campaign_detail

/// Executes the configured suites. Identical (config, seed) produce
/// byte-identical report bodies except for the wall_clock_ms field.
inline RunReport run(const CampaignConfig& cfg) {
  using namespace campaign_detail;
  const auto t0 = std::chrono::steady_clock::now();

  RunReport report;
  nlohmann::ordered_json& body = report.body;
  body["artifact_version"] = kVersion;
  body["config"] = {
      {"seed", cfg.seed},
      {"suite", to_string(cfg.suite)},
      {"model", cfg.model_explicit ? model_spec_string(cfg.model) : "standard-quartet"},
      {"trials", cfg.trials},
      {"tol_override", cfg.tol_override},
      {"format", cfg.format},
  };
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  Tally tally;

  std::vector<ModelParams> models;
  if (cfg.model_explicit)
    models.push_back(cfg.model);
  else
    models = standard_model_params();

  const bool all = cfg.suite == Suite::all;
  const std::uint64_t t_axioms = all ? 2500 : cfg.trials;
  const std::uint64_t t_propg = all ? 4000 : cfg.trials;
  const std::uint64_t t_afp = all ? 600 : cfg.trials;
  const std::uint64_t t_prox = all ? 8 : std::max<std::uint64_t>(8, cfg.trials / 100);

  auto want = [&](Suite s) { return all || cfg.suite == s; };

  for (const auto& params : models) {
    const ModelSpace m = instantiate_model(params);
    if (want(Suite::axioms)) run_axioms(cfg, m, t_axioms, checks, tally);
    if (want(Suite::cat0) && (m.is_cat0() || cfg.suite == Suite::cat0))
      run_cat0(cfg, m, t_axioms, checks, tally);
    if (want(Suite::property_g)) run_property_g(cfg, m, t_propg, checks, tally);
    if (want(Suite::lambda_convexity)) run_lambda_convexity(cfg, m, t_propg, checks, tally);
    if (want(Suite::afp)) run_afp(cfg, m, t_afp, checks, tally);
    if (want(Suite::prox)) run_prox(cfg, m, t_prox, checks, tally);
  }
  if (want(Suite::rates)) {
    const std::vector<double> eps_grid = all ? std::vector<double>{1e-1, 1e-2}
                                             : std::vector<double>{1e-1, 1e-2, 1e-3};
    run_rates(cfg, eps_grid, checks, tally);
  }
  if (want(Suite::shadow)) {
    auto scenarios = standard_shadow_scenarios(cfg.seed);
    if (cfg.model_explicit) {
      std::vector<ShadowScenario> filtered;
      for (auto& s : scenarios)
        if (s.model.params.kind == cfg.model.kind) filtered.push_back(std::move(s));
      scenarios = std::move(filtered);
    }
    const std::vector<double> eps_grid =
        all ? std::vector<double>{1e-1} : std::vector<double>{1e-1, 1e-2};
    run_shadow(cfg, scenarios, eps_grid, all, checks, tally);
    if (!cfg.trace_out.empty() && !scenarios.empty()) {
      std::ofstream out(cfg.trace_out);
      if (!out) throw UsageError("cannot open trace output '" + cfg.trace_out + "'");
      export_trace_csv(out, scenarios[0].model, scenarios[0].set, *scenarios[0].trace, 256);
    }
  }

  // Per-suite breakdown in order of first appearance.
  nlohmann::ordered_json suite_summary;
  for (const auto& c : checks) {
    const std::string s = c.value("suite", "?");
    if (!suite_summary.contains(s))
      suite_summary[s] = {{"pass", 0}, {"violations", 0}, {"inconclusive", 0},
                          {"input_errors", 0}};
    const std::string status = c.value("status", "");
    const char* key = status == "pass"              ? "pass"
                      : status == "violation"       ? "violations"
                      : status == "input_error"     ? "input_errors"
                                                    : "inconclusive";
    suite_summary[s][key] = suite_summary[s][key].get<std::uint64_t>() + 1;
  }
  body["checks"] = std::move(checks);
  body["suite_summary"] = std::move(suite_summary);
  body["summary"] = {
      {"pass", tally.pass},
      {"violations", tally.violation},
      {"inconclusive", tally.inconclusive},
      {"input_errors", tally.input_error},
  };
  const auto t1 = std::chrono::steady_clock::now();
  body["wall_clock_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  if (tally.violation > 0)
    report.exit_code = 1;  // a falsified inequality instance is never downgraded
  else if (tally.input_error > 0)
    report.exit_code = 2;  // campaign constructed inputs that fail their own preconditions
  else if (tally.inconclusive > 0)
    report.exit_code = 3;
  else
    report.exit_code = 0;
  return report;
}

}  // namespace ucw
