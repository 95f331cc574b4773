// verify: batch randomized-verification campaigns over the model spaces.
//
// Exit codes: 0 all checks pass, 1 at least one inequality violation,
// 2 usage/config error, 3 solver error or inconclusive-at-cap.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ucw/campaign.hpp"

namespace {

std::string resolve_out_path(const std::string& out) {
  // Environment override applies to the output directory only.
  const char* dir = std::getenv("UCW_OUT_DIR");
  if (!dir || out.empty()) return out;
  const std::filesystem::path p(out);
  if (p.is_absolute()) return out;
  return (std::filesystem::path(dir) / p).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification campaigns for uniformly convex geodesic-space models"};

  std::optional<std::string> suite_s, model_s, trials_s, seed_s, tol_s, out_s, format_s,
      trace_out_s;
  std::string config_path;
  app.add_option("--suite", suite_s,
                 "axioms | cat0 | property_g | lambda_convexity | afp | rates | shadow | prox | "
                 "all");
  app.add_option("--model", model_s,
                 "model spec, e.g. euclidean:n=2,r=1 lp:p=4,n=3,r=1 poincare:r=0.9 tree:demo "
                 "tree:file=PATH");
  app.add_option("--trials", trials_s, "trials per check (default 10000)");
  app.add_option("--seed", seed_s, "64-bit campaign seed (default 42)");
  app.add_option("--tol", tol_s, "tolerance override (default: per-model)");
  app.add_option("--out", out_s, "report path (default: stdout)");
  app.add_option("--format", format_s, "json | csv (default json)");
  app.add_option("--config", config_path, "key=value config file; flags win");
  app.add_option("--trace-out", trace_out_s, "CSV trace export for the first shadow scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::map<std::string, std::string> file_kv;
    if (!config_path.empty()) file_kv = ucw::load_config_file(config_path);
    auto pick = [&](const std::optional<std::string>& flag, const char* key,
                    const std::string& dflt) {
      if (flag) return *flag;
      auto it = file_kv.find(key);
      return it == file_kv.end() ? dflt : it->second;
    };

    ucw::CampaignConfig cfg;
    cfg.suite = ucw::suite_from_string(pick(suite_s, "suite", "all"));
    const std::string model_spec = pick(model_s, "model", "");
    if (!model_spec.empty()) {
      cfg.model = ucw::parse_model_spec(model_spec);
      cfg.model_explicit = true;
    }
    try {
      cfg.trials = std::stoull(pick(trials_s, "trials", "10000"));
      cfg.seed = std::stoull(pick(seed_s, "seed", "42"));
      const std::string tol = pick(tol_s, "tol", "0");
      cfg.tol_override = std::stod(tol);
    } catch (const std::exception&) {
      throw ucw::UsageError("trials/seed/tol must be numeric");
    }
    if (cfg.trials < 1) throw ucw::UsageError("trials must be >= 1");
    cfg.format = pick(format_s, "format", "json");
    if (cfg.format != "json" && cfg.format != "csv")
      throw ucw::UsageError("format must be json or csv");
    cfg.out_path = resolve_out_path(pick(out_s, "out", ""));
    cfg.trace_out = resolve_out_path(pick(trace_out_s, "trace-out", ""));

    const ucw::RunReport report = ucw::run(cfg);
    const std::string text = report.serialize(cfg.format);
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.out_path, std::ios::binary);
      if (!out) throw ucw::UsageError("cannot open output path '" + cfg.out_path + "'");
      out << text;
    }
    const auto& s = report.body["summary"];
    std::cerr << "verify: suite=" << ucw::to_string(cfg.suite) << " seed=" << cfg.seed
              << " pass=" << s["pass"] << " violations=" << s["violations"]
              << " inconclusive=" << s["inconclusive"] << " input_errors=" << s["input_errors"]
              << " exit=" << report.exit_code << "\n";
    return report.exit_code;
  } catch (const ucw::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ucw::SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (residual " << e.residual << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
