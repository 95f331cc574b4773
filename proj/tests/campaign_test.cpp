#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "ucw/campaign.hpp"

using namespace ucw;

TEST(ModelSpec, ParsesAllKinds) {
  const auto e = parse_model_spec("euclidean:n=5,r=2.5");
  EXPECT_EQ(e.kind, ModelKind::euclidean);
  EXPECT_EQ(e.dim, 5u);
  EXPECT_DOUBLE_EQ(e.r_sample, 2.5);

  const auto l = parse_model_spec("lp:p=4,n=3,r=1");
  EXPECT_EQ(l.kind, ModelKind::lp);
  EXPECT_DOUBLE_EQ(l.p, 4.0);

  const auto p = parse_model_spec("poincare:r=0.8");
  EXPECT_EQ(p.kind, ModelKind::poincare);

  const auto t = parse_model_spec("tree:demo");
  EXPECT_EQ(t.kind, ModelKind::tree);
  EXPECT_EQ(t.tree_vertices, 4);

  EXPECT_THROW(parse_model_spec("lp:p=1.5"), UsageError);
  EXPECT_THROW(parse_model_spec("banach:n=2"), UsageError);
  EXPECT_THROW(parse_model_spec("euclidean:n=abc"), UsageError);
  EXPECT_THROW(parse_model_spec("tree:file=/no/such/file"), UsageError);
}

TEST(ModelSpec, TreeFileRoundTrip) {
  const char* path = "/tmp/ucw_tree_test.txt";
  {
    std::ofstream out(path);
    out << "# edges\nA B 1.0\nB C 2.0\nB D 1.5\n";
  }
  const auto t = parse_model_spec(std::string("tree:file=") + path);
  EXPECT_EQ(t.tree_vertices, 4);
  EXPECT_EQ(t.tree_edges.size(), 3u);
  std::remove(path);
}

TEST(SuiteNames, RoundTrip) {
  for (Suite s : {Suite::axioms, Suite::cat0, Suite::property_g, Suite::lambda_convexity,
                  Suite::afp, Suite::rates, Suite::shadow, Suite::prox, Suite::all})
    EXPECT_EQ(suite_from_string(to_string(s)), s);
  EXPECT_THROW(suite_from_string("nope"), UsageError);
}

TEST(Run, AxiomSuiteCleanAndDeterministic) {
  CampaignConfig cfg;
  cfg.suite = Suite::axioms;
  cfg.model = parse_model_spec("euclidean:n=2,r=1");
  cfg.model_explicit = true;
  cfg.trials = 1500;
  cfg.seed = 99;
  const auto r1 = run(cfg);
  const auto r2 = run(cfg);
  EXPECT_EQ(r1.exit_code, 0);
  auto strip = [](nlohmann::ordered_json j) {
    j.erase("wall_clock_ms");
    return j.dump(2);
  };
  EXPECT_EQ(strip(r1.body), strip(r2.body));
  // Different seed changes sampled inputs but not the verdicts.
  CampaignConfig cfg2 = cfg;
  cfg2.seed = 100;
  const auto r3 = run(cfg2);
  EXPECT_EQ(r3.exit_code, 0);
}

TEST(Run, ReducedAllSuiteIsCleanOnQuartet) {
  CampaignConfig cfg;
  cfg.suite = Suite::all;
  cfg.seed = 7;
  const auto rep = run(cfg);
  EXPECT_EQ(rep.exit_code, 0) << rep.body["summary"].dump();
  EXPECT_GT(rep.body["summary"]["pass"].get<std::uint64_t>(), 100u);
  EXPECT_EQ(rep.body["summary"]["violations"].get<std::uint64_t>(), 0u);
}

TEST(Run, ShadowSuiteWritesTraceCsv) {
  CampaignConfig cfg;
  cfg.suite = Suite::shadow;
  cfg.model = parse_model_spec("tree:demo");
  cfg.model_explicit = true;
  cfg.seed = 5;
  cfg.trace_out = "/tmp/ucw_trace_test.csv";
  const auto rep = run(cfg);
  EXPECT_EQ(rep.exit_code, 0);
  std::ifstream in(cfg.trace_out);
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "n,edge,offset,dist_to_shadow,delta");
  std::remove(cfg.trace_out.c_str());
}

TEST(ConfigFile, ParsesKeyValueLines) {
  const char* path = "/tmp/ucw_config_test.cfg";
  {
    std::ofstream out(path);
    out << "# defaults\nsuite = axioms\nmodel= poincare:r=0.8\nseed =17\ntrials=500\n";
  }
  const auto kv = load_config_file(path);
  EXPECT_EQ(kv.at("suite"), "axioms");
  EXPECT_EQ(kv.at("model"), "poincare:r=0.8");
  EXPECT_EQ(kv.at("seed"), "17");
  EXPECT_EQ(kv.at("trials"), "500");
  std::remove(path);
  {
    std::ofstream out(path);
    out << "suite axioms\n";
  }
  EXPECT_THROW(load_config_file(path), UsageError);
  std::remove(path);
  EXPECT_THROW(load_config_file("/no/such/config"), UsageError);
}

TEST(Report, CsvListsOnlyNonPassRows) {
  RunReport rep;
  rep.body["checks"] = nlohmann::ordered_json::array();
  nlohmann::ordered_json ok;
  ok["suite"] = "axioms";
  ok["model"] = "euclidean";
  ok["check"] = "W1";
  ok["status"] = "pass";
  nlohmann::ordered_json bad;
  bad["suite"] = "axioms";
  bad["model"] = "euclidean";
  bad["check"] = "W2";
  bad["status"] = "violation";
  bad["trials"] = 10ULL;
  bad["violations"] = 1ULL;
  bad["max_gap"] = 0.5;
  bad["tolerance"] = 1e-9;
  rep.body["checks"].push_back(ok);
  rep.body["checks"].push_back(bad);
  const auto csv = rep.serialize("csv");
  EXPECT_EQ(csv.find("W1"), std::string::npos);
  EXPECT_NE(csv.find("W2,violation"), std::string::npos);
  EXPECT_THROW(rep.serialize("yaml"), UsageError);
}
