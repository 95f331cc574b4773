#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "ucw/euclidean.hpp"
#include "ucw/lp_space.hpp"
#include "ucw/metric_tree.hpp"
#include "ucw/moduli.hpp"
#include "ucw/poincare_disk.hpp"

namespace ucw {

struct ModelParams {
  ModelKind kind = ModelKind::euclidean;
  std::size_t dim = 2;        // euclidean, lp
  double p = 2.0;             // lp
  double r_sample = 1.0;      // bounding radius (poincare: Euclidean chart radius < 1)
  int tree_vertices = 0;      // tree
  std::vector<TreeEdge> tree_edges;
  std::string label;
};

/// A concrete space bundled with its modulus of uniform convexity.
struct ModelSpace {
  ModelParams params;
  SpacePtr space;
  UCModulus eta;

  double tol() const { return space->tol(); }
  bool is_cat0() const { return params.kind != ModelKind::lp || params.p == 2.0; }
};

inline ModelSpace instantiate_model(const ModelParams& params) {
  ModelSpace m;
  m.params = params;
  switch (params.kind) {
    case ModelKind::euclidean: {
      auto name = params.label.empty() ? "euclidean" : params.label;
      m.space = std::make_shared<EuclideanSpace>(params.dim, params.r_sample, name);
      m.eta = cat0_modulus();
      break;
    }
    case ModelKind::lp: {
      auto name = params.label.empty() ? "lp" : params.label;
      m.space = std::make_shared<LpSpace>(params.p, params.dim, params.r_sample, name);
      m.eta = clarkson_modulus(params.p);
      break;
    }
    case ModelKind::poincare: {
      auto name = params.label.empty() ? "poincare" : params.label;
      m.space = std::make_shared<PoincareDisk>(params.r_sample, name);
      m.eta = cat0_modulus();
      break;
    }
    case ModelKind::tree: {
      auto name = params.label.empty() ? "tree" : params.label;
      m.space = std::make_shared<MetricTree>(params.tree_vertices, params.tree_edges, name);
      m.eta = cat0_modulus();
      break;
    }
  }
  return m;
}

/// Parses a tree description: one `vertex vertex length` triple per line.
/// Vertex names are arbitrary tokens and are numbered in order of first
/// appearance; blank lines and lines starting with '#' are skipped.
inline std::pair<int, std::vector<TreeEdge>> parse_tree_edge_list(const std::string& text) {
  std::map<std::string, int> ids;
  std::vector<TreeEdge> edges;
  std::istringstream in(text);
  std::string line;
  auto id_of = [&](const std::string& tok) {
    auto [it, inserted] = ids.emplace(tok, static_cast<int>(ids.size()));
    return it->second;
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b;
    double len = 0.0;
    if (!(ls >> a >> b >> len))
      throw UsageError("tree edge list: malformed line " + std::to_string(lineno) + ": " + line);
    edges.push_back({id_of(a), id_of(b), len});
  }
  return {static_cast<int>(ids.size()), std::move(edges)};
}

/// The three-edge demo tree used by the built-in campaigns:
/// a star A-B (1), B-C (2), B-D (1.5).
inline ModelParams demo_tree_params() {
  ModelParams p;
  p.kind = ModelKind::tree;
  p.tree_vertices = 4;
  p.tree_edges = {{0, 1, 1.0}, {1, 2, 2.0}, {1, 3, 1.5}};
  p.r_sample = 1.0;
  return p;
}

}  // namespace ucw
