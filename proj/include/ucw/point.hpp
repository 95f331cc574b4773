#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace ucw {

enum class ModelKind { euclidean, lp, poincare, tree };

inline const char* to_string(ModelKind k) {
  switch (k) {
    case ModelKind::euclidean: return "euclidean";
    case ModelKind::lp: return "lp";
    case ModelKind::poincare: return "poincare";
    case ModelKind::tree: return "tree";
  }
  return "?";
}

/// A point of one of the concrete model spaces. Vector models use `coords`
/// (poincare is always 2-dimensional with coords inside the open unit disk);
/// tree points are (edge index, offset from the edge's first endpoint).
struct Point {
  ModelKind kind{ModelKind::euclidean};
  std::vector<double> coords;
  int edge{-1};
  double offset{0.0};
};

inline Point vector_point(ModelKind kind, std::vector<double> coords) {
  Point p;
  p.kind = kind;
  p.coords = std::move(coords);
  return p;
}

inline std::string format_point(const Point& p) {
  char buf[64];
  std::string s = "(";
  if (p.kind == ModelKind::tree) {
    std::snprintf(buf, sizeof(buf), "e%d:%.17g", p.edge, p.offset);
    s += buf;
  } else {
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "", p.coords[i]);
      s += buf;
    }
  }
  return s + ")";
}

}  // namespace ucw
