#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ucw/geodesic_space.hpp"

namespace ucw {

struct TreeEdge {
  int u = 0;
  int v = 0;
  double length = 1.0;
};

/// A finite metric tree with the path metric. Points live on edges as
/// (edge index, offset from the edge's first endpoint). Vertex points are
/// canonicalized to offset 0 / full length on a designated incident edge so
/// every geometric point has exactly one representation.
class MetricTree final : public GeodesicSpace {
 public:
  MetricTree(int n_vertices, std::vector<TreeEdge> edges, std::string name = "tree")
      : nv_(n_vertices), edges_(std::move(edges)), name_(std::move(name)) {
    if (nv_ < 1) throw UsageError("tree: need at least one vertex");
    if (edges_.size() + 1 != static_cast<std::size_t>(nv_))
      throw UsageError("tree: edge count must be vertex count - 1 (cycle or disconnection)");
    adj_.assign(nv_, {});
    total_length_ = 0.0;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& ed = edges_[e];
      if (ed.u < 0 || ed.u >= nv_ || ed.v < 0 || ed.v >= nv_ || ed.u == ed.v)
        throw UsageError("tree: bad edge endpoints");
      if (!(ed.length > 0.0)) throw UsageError("tree: edge lengths must be positive");
      adj_[ed.u].push_back({ed.v, static_cast<int>(e)});
      adj_[ed.v].push_back({ed.u, static_cast<int>(e)});
      total_length_ += ed.length;
    }
    build_rooted_structure();
    canon_edge_.assign(nv_, -1);
    for (int w = 0; w < nv_; ++w) {
      int best = -1;
      for (const auto& [nb, e] : adj_[w]) best = (best < 0) ? e : std::min(best, e);
      canon_edge_[w] = best;  // -1 only for a single-vertex tree, which has no edges
    }
  }

  ModelKind kind() const override { return ModelKind::tree; }
  const std::string& name() const override { return name_; }
  double tol() const override { return 1e-9; }
  int vertex_count() const { return nv_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  double total_length() const { return total_length_; }

  Point make_point(int edge, double offset) const {
    if (nv_ == 1) {
      Point p;
      p.kind = ModelKind::tree;
      p.edge = -1;
      p.offset = 0.0;
      return p;
    }
    if (edge < 0 || edge >= static_cast<int>(edges_.size()))
      throw UsageError("tree: edge index out of range");
    const double len = edges_[edge].length;
    if (offset < -kSnap || offset > len + kSnap)
      throw UsageError("tree: offset outside [0, edge length]");
    offset = std::clamp(offset, 0.0, len);
    Point p;
    p.kind = ModelKind::tree;
    if (offset <= kSnap) return vertex_point(edges_[edge].u);
    if (offset >= len - kSnap) return vertex_point(edges_[edge].v);
    p.edge = edge;
    p.offset = offset;
    return p;
  }

  Point vertex_point(int w) const {
    if (w < 0 || w >= nv_) throw UsageError("tree: vertex index out of range");
    Point p;
    p.kind = ModelKind::tree;
    if (nv_ == 1) {
      p.edge = -1;
      p.offset = 0.0;
      return p;
    }
    const int e = canon_edge_[w];
    p.edge = e;
    p.offset = (edges_[e].u == w) ? 0.0 : edges_[e].length;
    return p;
  }

  double dist(const Point& x, const Point& y) const override {
    require_member(x);
    require_member(y);
    if (nv_ == 1) return 0.0;
    if (x.edge == y.edge) return std::abs(x.offset - y.offset);
    double best = std::numeric_limits<double>::infinity();
    for (int ax = 0; ax < 2; ++ax)
      for (int by = 0; by < 2; ++by) {
        const int a = endpoint(x.edge, ax);
        const int b = endpoint(y.edge, by);
        best = std::min(best, offset_cost(x, ax) + vertex_dist(a, b) + offset_cost(y, by));
      }
    return best;
  }

  Point sample(Rng& rng) const override {
    if (nv_ == 1) return vertex_point(0);
    double t = rng.next_unit() * total_length_;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (t <= edges_[e].length || e + 1 == edges_.size())
        return make_point(static_cast<int>(e), std::min(t, edges_[e].length));
      t -= edges_[e].length;
    }
    return vertex_point(0);
  }

  double vertex_dist(int a, int b) const {
    const int l = lca(a, b);
    return dist_root_[a] + dist_root_[b] - 2.0 * dist_root_[l];
  }

  /// True when p lies on the induced subtree of `in_set` (a connected vertex
  /// predicate over full edges).
  bool on_subtree(const Point& p, const std::vector<bool>& in_set) const {
    if (nv_ == 1) return in_set[0];
    const auto [is_vertex, w] = vertex_of(p);
    if (is_vertex) return in_set[w];
    return in_set[edges_[p.edge].u] && in_set[edges_[p.edge].v];
  }

  /// Metric projection of p onto the induced subtree of `in_set`. The nearest
  /// point of a subtree not containing p is always one of its vertices.
  Point project_to_subtree(const Point& p, const std::vector<bool>& in_set) const {
    if (on_subtree(p, in_set)) return p;
    double best = std::numeric_limits<double>::infinity();
    int gate = -1;
    for (int w = 0; w < nv_; ++w) {
      if (!in_set[w]) continue;
      const double d = dist(p, vertex_point(w));
      if (d < best) {
        best = d;
        gate = w;
      }
    }
    if (gate < 0) throw UsageError("tree: projection onto empty subtree");
    return vertex_point(gate);
  }

  /// (is_vertex, vertex id) for a canonicalized point.
  std::pair<bool, int> vertex_of(const Point& p) const {
    if (nv_ == 1) return {true, 0};
    if (p.offset == 0.0) return {true, edges_[p.edge].u};
    if (p.offset == edges_[p.edge].length) return {true, edges_[p.edge].v};
    return {false, -1};
  }

 protected:
  Point combine_interior(const Point& x, const Point& y, double lam) const override {
    if (nv_ == 1) return x;
    if (x.edge == y.edge) {
      const double t = (1.0 - lam) * x.offset + lam * y.offset;
      return make_point(x.edge, t);
    }
    // Identify the endpoint pair realizing the unique path, then walk it.
    double best = std::numeric_limits<double>::infinity();
    int ax_best = 0, by_best = 0;
    for (int ax = 0; ax < 2; ++ax)
      for (int by = 0; by < 2; ++by) {
        const double d = offset_cost(x, ax) + vertex_dist(endpoint(x.edge, ax), endpoint(y.edge, by)) +
                         offset_cost(y, by);
        if (d < best) {
          best = d;
          ax_best = ax;
          by_best = by;
        }
      }
    const int a = endpoint(x.edge, ax_best);
    const int b = endpoint(y.edge, by_best);
    double s = lam * best;

    // Leg 1: within x's edge toward endpoint a.
    const double c1 = offset_cost(x, ax_best);
    if (s <= c1) {
      const double t = (a == edges_[x.edge].u) ? x.offset - s : x.offset + s;
      return make_point(x.edge, t);
    }
    s -= c1;
    // Leg 2: along the vertex chain from a to b.
    for (const auto& [from, e] : vertex_chain(a, b)) {
      const double len = edges_[e].length;
      if (s <= len) {
        const double t = (edges_[e].u == from) ? s : len - s;
        return make_point(e, t);
      }
      s -= len;
    }
    // Leg 3: within y's edge from endpoint b toward y.
    const double c2 = offset_cost(y, by_best);
    s = std::min(s, c2);
    const double t = (b == edges_[y.edge].u) ? s : edges_[y.edge].length - s;
    return make_point(y.edge, t);
  }

  void check_member(const Point& p) const override {
    if (nv_ == 1) return;
    if (p.edge < 0 || p.edge >= static_cast<int>(edges_.size()))
      throw UsageError("tree: point references unknown edge");
    if (p.offset < 0.0 || p.offset > edges_[p.edge].length)
      throw UsageError("tree: point offset outside its edge");
  }

 private:
  static constexpr double kSnap = 1e-12;

  int endpoint(int e, int side) const { return side == 0 ? edges_[e].u : edges_[e].v; }

  double offset_cost(const Point& p, int side) const {
    return side == 0 ? p.offset : edges_[p.edge].length - p.offset;
  }

  void build_rooted_structure() {
    parent_.assign(nv_, -1);
    parent_edge_.assign(nv_, -1);
    depth_.assign(nv_, 0);
    dist_root_.assign(nv_, 0.0);
    std::vector<bool> seen(nv_, false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 0;
    while (!q.empty()) {
      const int w = q.front();
      q.pop();
      ++reached;
      for (const auto& [nb, e] : adj_[w]) {
        if (seen[nb]) continue;
        seen[nb] = true;
        parent_[nb] = w;
        parent_edge_[nb] = e;
        depth_[nb] = depth_[w] + 1;
        dist_root_[nb] = dist_root_[w] + edges_[e].length;
        q.push(nb);
      }
    }
    if (reached != nv_) throw UsageError("tree: edge list is disconnected");
  }

  int lca(int a, int b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return a;
  }

  /// Edges of the path a -> b as (from-vertex, edge index) steps.
  std::vector<std::pair<int, int>> vertex_chain(int a, int b) const {
    std::vector<std::pair<int, int>> up, down;
    int x = a, y = b;
    while (depth_[x] > depth_[y]) {
      up.push_back({x, parent_edge_[x]});
      x = parent_[x];
    }
    while (depth_[y] > depth_[x]) {
      down.push_back({parent_[y], parent_edge_[y]});
      y = parent_[y];
    }
    while (x != y) {
      up.push_back({x, parent_edge_[x]});
      x = parent_[x];
      down.push_back({parent_[y], parent_edge_[y]});
      y = parent_[y];
    }
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

  int nv_;
  std::vector<TreeEdge> edges_;
  std::string name_;
  std::vector<std::vector<std::pair<int, int>>> adj_;  // vertex -> (neighbor, edge)
  std::vector<int> parent_, parent_edge_, depth_, canon_edge_;
  std::vector<double> dist_root_;
  double total_length_ = 0.0;
};

}  // namespace ucw
