#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ucw/fixpoint.hpp"
#include "ucw/rates.hpp"

namespace ucw {

/// Bounded chart parameterization of a convex set: a parameter box mapped to
/// points. Straight parameter lines must be geodesics (true for geodesic
/// segments and affine patches of the linear models), so d(x, chart(t)) is
/// convex, hence unimodal, along every coordinate line.
struct SetChart {
  std::vector<std::pair<double, double>> bounds;
  std::function<Point(const std::vector<double>&)> map;
};

/// A closed convex set given by a membership test, a search parameterization
/// and/or a closed-form projection, and a witness sampler for the Fejer
/// monitors.
struct ConvexSetSpec {
  std::string name;
  std::function<bool(const Point&, double)> contains;
  std::optional<SetChart> chart;
  std::function<Point(const Point&)> closed_form_projection;  // may be empty
  std::function<Point(Rng&)> sample_witness;
};

namespace detail {

/// Ternary search for the minimizer of a unimodal objective on [lo, hi].
template <class F>
inline double ternary_min(F&& f, double lo, double hi, double param_tol, int max_iter = 500) {
  int it = 0;
  while (hi - lo > param_tol && it < max_iter) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
    ++it;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Metric projection onto the set: the closed form when available, otherwise
/// coordinate-descent over the chart with a ternary search per parameter
/// (valid because d(x, .) is convex along chart lines).
inline Point project(const GeodesicSpace& space, const ConvexSetSpec& set, const Point& x,
                     double tol = 1e-10) {
  if (set.closed_form_projection) return set.closed_form_projection(x);
  if (!set.chart)
    throw UsageError("project: set '" + set.name + "' has neither closed form nor chart");
  const auto& chart = *set.chart;
  const std::size_t k = chart.bounds.size();
  std::vector<double> params(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(chart.bounds[i].second >= chart.bounds[i].first) ||
        !std::isfinite(chart.bounds[i].first) || !std::isfinite(chart.bounds[i].second))
      throw UsageError("project: unbounded chart parameterization in '" + set.name + "'");
    params[i] = 0.5 * (chart.bounds[i].first + chart.bounds[i].second);
  }
  double prev = space.dist(x, chart.map(params));
  for (int sweep = 0; sweep < 50; ++sweep) {
    for (std::size_t i = 0; i < k; ++i) {
      auto slice = [&](double t) {
        std::vector<double> q = params;
        q[i] = t;
        return space.dist(x, chart.map(q));
      };
      const double span = chart.bounds[i].second - chart.bounds[i].first;
      params[i] = detail::ternary_min(slice, chart.bounds[i].first, chart.bounds[i].second,
                                      std::max(1e-300, 1e-10 * std::max(1.0, span)));
    }
    const double cur = space.dist(x, chart.map(params));
    if (prev - cur < tol && sweep > 0) return chart.map(params);
    prev = cur;
  }
  if (k == 1) return chart.map(params);  // 1-D ternary is already converged
  throw SolverError("project: coordinate descent stalled on '" + set.name + "'", prev);
}

// ---------------------------------------------------------------------------
// Set constructors
// ---------------------------------------------------------------------------

inline ConvexSetSpec segment_set(SpacePtr space, Point e0, Point e1, std::string name = "segment") {
  ConvexSetSpec s;
  s.name = std::move(name);
  SetChart chart;
  chart.bounds = {{0.0, 1.0}};
  chart.map = [space, e0, e1](const std::vector<double>& t) {
    return space->combine(e0, e1, std::clamp(t[0], 0.0, 1.0));
  };
  s.chart = chart;
  s.contains = [space, s_chart = chart](const Point& p, double tol) {
    // membership via best distance to the (1-D) chart
    auto slice = [&](double t) { return space->dist(p, s_chart.map({t})); };
    const double t = detail::ternary_min(slice, 0.0, 1.0, 1e-12);
    return slice(t) <= tol;
  };
  s.sample_witness = [space, e0, e1](Rng& rng) {
    return space->combine(e0, e1, rng.next_unit());
  };
  return s;
}

inline ConvexSetSpec ball_set(SpacePtr space, Point center, double radius,
                              std::string name = "ball") {
  if (!(radius > 0.0)) throw UsageError("ball_set: radius must be positive");
  ConvexSetSpec s;
  s.name = std::move(name);
  s.contains = [space, center, radius](const Point& p, double tol) {
    return space->dist(center, p) <= radius + tol;
  };
  s.closed_form_projection = [space, center, radius](const Point& p) {
    const double d = space->dist(center, p);
    if (d <= radius) return p;
    return space->combine(center, p, radius / d);
  };
  s.sample_witness = [space, center, radius](Rng& rng) {
    const Point w = space->sample(rng);
    const double d = space->dist(center, w);
    if (d <= radius) return w;
    return space->combine(center, w, rng.uniform(0.0, radius / d));
  };
  return s;
}

inline ConvexSetSpec singleton_set(SpacePtr space, Point p, std::string name = "singleton") {
  ConvexSetSpec s;
  s.name = std::move(name);
  s.contains = [space, p](const Point& q, double tol) { return space->dist(p, q) <= tol; };
  s.closed_form_projection = [p](const Point&) { return p; };
  s.sample_witness = [p](Rng&) { return p; };
  return s;
}

/// Affine patch of a linear model: v0 + sum t_i * dir_i with t in a box.
/// Coordinate truncation is the exact projection when the directions are the
/// first axes; pass `axis_aligned_keep` >= 0 to enable that closed form.
inline ConvexSetSpec affine_patch_set(SpacePtr space, Point v0, std::vector<Point> dirs,
                                      std::vector<std::pair<double, double>> bounds,
                                      int axis_aligned_keep = -1,
                                      std::string name = "affine_patch") {
  if (space->kind() != ModelKind::euclidean && space->kind() != ModelKind::lp)
    throw UsageError("affine_patch_set: requires a linear model");
  if (dirs.size() != bounds.size()) throw UsageError("affine_patch_set: dims mismatch");
  ConvexSetSpec s;
  s.name = std::move(name);
  SetChart chart;
  chart.bounds = bounds;
  chart.map = [v0, dirs](const std::vector<double>& t) {
    Point p = v0;
    for (std::size_t i = 0; i < dirs.size(); ++i)
      for (std::size_t c = 0; c < p.coords.size(); ++c)
        p.coords[c] += t[i] * dirs[i].coords[c];
    return p;
  };
  s.chart = chart;
  if (axis_aligned_keep >= 0) {
    const std::size_t keep = static_cast<std::size_t>(axis_aligned_keep);
    const auto box = bounds;
    s.closed_form_projection = [keep, box](const Point& p) {
      Point q = p;
      for (std::size_t i = 0; i < q.coords.size(); ++i) {
        if (i < keep)
          q.coords[i] = std::clamp(q.coords[i], box[i].first, box[i].second);
        else
          q.coords[i] = 0.0;
      }
      return q;
    };
  }
  s.contains = [space, chart](const Point& p, double tol) {
    std::vector<double> t(chart.bounds.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = 0.5 * (chart.bounds[i].first + chart.bounds[i].second);
    // nested ternary via project-on-chart
    for (int sweep = 0; sweep < 8; ++sweep)
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto slice = [&](double v) {
          auto q = t;
          q[i] = v;
          return space->dist(p, chart.map(q));
        };
        t[i] = detail::ternary_min(slice, chart.bounds[i].first, chart.bounds[i].second, 1e-12);
      }
    return space->dist(p, chart.map(t)) <= tol;
  };
  s.sample_witness = [chart](Rng& rng) {
    std::vector<double> t(chart.bounds.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = rng.uniform(chart.bounds[i].first, chart.bounds[i].second);
    return chart.map(t);
  };
  return s;
}

inline ConvexSetSpec subtree_set(std::shared_ptr<const MetricTree> tree, std::vector<bool> in_set,
                                 std::string name = "subtree") {
  ConvexSetSpec s;
  s.name = std::move(name);
  s.contains = [tree, in_set](const Point& p, double) { return tree->on_subtree(p, in_set); };
  s.closed_form_projection = [tree, in_set](const Point& p) {
    return tree->project_to_subtree(p, in_set);
  };
  s.sample_witness = [tree, in_set](Rng& rng) {
    for (int i = 0; i < 256; ++i) {
      const Point w = tree->sample(rng);
      if (tree->on_subtree(w, in_set)) return w;
    }
    for (int v = 0; v < tree->vertex_count(); ++v)
      if (in_set[v]) return tree->vertex_point(v);
    throw UsageError("subtree_set: empty subtree");
  };
  return s;
}

// ---------------------------------------------------------------------------
// Iteration traces
// ---------------------------------------------------------------------------

/// A lazily materialized iteration x_0, x_1, ... with optional summable-error
/// data (delta_n, gamma_tail, B) for the quasi-Fejer results.
class IterationTrace {
 public:
  enum class Scheme { mann, schu, custom };

  IterationTrace(Scheme scheme, SpacePtr space, Point x0,
                 std::function<Point(Index, const Point&)> step, std::string name)
      : scheme_(scheme), space_(std::move(space)), step_(std::move(step)), name_(std::move(name)) {
    points_.push_back(std::move(x0));
  }

  Scheme scheme() const { return scheme_; }
  const std::string& name() const { return name_; }
  const SpacePtr& space() const { return space_; }

  /// Returns by value: the backing store reallocates as the trace grows, so
  /// references would not survive later at() calls.
  Point at(Index n) const {
    if (n >= kIndexCap)
      throw SolverError("IterationTrace: index cap exceeded", static_cast<double>(n));
    while (points_.size() <= n) {
      const Index i = points_.size() - 1;
      points_.push_back(step_(i, points_.back()));
    }
    return points_[n];
  }

  void set_error_seq(std::function<double(Index)> delta, std::function<Index(double)> gamma_tail,
                     double B) {
    delta_ = std::move(delta);
    gamma_tail_ = std::move(gamma_tail);
    B_ = B;
  }
  bool has_error_seq() const { return static_cast<bool>(delta_); }
  double delta(Index n) const { return delta_ ? delta_(n) : 0.0; }
  Index gamma_tail(double eps) const { return gamma_tail_(eps); }
  double total_error_bound() const { return B_; }

 private:
  Scheme scheme_;
  SpacePtr space_;
  std::function<Point(Index, const Point&)> step_;
  std::string name_;
  mutable std::vector<Point> points_;
  std::function<double(Index)> delta_;
  std::function<Index(double)> gamma_tail_;
  double B_ = 0.0;
};

/// x_{n+1} = alpha_n T x_n + (1 - alpha_n) x_n, i.e. combine(x_n, Tx_n, alpha_n).
inline IterationTrace mann_iteration(SpacePtr space, MappingSpec T, Point x0,
                                     std::function<double(Index)> alphas) {
  auto step = [space, T = std::move(T), alphas = std::move(alphas)](Index n, const Point& x) {
    return space->combine(x, T.apply(x), std::clamp(alphas(n), 0.0, 1.0));
  };
  return IterationTrace(IterationTrace::Scheme::mann, space, std::move(x0), std::move(step),
                        "mann");
}

/// x_{n+1} = alpha_n T^n x_n + (1 - alpha_n) x_n.
inline IterationTrace schu_iteration(SpacePtr space, MappingSpec T, Point x0,
                                     std::function<double(Index)> alphas) {
  if (T.kind != MappingSpec::Kind::asymptotically_nonexpansive)
    throw UsageError("schu_iteration: requires an asymptotically nonexpansive mapping");
  auto step = [space, T = std::move(T), alphas = std::move(alphas)](Index n, const Point& x) {
    return space->combine(x, T.power(x, n), std::clamp(alphas(n), 0.0, 1.0));
  };
  return IterationTrace(IterationTrace::Scheme::schu, space, std::move(x0), std::move(step),
                        "schu");
}

/// An explicitly specified trace x_n = f(n).
inline IterationTrace custom_trace(SpacePtr space, std::function<Point(Index)> f,
                                   std::string name = "custom") {
  Point x0 = f(0);
  auto step = [f = std::move(f)](Index n, const Point&) { return f(n + 1); };
  return IterationTrace(IterationTrace::Scheme::custom, std::move(space), std::move(x0),
                        std::move(step), std::move(name));
}

// ---------------------------------------------------------------------------
// Shadow metastability
// ---------------------------------------------------------------------------

/// Shadow points P_S x_n computed on demand and cached; projections dominate
/// campaign cost.
class ShadowCache {
 public:
  ShadowCache(const GeodesicSpace& space, const ConvexSetSpec& set, const IterationTrace& trace)
      : space_(space), set_(set), trace_(trace) {}

  const Point& at(Index n) const {
    auto it = cache_.find(n);
    if (it == cache_.end())
      it = cache_.emplace(n, project(space_, set_, trace_.at(n))).first;
    return it->second;
  }

  std::size_t projections() const { return cache_.size(); }

 private:
  const GeodesicSpace& space_;
  const ConvexSetSpec& set_;
  const IterationTrace& trace_;
  mutable std::map<Index, Point> cache_;
};

namespace detail {

inline double exact_window_diameter(const ShadowCache& shadows, const GeodesicSpace& space,
                                    Index lo, Index hi) {
  double diam = 0.0;
  for (Index a = lo; a <= hi; ++a)
    for (Index b = a + 1; b <= hi; ++b)
      diam = std::max(diam, space.dist(shadows.at(a), shadows.at(b)));
  return diam;
}

/// Metric diameter of the shadow window [lo, hi] for an eps-decision, with a
/// radius fast path: R := max_n d(s_lo, s_n) satisfies R <= diam <= 2R, so
/// 2R <= eps accepts and R > eps rejects without the quadratic pass; only the
/// band in between needs the exact diameter.
inline double shadow_window_diameter(const ShadowCache& shadows, const GeodesicSpace& space,
                                     Index lo, Index hi, double eps) {
  double radius = 0.0;
  for (Index n = lo; n <= hi; ++n) {
    radius = std::max(radius, space.dist(shadows.at(lo), shadows.at(n)));
    if (radius > eps + 1e-12) return radius;  // diameter >= radius: reject now
  }
  if (2.0 * radius <= eps) return 2.0 * radius;
  return exact_window_diameter(shadows, space, lo, hi);
}

/// Prefix (quasi-)Fejer monitor against sampled witnesses of S.
inline std::string check_fejer_prefix(const GeodesicSpace& space, const ConvexSetSpec& set,
                                      const IterationTrace& trace, Index upto, bool quasi,
                                      std::uint64_t seed, double tol) {
  std::vector<Point> witnesses;
  for (int w = 0; w < 8; ++w) {
    Rng rng = Rng::derive(seed, 1001, static_cast<std::uint64_t>(w));
    witnesses.push_back(set.sample_witness(rng));
  }
  for (Index n = 0; n < upto; ++n) {
    const double slack = quasi ? trace.delta(n) : 0.0;
    for (const auto& q : witnesses) {
      const double before = space.dist(trace.at(n), q);
      const double after = space.dist(trace.at(n + 1), q);
      if (after > before + slack + tol)
        return "Fejer monotonicity fails at n=" + std::to_string(n) + " (witness " +
               format_point(q) + "): " + std::to_string(after) + " > " + std::to_string(before) +
               " + " + std::to_string(slack);
    }
  }
  return {};
}

inline void shadow_metastability_search(MetastabilityReport& rep, const ShadowCache& shadows,
                                        const GeodesicSpace& space, const CounterFn& g,
                                        double eps, Index n_lo, const BoundValue& bound) {
  const Index search_cap = 20000;
  const Index n_hi = std::min(bound.value, n_lo + search_cap);
  for (Index N = n_lo; N <= n_hi; ++N) {
    const Index end = tilde_apply(g.g, N, kIndexCap - 1);
    if (end >= kIndexCap - 1) {
      rep.status = MetaStatus::inconclusive_at_cap;
      rep.message = "shadow window at N=" + std::to_string(N) + " exceeds the index cap";
      return;
    }
    const double diam = shadow_window_diameter(shadows, space, N, end, eps);
    if (diam <= eps + 1e-12) {
      rep.found = true;
      rep.found_N = N;
      rep.window_end = end;
      rep.max_oscillation = diam;
      rep.status = MetaStatus::pass;
      return;
    }
  }
  if (bound.capped || bound.value > n_hi) {
    rep.status = MetaStatus::inconclusive_at_cap;
    rep.message = "no admissible N within the search cap; bound exceeds cap";
  } else {
    rep.status = MetaStatus::violation;
    rep.message = "no N <= theoretical bound has shadow window diameter <= eps";
  }
}

}  // namespace detail

/// Fejer shadow metastability: for a Fejer monotone trace w.r.t. S with
/// d(x_0, P_S x_0) <= b, some N <= (n -> n+g(n))^(ceil(b^2 / psi_eta(b,eps)))(0)
/// has d(P_S x_n, P_S x_m) <= eps throughout [N, N + g(N)].
inline MetastabilityReport fejer_shadow_metastability(const ModelSpace& model,
                                                      const ConvexSetSpec& set,
                                                      const IterationTrace& trace, double b,
                                                      double eps, const CounterFn& g,
                                                      std::uint64_t seed = 1) {
  if (!(b > 0.0)) throw UsageError("fejer_shadow_metastability: b must be positive");
  const auto& space = *model.space;
  MetastabilityReport rep;
  rep.eps = eps;
  rep.g_name = g.name;
  rep.seq_descriptor = trace.name() + " / " + set.name;
  ShadowCache shadows(space, set, trace);
  const double d0 = space.dist(trace.at(0), shadows.at(0));
  if (d0 > b + space.tol()) {
    rep.status = MetaStatus::input_error;
    rep.message = "certified b=" + std::to_string(b) + " but d(x0, P_S x0)=" + std::to_string(d0);
    return rep;
  }
  if (auto err = detail::check_fejer_prefix(space, set, trace, 192, false, seed, space.tol());
      !err.empty()) {
    rep.status = MetaStatus::input_error;
    rep.message = err;
    return rep;
  }
  const double psi = psi_eta(model.eta, b, eps);
  if (!(psi > 0.0)) {
    rep.status = MetaStatus::inconclusive_at_cap;
    rep.message = "psi underflowed for this (b, eps); bound not computable";
    return rep;
  }
  const BoundValue bound = iterate_tilde(g.g, std::ceil(b * b / psi), 0);
  rep.theoretical_bound = bound.value;
  rep.bound_capped = bound.capped;
  detail::shadow_metastability_search(rep, shadows, space, g, eps, 0, bound);
  return rep;
}

/// Quasi-Fejer shadow metastability with summable errors: C = 2b + 3B and
/// N in [gamma(psi_eta(C,eps)/(4C)),
///       (n -> n + g^M(n))^(ceil(2C / psi_eta(C,eps)))(gamma(...))].
inline MetastabilityReport quasi_fejer_shadow_metastability(const ModelSpace& model,
                                                            const ConvexSetSpec& set,
                                                            const IterationTrace& trace, double b,
                                                            double B, double eps,
                                                            const CounterFn& g,
                                                            std::uint64_t seed = 1) {
  if (!(b > 0.0) || !(B > 0.0))
    throw UsageError("quasi_fejer_shadow_metastability: b and B must be positive");
  if (!trace.has_error_seq())
    throw UsageError("quasi_fejer_shadow_metastability: trace carries no error sequence");
  const auto& space = *model.space;
  MetastabilityReport rep;
  rep.eps = eps;
  rep.g_name = g.name;
  rep.seq_descriptor = trace.name() + " / " + set.name;
  ShadowCache shadows(space, set, trace);
  const double d0 = space.dist(trace.at(0), shadows.at(0));
  if (d0 > b + space.tol()) {
    rep.status = MetaStatus::input_error;
    rep.message = "certified b=" + std::to_string(b) + " but d(x0, P_S x0)=" + std::to_string(d0);
    return rep;
  }
  double partial = 0.0;  // sum delta_n <= B re-check on a prefix
  for (Index n = 0; n < 512; ++n) partial += trace.delta(n);
  if (partial > B + 1e-9) {
    rep.status = MetaStatus::input_error;
    rep.message = "sum of delta_n exceeds the certified B on the checked prefix";
    return rep;
  }
  if (auto err = detail::check_fejer_prefix(space, set, trace, 192, true, seed, space.tol());
      !err.empty()) {
    rep.status = MetaStatus::input_error;
    rep.message = err;
    return rep;
  }
  const double C = 2.0 * b + 3.0 * B;
  const double psi = psi_eta(model.eta, C, eps);
  if (!(psi > 0.0) || !(psi / (4.0 * C) > 0.0)) {
    rep.status = MetaStatus::inconclusive_at_cap;
    rep.message = "psi underflowed for this (C, eps); bound not computable";
    return rep;
  }
  const Index n_lo = trace.gamma_tail(psi / (4.0 * C));
  RunningMax gmax(g.g);
  const BoundValue bound = iterate_tilde(gmax, std::ceil(2.0 * C / psi), n_lo);
  rep.theoretical_bound = bound.value;
  rep.bound_capped = bound.capped;
  detail::shadow_metastability_search(rep, shadows, space, g, eps, n_lo, bound);
  return rep;
}

/// Exact diameter of the shadow set over [n0, n0 + window]; the
/// tail-convergence figure of merit for convergent traces. Window is capped
/// at 512 to keep the quadratic pass cheap.
inline double shadow_tail_oscillation(const ModelSpace& model, const ConvexSetSpec& set,
                                      const IterationTrace& trace, Index n0, Index window) {
  if (window > 512) throw UsageError("shadow_tail_oscillation: window capped at 512");
  ShadowCache shadows(*model.space, set, trace);
  return detail::exact_window_diameter(shadows, *model.space, n0, n0 + window);
}

/// CSV trace export: n, point coordinates, d(x_n, P_S x_n), delta_n.
inline void export_trace_csv(std::ostream& out, const ModelSpace& model, const ConvexSetSpec& set,
                             const IterationTrace& trace, Index upto) {
  const auto& space = *model.space;
  std::size_t ncoords = 2;
  if (model.params.kind == ModelKind::euclidean || model.params.kind == ModelKind::lp)
    ncoords = model.params.dim;
  out << "n";
  if (model.params.kind == ModelKind::tree)
    out << ",edge,offset";
  else
    for (std::size_t c = 0; c < ncoords; ++c) out << ",x" << c;
  out << ",dist_to_shadow,delta\n";
  char buf[80];
  for (Index n = 0; n <= upto; ++n) {
    const Point& p = trace.at(n);
    const Point s = project(space, set, p);
    out << n;
    if (model.params.kind == ModelKind::tree) {
      std::snprintf(buf, sizeof(buf), ",%d,%.17g", p.edge, p.offset);
      out << buf;
    } else {
      for (std::size_t c = 0; c < ncoords; ++c) {
        std::snprintf(buf, sizeof(buf), ",%.17g", p.coords[c]);
        out << buf;
      }
    }
    std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", space.dist(p, s), trace.delta(n));
    out << buf << "\n";
  }
}

}  // namespace ucw
