#pragma once

#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ucw/shadow.hpp"

namespace ucw {

inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

/// Proper convex lsc functionals over a model space, built from a closed
/// composable library so properness/convexity are checkable:
///   sqdist(p) = 1/2 d^2(., p), dist(p), indicator(S),
///   scale(c, f) with c >= 0, sum(f, g), max(f, g).
/// Values live in R U {+inf} with absorbing arithmetic (IEEE infinity).
class ConvexFunctional {
 public:
  double eval(const GeodesicSpace& space, const Point& x) const {
    switch (node_) {
      case Node::half_sq_dist: {
        const double d = space.dist(x, point_);
        return 0.5 * d * d;
      }
      case Node::dist:
        return space.dist(x, point_);
      case Node::indicator:
        return set_->contains(x, space.tol()) ? 0.0 : kPlusInfinity;
      case Node::scale:
        return scalar_ * lhs_->eval(space, x);
      case Node::sum:
        return lhs_->eval(space, x) + rhs_->eval(space, x);
      case Node::max_of:
        return std::max(lhs_->eval(space, x), rhs_->eval(space, x));
    }
    return kPlusInfinity;
  }

  const std::string& describe() const { return descriptor_; }

  static ConvexFunctional half_sq_dist_to(Point p) {
    ConvexFunctional f;
    f.node_ = Node::half_sq_dist;
    f.point_ = std::move(p);
    f.descriptor_ = "sqdist(" + format_point(f.point_) + ")";
    return f;
  }
  static ConvexFunctional dist_to(Point p) {
    ConvexFunctional f;
    f.node_ = Node::dist;
    f.point_ = std::move(p);
    f.descriptor_ = "dist(" + format_point(f.point_) + ")";
    return f;
  }
  static ConvexFunctional indicator_of(ConvexSetSpec set) {
    ConvexFunctional f;
    f.node_ = Node::indicator;
    f.set_ = std::make_shared<ConvexSetSpec>(std::move(set));
    f.descriptor_ = "indicator(" + f.set_->name + ")";
    return f;
  }
  static ConvexFunctional scale(double c, ConvexFunctional g) {
    if (!(c >= 0.0)) throw UsageError("scale: the factor must be nonnegative");
    ConvexFunctional f;
    f.node_ = Node::scale;
    f.scalar_ = c;
    f.descriptor_ = "scale(" + std::to_string(c) + ", " + g.descriptor_ + ")";
    f.lhs_ = std::make_shared<ConvexFunctional>(std::move(g));
    return f;
  }
  static ConvexFunctional sum(ConvexFunctional a, ConvexFunctional b) {
    ConvexFunctional f;
    f.node_ = Node::sum;
    f.descriptor_ = "sum(" + a.descriptor_ + ", " + b.descriptor_ + ")";
    f.lhs_ = std::make_shared<ConvexFunctional>(std::move(a));
    f.rhs_ = std::make_shared<ConvexFunctional>(std::move(b));
    return f;
  }
  static ConvexFunctional max_of(ConvexFunctional a, ConvexFunctional b) {
    ConvexFunctional f;
    f.node_ = Node::max_of;
    f.descriptor_ = "max(" + a.descriptor_ + ", " + b.descriptor_ + ")";
    f.lhs_ = std::make_shared<ConvexFunctional>(std::move(a));
    f.rhs_ = std::make_shared<ConvexFunctional>(std::move(b));
    return f;
  }

  /// Pattern: the functional is exactly an indicator.
  const ConvexSetSpec* as_indicator() const {
    return node_ == Node::indicator ? set_.get() : nullptr;
  }

  /// Pattern: c * sqdist(p), including plain sqdist (c = 1) and nested
  /// scales.
  std::optional<std::pair<double, Point>> as_scaled_half_sq() const {
    if (node_ == Node::half_sq_dist) return std::make_pair(1.0, point_);
    if (node_ == Node::scale) {
      if (auto inner = lhs_->as_scaled_half_sq())
        return std::make_pair(scalar_ * inner->first, inner->second);
    }
    return std::nullopt;
  }

 private:
  enum class Node { half_sq_dist, dist, indicator, scale, sum, max_of };

  Node node_ = Node::half_sq_dist;
  Point point_;
  std::shared_ptr<const ConvexSetSpec> set_;
  double scalar_ = 1.0;
  std::shared_ptr<const ConvexFunctional> lhs_, rhs_;
  std::string descriptor_;
};

/// Randomized properness + geodesic-convexity certificate for a functional.
inline AxiomReport check_functional_convexity(const GeodesicSpace& space,
                                              const ConvexFunctional& f, std::uint64_t seed,
                                              std::uint64_t trials, double tol) {
  AxiomReport rep;
  rep.id = "functional_convexity";
  rep.tolerance = tol;
  bool proper = false;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 1301, t);
    const Point x = space.sample(rng), y = space.sample(rng);
    const double lam = rng.next_unit();
    const double fx = f.eval(space, x), fy = f.eval(space, y);
    proper = proper || std::isfinite(fx) || std::isfinite(fy);
    if (!std::isfinite(fx) || !std::isfinite(fy)) {
      ++rep.skipped;
      continue;
    }
    const double fz = f.eval(space, space.combine(x, y, lam));
    const double rhs = (1.0 - lam) * fx + lam * fy;
    rep.record(fz, rhs, fz - rhs, format_point(x) + " " + format_point(y));
  }
  if (!proper)
    throw UsageError("functional '" + f.describe() + "' is improper on the sampled region");
  return rep;
}

/// Prox instance: minimize f(x) + d^2(x, a) / (2 lambda) over the model,
/// searched inside a bounded chart region that contains the anchor and a
/// finiteness witness of f.
struct ProxProblem {
  ConvexFunctional f;
  double lambda = 1.0;
  Point anchor;
  SetChart search_region;
};

inline double objective(const ModelSpace& model, const ProxProblem& prob, const Point& x) {
  const double d = model.space->dist(x, prob.anchor);
  return prob.f.eval(*model.space, x) + d * d / (2.0 * prob.lambda);
}

namespace detail {

/// Pattern search: repeatedly evaluate a (2m+1)^k grid over a box centered
/// at the incumbent, recentering on improvement and shrinking only on stalls.
/// Stall-only shrinking lets the search march along diagonal valleys of
/// nonsmooth (max-type) objectives instead of collapsing onto them. Works for
/// continuous quasi-convex objectives without derivative or
/// unimodality-per-line assumptions.
inline std::vector<double> grid_shrink_minimize(
    const SetChart& region, const std::function<double(const std::vector<double>&)>& obj,
    double param_tol, int grid_half = 4, int max_rounds = 400, double shrink = 0.5,
    const std::vector<double>* start = nullptr, double start_half_scale = 1.0) {
  const std::size_t k = region.bounds.size();
  std::vector<double> center(k), best(k);
  std::vector<double> half(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto [lo, hi] = region.bounds[i];
    center[i] = start ? (*start)[i] : 0.5 * (lo + hi);
    best[i] = center[i];
    half[i] = 0.5 * (hi - lo) * start_half_scale;
  }
  double best_val = obj(best);
  bool any_finite = std::isfinite(best_val);

  std::vector<double> probe(k);
  for (int round = 0; round < max_rounds; ++round) {
    bool improved = false;
    std::vector<int> idx(k, -grid_half);
    while (true) {
      for (std::size_t i = 0; i < k; ++i) {
        probe[i] = center[i] + half[i] * idx[i] / grid_half;
        probe[i] = std::clamp(probe[i], region.bounds[i].first, region.bounds[i].second);
      }
      const double v = obj(probe);
      if (std::isfinite(v)) any_finite = true;
      if (v < best_val) {
        best_val = v;
        best = probe;
        improved = true;
      }
      std::size_t d = 0;
      while (d < k && ++idx[d] > grid_half) idx[d++] = -grid_half;
      if (d == k) break;
    }
    if (round == 0 && !any_finite)
      throw SolverError("prox: no finite objective value on the search region", best_val);
    center = best;
    double maxhalf = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!improved) half[i] *= shrink;
      maxhalf = std::max(maxhalf, half[i]);
    }
    if (maxhalf < param_tol) break;
  }
  return best;
}

/// Nelder-Mead simplex polish, clamped to the region box. The simplex adapts
/// its shape to kink valleys of max-type objectives where axis-aligned
/// pattern steps stall. Standard (1, 2, 0.5, 0.5) coefficients.
inline std::vector<double> nelder_mead_polish(
    const SetChart& region, const std::function<double(const std::vector<double>&)>& obj,
    std::vector<double> start, double init_size, double param_tol, int max_iter = 4000) {
  const std::size_t k = region.bounds.size();
  auto clamp_to_box = [&](std::vector<double>& v) {
    for (std::size_t i = 0; i < k; ++i)
      v[i] = std::clamp(v[i], region.bounds[i].first, region.bounds[i].second);
  };
  std::vector<std::vector<double>> simplex(k + 1, start);
  for (std::size_t i = 0; i < k; ++i) {
    simplex[i + 1][i] += init_size;
    clamp_to_box(simplex[i + 1]);
  }
  std::vector<double> vals(k + 1);
  for (std::size_t i = 0; i <= k; ++i) vals[i] = obj(simplex[i]);

  auto order = [&]() {
    for (std::size_t i = 0; i <= k; ++i)
      for (std::size_t j = i + 1; j <= k; ++j)
        if (vals[j] < vals[i]) {
          std::swap(vals[i], vals[j]);
          std::swap(simplex[i], simplex[j]);
        }
  };
  std::vector<double> centroid(k), cand(k);
  for (int it = 0; it < max_iter; ++it) {
    order();
    double size = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      size = std::max(size, std::abs(simplex[k][i] - simplex[0][i]) +
                                std::abs(simplex[1][i] - simplex[0][i]));
    if (size < param_tol) break;
    for (std::size_t i = 0; i < k; ++i) {
      centroid[i] = 0.0;
      for (std::size_t j = 0; j < k; ++j) centroid[i] += simplex[j][i];
      centroid[i] /= static_cast<double>(k);
    }
    auto blend = [&](double t) {
      for (std::size_t i = 0; i < k; ++i) cand[i] = centroid[i] + t * (centroid[i] - simplex[k][i]);
      clamp_to_box(cand);
      return obj(cand);
    };
    const double refl = blend(1.0);
    if (refl < vals[0]) {
      auto reflected = cand;
      const double expa = blend(2.0);
      if (expa < refl) {
        simplex[k] = cand;
        vals[k] = expa;
      } else {
        simplex[k] = reflected;
        vals[k] = refl;
      }
    } else if (refl < vals[k - 1]) {
      simplex[k] = cand;
      vals[k] = refl;
    } else {
      const double contr = blend(refl < vals[k] ? 0.5 : -0.5);
      if (contr < std::min(refl, vals[k])) {
        simplex[k] = cand;
        vals[k] = contr;
      } else {
        for (std::size_t j = 1; j <= k; ++j) {
          for (std::size_t i = 0; i < k; ++i)
            simplex[j][i] = simplex[0][i] + 0.5 * (simplex[j][i] - simplex[0][i]);
          vals[j] = obj(simplex[j]);
        }
      }
    }
  }
  order();
  return simplex[0];
}

/// Exact nested ternary over dims [d, k): minimizes obj over those
/// coordinates inside `windows`, writing the argmin into params. Valid for
/// jointly quasi-convex objectives: the transversal slices are unimodal and
/// partial minimization preserves convexity, so every level sees a unimodal
/// function (this is what makes kink valleys of max-type objectives tractable
/// where axis-wise descent stalls).
inline double nested_ternary_argmin(const std::function<double(const std::vector<double>&)>& obj,
                                    std::vector<double>& params,
                                    const std::vector<std::pair<double, double>>& windows,
                                    std::size_t d, double param_tol) {
  const bool innermost = (d + 1 == windows.size());
  auto level = [&](double v) {
    params[d] = v;
    return innermost ? obj(params)
                     : nested_ternary_argmin(obj, params, windows, d + 1, param_tol);
  };
  double lo = windows[d].first, hi = windows[d].second;
  int it = 0;
  while (hi - lo > param_tol && it < 200) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (level(m1) <= level(m2))
      hi = m2;
    else
      lo = m1;
    ++it;
  }
  return level(0.5 * (lo + hi));
}

inline Point prox_generic(const ModelSpace& model, const ProxProblem& prob, double tol,
                          int grid_half, double shrink) {
  auto obj_params = [&](const std::vector<double>& t) {
    return objective(model, prob, prob.search_region.map(t));
  };
  // Parameter tolerance below the point tolerance; charts shipped here have
  // O(1) Lipschitz parameterizations.
  const double param_tol = 0.02 * tol;
  const std::size_t k = prob.search_region.bounds.size();
  auto params = grid_shrink_minimize(prob.search_region, obj_params,
                                     std::max(param_tol, 1e-4), grid_half, 400, shrink);
  if (k <= 2) {
    // Nested ternary polish over a cascade of shrinking local windows; the
    // recentering between passes keeps the comparisons well above the
    // floating-point resolution of the objective.
    for (double w : {0.35, 1e-3, 2e-5}) {
      std::vector<std::pair<double, double>> windows(k);
      for (std::size_t i = 0; i < k; ++i) {
        const auto [blo, bhi] = prob.search_region.bounds[i];
        windows[i] = {std::max(blo, params[i] - w), std::min(bhi, params[i] + w)};
      }
      nested_ternary_argmin(obj_params, params, windows, 0,
                            std::min(1e-12, 0.01 * param_tol));
    }
  } else {
    // Higher-dimensional charts: Nelder-Mead restart cascade.
    for (double size = 0.02 * (1.0 + 0.1 * grid_half); size > 0.01 * param_tol; size *= 0.12)
      params = nelder_mead_polish(prob.search_region, obj_params, std::move(params), size,
                                  std::max(0.02 * param_tol, 1e-3 * size));
  }
  return prob.search_region.map(params);
}

}  // namespace detail

/// The proximal point Prox^lambda_f(anchor): closed forms when the descriptor
/// matches (indicator -> metric projection; c*sqdist(p) -> the geodesic point
/// combine(a, p, c lambda/(1+c lambda))), otherwise pattern search over the
/// region followed by per-coordinate ternary polish. tol is a distance target
/// for the returned point.
inline Point prox(const ModelSpace& model, const ProxProblem& prob, double tol = 1e-6) {
  if (!(prob.lambda > 0.0)) throw UsageError("prox: lambda must be positive");
  const auto& space = *model.space;

  if (const ConvexSetSpec* set = prob.f.as_indicator()) return project(space, *set, prob.anchor);
  if (auto m = prob.f.as_scaled_half_sq()) {
    const double cl = m->first * prob.lambda;
    return space.combine(prob.anchor, m->second, cl / (1.0 + cl));
  }

  return detail::prox_generic(model, prob, tol, 4, 0.5);
}

/// Runs the solver along two distinct numerical paths (different grids and
/// shrink factors for the generic route); the returned points agree within
/// 2*tol exactly when the minimizer is unique.
inline std::pair<Point, Point> prox_two_start(const ModelSpace& model, const ProxProblem& prob,
                                              double tol = 1e-6) {
  if (prob.f.as_indicator() || prob.f.as_scaled_half_sq())
    return {prox(model, prob, tol), prox(model, prob, tol)};
  return {detail::prox_generic(model, prob, tol, 4, 0.5),
          detail::prox_generic(model, prob, tol, 5, 0.42)};
}

/// Per-candidate row of the minimizer-iff-fixed-point certification.
struct FixedPointRow {
  Point candidate;
  double fix_residual = 0.0;  // d(a, Prox_f a)
  double min_gap = 0.0;       // f(a) - estimated inf f
  bool is_fixed = false;
  bool is_minimizer = false;
  bool consistent = false;
};

struct FixedPointReport {
  double inf_estimate = 0.0;
  double gap_tolerance = 0.0;
  std::vector<FixedPointRow> rows;
  bool biconditional_ok = true;
};

/// Minimizer-iff-fixed-point check: a is a minimizer of f iff a is fixed by Prox_f
/// (order 1), certified at tolerance. The inf of f and a Lipschitz scale for
/// the gap threshold come from a dense scan of the region plus the pattern
/// search minimizer.
inline FixedPointReport minimizer_fixed_point_check(const ModelSpace& model,
                                                    const ConvexFunctional& f,
                                                    const SetChart& region,
                                                    const std::vector<Point>& candidates,
                                                    double tol = 1e-6) {
  const auto& space = *model.space;
  FixedPointReport rep;

  // Dense scan: inf estimate and an empirical Lipschitz scale for f.
  const std::size_t k = region.bounds.size();
  const int steps = k == 1 ? 4096 : (k == 2 ? 96 : 12);
  double inf_scan = kPlusInfinity;
  double lip = 0.0;
  double scan_step = 0.0;
  std::vector<double> t(k);
  std::vector<int> idx(k, 0);
  double prev_val = kPlusInfinity;
  Point prev_point;
  bool have_prev = false;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      const auto [lo, hi] = region.bounds[i];
      t[i] = lo + (hi - lo) * idx[i] / steps;
      scan_step = std::max(scan_step, (hi - lo) / steps);
    }
    const Point p = region.map(t);
    const double v = f.eval(space, p);
    inf_scan = std::min(inf_scan, v);
    if (have_prev && std::isfinite(v) && std::isfinite(prev_val)) {
      const double dd = space.dist(prev_point, p);
      if (dd > 1e-12) lip = std::max(lip, std::abs(v - prev_val) / dd);
    }
    prev_val = v;
    prev_point = p;
    have_prev = true;
    std::size_t d = 0;
    while (d < k && ++idx[d] > steps) idx[d++] = 0;
    if (d == k) break;
  }
  // Refine with the pattern-search minimizer of f itself.
  auto obj = [&](const std::vector<double>& q) { return f.eval(space, region.map(q)); };
  SetChart rchart = region;
  const auto best = detail::grid_shrink_minimize(rchart, obj, 0.02 * tol);
  rep.inf_estimate = std::min(inf_scan, obj(best));
  rep.gap_tolerance = std::max(1e-9, lip * (10.0 * tol + scan_step * 1e-3));

  for (const auto& a : candidates) {
    FixedPointRow row;
    row.candidate = a;
    ProxProblem prob{f, 1.0, a, region};
    const Point pa = prox(model, prob, tol);
    row.fix_residual = space.dist(a, pa);
    row.min_gap = f.eval(space, a) - rep.inf_estimate;
    row.is_fixed = row.fix_residual <= tol;
    row.is_minimizer = row.min_gap <= rep.gap_tolerance;
    row.consistent = row.is_fixed == row.is_minimizer;
    rep.biconditional_ok = rep.biconditional_ok && row.consistent;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

/// Proximal point iteration x_{n+1} = Prox^{lambda_n}_f(x_n), materialized to
/// the horizon with the recorded f-values and step lengths.
struct ProximalRun {
  std::vector<Point> points;
  std::vector<double> f_values;
  std::vector<double> step_dist;
};

inline ProximalRun proximal_point_iterate(const ModelSpace& model, const ConvexFunctional& f,
                                          const std::function<double(Index)>& lambda_seq,
                                          const Point& x0, const SetChart& region, Index horizon,
                                          double tol = 1e-6) {
  ProximalRun run;
  run.points.push_back(x0);
  run.f_values.push_back(f.eval(*model.space, x0));
  for (Index n = 0; n < horizon; ++n) {
    const double lam = lambda_seq(n);
    if (!(lam > 0.0))
      throw UsageError("proximal_point_iterate: lambda_" + std::to_string(n) +
                       " must be positive");
    ProxProblem prob{f, lam, run.points.back(), region};
    Point next = prox(model, prob, tol);
    run.step_dist.push_back(model.space->dist(run.points.back(), next));
    run.f_values.push_back(f.eval(*model.space, next));
    run.points.push_back(std::move(next));
  }
  return run;
}

// ---------------------------------------------------------------------------
// Descriptor grammar
// ---------------------------------------------------------------------------
//
//   expr  := sqdist(point) | dist(point) | indicator(set)
//          | scale(num, expr) | sum(expr, expr) | max(expr, expr)
//   set   := ball(point, num) | segment(point, point)
//   point := (num, num, ...)            for the vector models
//          | tree(edge, offset)         for metric trees
//
// Example: sum(scale(0.5, sqdist((2,0))), indicator(ball((0,0), 1)))

namespace detail {

class FunctionalParser {
 public:
  FunctionalParser(const ModelSpace& model, std::string_view text)
      : model_(model), text_(text) {}

  ConvexFunctional parse() {
    auto f = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("functional descriptor: " + why + " at offset " + std::to_string(pos_) +
                     " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  double number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                   std::string_view("+-.eE").find(text_[pos_]) !=
                                       std::string_view::npos))
      ++pos_;
    if (start == pos_) fail("expected number");
    try {
      return std::stod(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::exception&) {
      fail("malformed number");
    }
  }

  Point point() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      expect('(');
      std::vector<double> coords;
      coords.push_back(number());
      while (eat(',')) coords.push_back(number());
      expect(')');
      if (model_.params.kind == ModelKind::tree) fail("tree models use tree(edge, offset)");
      Point p = vector_point(model_.params.kind, std::move(coords));
      model_.space->require_member(p);
      return p;
    }
    const auto name = ident();
    if (name != "tree") fail("expected point literal");
    expect('(');
    const double e = number();
    expect(',');
    const double off = number();
    expect(')');
    auto tree = std::static_pointer_cast<const MetricTree>(model_.space);
    return tree->make_point(static_cast<int>(e), off);
  }

  ConvexSetSpec set() {
    const auto name = ident();
    if (name == "ball") {
      expect('(');
      Point c = point();
      expect(',');
      const double r = number();
      expect(')');
      return ball_set(model_.space, std::move(c), r);
    }
    if (name == "segment") {
      expect('(');
      Point a = point();
      expect(',');
      Point b = point();
      expect(')');
      return segment_set(model_.space, std::move(a), std::move(b));
    }
    fail("unknown set constructor '" + name + "'");
  }

  ConvexFunctional parse_expr() {
    const auto name = ident();
    if (name == "sqdist") {
      expect('(');
      Point p = point();
      expect(')');
      return ConvexFunctional::half_sq_dist_to(std::move(p));
    }
    if (name == "dist") {
      expect('(');
      Point p = point();
      expect(')');
      return ConvexFunctional::dist_to(std::move(p));
    }
    if (name == "indicator") {
      expect('(');
      auto s = set();
      expect(')');
      return ConvexFunctional::indicator_of(std::move(s));
    }
    if (name == "scale") {
      expect('(');
      const double c = number();
      expect(',');
      auto f = parse_expr();
      expect(')');
      return ConvexFunctional::scale(c, std::move(f));
    }
    if (name == "sum" || name == "max") {
      expect('(');
      auto a = parse_expr();
      expect(',');
      auto b = parse_expr();
      expect(')');
      return name == "sum" ? ConvexFunctional::sum(std::move(a), std::move(b))
                           : ConvexFunctional::max_of(std::move(a), std::move(b));
    }
    fail("unknown functional '" + name + "'");
  }

  const ModelSpace& model_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ConvexFunctional parse_functional(const ModelSpace& model, std::string_view text) {
  return detail::FunctionalParser(model, text).parse();
}

/// A default box search region for prox problems on a model.
inline SetChart default_search_region(const ModelSpace& model, double half_width) {
  SetChart chart;
  switch (model.params.kind) {
    case ModelKind::euclidean:
    case ModelKind::lp: {
      const std::size_t n = model.params.dim;
      chart.bounds.assign(n, {-half_width, half_width});
      const auto kind = model.params.kind;
      chart.map = [kind](const std::vector<double>& t) { return vector_point(kind, t); };
      break;
    }
    case ModelKind::poincare: {
      const double w = std::min(half_width, 0.95 / std::sqrt(2.0));
      chart.bounds.assign(2, {-w, w});
      chart.map = [](const std::vector<double>& t) {
        return vector_point(ModelKind::poincare, t);
      };
      break;
    }
    case ModelKind::tree: {
      auto tree = std::static_pointer_cast<const MetricTree>(model.space);
      // One parameter: arc length along the edge sequence, mapped per edge.
      chart.bounds = {{0.0, 1.0}, {0.0, 1.0}};
      const int edges = static_cast<int>(tree->edges().size());
      chart.map = [tree, edges](const std::vector<double>& t) {
        const int e = std::min(edges - 1, static_cast<int>(t[0] * edges));
        const double len = tree->edges()[e].length;
        return tree->make_point(e, std::clamp(t[1], 0.0, 1.0) * len);
      };
      break;
    }
  }
  return chart;
}

}  // namespace ucw
