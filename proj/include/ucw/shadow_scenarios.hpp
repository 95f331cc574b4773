#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ucw/shadow.hpp"

namespace ucw {

/// One (trace, S) pair with its certified constants. `b` bounds
/// d(x0, P_S x0); quasi scenarios also carry the summable-error bound B.
/// Every shipped scenario converges, so shadow tails settle below 1e-6.
struct ShadowScenario {
  std::string name;
  ModelSpace model;
  ConvexSetSpec set;
  std::shared_ptr<IterationTrace> trace;
  double b = 1.0;
  double B = 0.0;
  bool quasi = false;
};

namespace detail {

inline ModelSpace make_model(ModelKind kind, std::size_t dim = 2, double p = 2.0,
                             double r_sample = 1.0) {
  ModelParams params;
  params.kind = kind;
  params.dim = dim;
  params.p = p;
  params.r_sample = r_sample;
  if (kind == ModelKind::tree) return instantiate_model(demo_tree_params());
  return instantiate_model(params);
}

inline std::function<double(Index)> const_alpha(double a) {
  return [a](Index) { return a; };
}

/// Appends a kicked variant of a base step: after the base update, move by
/// exactly min(delta_n, reachable) toward a seeded random target. Triangle
/// inequality turns the base Fejer property into quasi-Fejer with (delta_n).
inline std::function<Point(Index, const Point&)> kicked_step(
    SpacePtr space, std::function<Point(Index, const Point&)> base,
    std::function<double(Index)> delta, std::uint64_t seed) {
  return [space, base = std::move(base), delta = std::move(delta), seed](Index n,
                                                                         const Point& x) {
    const Point y = base(n, x);
    Rng rng = Rng::derive(seed, 1101, n);
    const Point target = space->sample(rng);
    const double d = space->dist(y, target);
    if (d < 1e-12) return y;
    return space->combine(y, target, std::min(1.0, delta(n) / d));
  };
}

/// Ceil with a cap that keeps the Index cast defined even for degenerate
/// (underflowed) eps arguments.
inline Index tail_index(double k) {
  if (!(k > 0.0)) return 0;
  return static_cast<Index>(std::ceil(std::min(k, 1e7)));
}

inline std::function<Index(double)> geometric_gamma_tail(double c) {
  // sum_{i >= K} c 2^-i = 2c 2^-K <= eps  iff  K >= log2(2c/eps).
  return [c](double eps) { return tail_index(std::log2(2.0 * c / eps)); };
}

inline std::function<Index(double)> quarter_gamma_tail(double c) {
  // sum_{i >= K} c 4^-i = (4c/3) 4^-K <= eps  iff  K >= log4(4c/(3 eps)).
  return [c](double eps) { return tail_index(0.5 * std::log2(4.0 * c / (3.0 * eps))); };
}

}  // namespace detail

/// The standard campaign catalog: 22 scenarios spanning all four models,
/// Mann/Schu/custom traces, singleton/segment/ball/patch/subtree target sets,
/// and both the exact-Fejer and summable-error regimes.
inline std::vector<ShadowScenario> standard_shadow_scenarios(std::uint64_t seed) {
  std::vector<ShadowScenario> out;

  auto add = [&](ShadowScenario s) {
    // Certify b numerically at build time; the verifiers re-check it.
    const Point s0 = project(*s.model.space, s.set, s.trace->at(0));
    s.b = s.model.space->dist(s.trace->at(0), s0) * 1.02 + 0.05;
    out.push_back(std::move(s));
  };

  // ---- Euclidean R^2 ------------------------------------------------------
  {
    auto m = detail::make_model(ModelKind::euclidean, 2, 2.0, 5.0);
    auto& sp = static_cast<const EuclideanSpace&>(*m.space);

    {
      ShadowScenario s;
      s.name = "e2/mann-axis-projection/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0}), {sp.make({1, 0})}, {{-6.0, 6.0}}, 1,
                               "x-axis segment");
      s.trace = std::make_shared<IterationTrace>(
          mann_iteration(m.space, axis_projection_map(m.space, 1), sp.make({3, 4}),
                         detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "e2/mann-rotation/origin";
      s.model = m;
      s.set = singleton_set(m.space, sp.make({0, 0}), "origin");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, rotation_map(m.space, 0.5), sp.make({2, 1}), detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "e2/mann-ball-projection/ball";
      s.model = m;
      const Point c = sp.make({1, 0});
      s.set = ball_set(m.space, c, 1.0);
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, ball_projection_map(m.space, c, 1.0), sp.make({4.5, 0.2}),
          detail::const_alpha(0.7)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "e2/harmonic-ball-projection/ball";
      s.model = m;
      const Point c = sp.make({-1, 0.5});
      s.set = ball_set(m.space, c, 0.8);
      s.trace = std::make_shared<IterationTrace>(
          mann_iteration(m.space, ball_projection_map(m.space, c, 0.8), sp.make({3, -2}),
                         [](Index n) { return 1.0 / static_cast<double>(n + 2); }));
      add(std::move(s));
    }
    {
      // Drifting custom trace: x_n = (1 + 0.1 4^-n, 3 2^-n). The vertical
      // squared drop 6.75 * 4^-n dominates the horizontal drift term
      // (<= 1.7 * 4^-n against every q in the segment), so the trace is Fejer
      // w.r.t. the segment and its shadows genuinely move.
      ShadowScenario s;
      s.name = "e2/custom-drift/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0}), {sp.make({1, 0})}, {{-10.0, 10.0}}, 1,
                               "x-axis segment");
      s.trace = std::make_shared<IterationTrace>(custom_trace(m.space, [&sp](Index n) {
        const double q = std::pow(0.25, static_cast<double>(n));
        return sp.make({1.0 + 0.1 * q, 3.0 * std::pow(0.5, static_cast<double>(n))});
      }, "drift"));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "e2/custom-drift-negative/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0}), {sp.make({1, 0})}, {{-10.0, 10.0}}, 1,
                               "x-axis segment");
      s.trace = std::make_shared<IterationTrace>(custom_trace(m.space, [&sp](Index n) {
        const double q = std::pow(0.25, static_cast<double>(n));
        return sp.make({-0.5 + 0.2 * q, 3.0 * std::pow(0.5, static_cast<double>(n))});
      }, "drift2"));
      add(std::move(s));
    }
    {
      // Quasi variant: bounded dips w_n = 0.05 4^-n s_n recover within
      // delta_n = 0.1 4^-n (|w_n| + |w_{n+1}| <= 0.0625 4^-n).
      ShadowScenario s;
      s.name = "e2/custom-drift-dips/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0}), {sp.make({1, 0})}, {{-10.0, 10.0}}, 1,
                               "x-axis segment");
      s.trace = std::make_shared<IterationTrace>(custom_trace(m.space, [&sp, seed](Index n) {
        const double q = std::pow(0.25, static_cast<double>(n));
        const double w = 0.05 * q * Rng::derive(seed, 1201, n).uniform(-1.0, 1.0);
        return sp.make({1.0 + 0.1 * q + w, 3.0 * std::pow(0.5, static_cast<double>(n))});
      }, "drift-dips"));
      s.trace->set_error_seq([](Index n) { return 0.1 * std::pow(0.25, static_cast<double>(n)); },
                             detail::quarter_gamma_tail(0.1), 0.1 * 4.0 / 3.0);
      s.quasi = true;
      s.B = 0.1 * 4.0 / 3.0;
      add(std::move(s));
    }
    {
      // Schu iteration of the collapse map, quasi-Fejer w.r.t. {0} with
      // delta'_n = delta_n * D, D a certified bound on d(x_n, 0).
      ShadowScenario s;
      s.name = "e2/schu-collapse/origin";
      s.model = m;
      s.set = singleton_set(m.space, sp.make({0, 0}), "origin");
      auto T = collapse_map(m.space, 1.0);
      const Point x0 = sp.make({2.5, 1});
      const double D = sp.dist(x0, sp.make({0, 0})) * std::exp(2.0) * 1.1;
      s.trace = std::make_shared<IterationTrace>(
          schu_iteration(m.space, T, x0, detail::const_alpha(0.5)));
      s.trace->set_error_seq(
          [D](Index n) { return D * std::pow(0.5, static_cast<double>(n)); },
          detail::geometric_gamma_tail(D), 2.0 * D);
      s.quasi = true;
      s.B = 2.0 * D;
      add(std::move(s));
    }
  }

  // ---- Euclidean R^5: multi-parameter chart -------------------------------
  {
    auto m = detail::make_model(ModelKind::euclidean, 5, 2.0, 3.0);
    auto& sp = static_cast<const EuclideanSpace&>(*m.space);
    ShadowScenario s;
    s.name = "e5/mann-axis-projection/patch";
    s.model = m;
    s.set = affine_patch_set(
        m.space, sp.make({0, 0, 0, 0, 0}),
        {sp.make({1, 0, 0, 0, 0}), sp.make({0, 1, 0, 0, 0})}, {{-4.0, 4.0}, {-4.0, 4.0}}, -1,
        "xy-patch");
    s.trace = std::make_shared<IterationTrace>(
        mann_iteration(m.space, axis_projection_map(m.space, 2), sp.make({0.5, -0.7, 2, 1, -1}),
                       detail::const_alpha(0.5)));
    add(std::move(s));
  }

  // ---- lp (p = 4, n = 3) ---------------------------------------------------
  {
    auto m = detail::make_model(ModelKind::lp, 3, 4.0, 2.0);
    auto& sp = static_cast<const LpSpace&>(*m.space);

    {
      // Drift certified in the 4-norm: |u'-t|^4 - |u-t|^4 <= 0.33 16^-n while
      // the v^4 drop is 0.9375 16^-n.
      ShadowScenario s;
      s.name = "lp/custom-drift/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0, 0}), {sp.make({1, 0, 0})}, {{-3.0, 3.0}},
                               1, "axis segment");
      s.trace = std::make_shared<IterationTrace>(custom_trace(m.space, [&sp](Index n) {
        const double q16 = std::pow(16.0, -static_cast<double>(n));
        return sp.make({0.5 + 0.002 * q16, std::pow(0.5, static_cast<double>(n)), 0.0});
      }, "lp-drift"));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "lp/mann-contraction/center";
      s.model = m;
      const Point c = sp.make({0.3, 0, 0});
      s.set = singleton_set(m.space, c, "center");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, contraction_map(m.space, c, 0.8), sp.make({1.5, 1, -0.5}),
          detail::const_alpha(0.6)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "lp/mann-axis-projection/segment";
      s.model = m;
      s.set = affine_patch_set(m.space, sp.make({0, 0, 0}), {sp.make({1, 0, 0})}, {{-3.0, 3.0}},
                               1, "axis segment");
      s.trace = std::make_shared<IterationTrace>(
          mann_iteration(m.space, axis_projection_map(m.space, 1), sp.make({0.5, 1.5, -1}),
                         detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "lp/schu-collapse/origin";
      s.model = m;
      s.set = singleton_set(m.space, sp.make({0, 0, 0}), "origin");
      auto T = collapse_map(m.space, 1.0);
      const Point x0 = sp.make({2.5, 1, 0.5});
      const double D = sp.dist(x0, sp.make({0, 0, 0})) * std::exp(2.0) * 1.1;
      s.trace = std::make_shared<IterationTrace>(
          schu_iteration(m.space, T, x0, detail::const_alpha(0.5)));
      s.trace->set_error_seq(
          [D](Index n) { return D * std::pow(0.5, static_cast<double>(n)); },
          detail::geometric_gamma_tail(D), 2.0 * D);
      s.quasi = true;
      s.B = 2.0 * D;
      add(std::move(s));
    }
  }

  // ---- Poincare disk -------------------------------------------------------
  {
    auto m = detail::make_model(ModelKind::poincare, 2, 2.0, 0.9);
    auto& sp = static_cast<const PoincareDisk&>(*m.space);

    {
      ShadowScenario s;
      s.name = "disk/mann-contraction/center";
      s.model = m;
      const Point c = sp.make({0.2, 0});
      s.set = singleton_set(m.space, c, "center");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, contraction_map(m.space, c, 0.8), sp.make({-0.5, 0.4}),
          detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "disk/mann-rotation/origin";
      s.model = m;
      s.set = singleton_set(m.space, sp.make({0, 0}), "origin");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, rotation_map(m.space, 0.7), sp.make({0.4, 0.2}), detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "disk/mann-ball-projection/ball";
      s.model = m;
      const Point c = sp.make({0, 0});
      s.set = ball_set(m.space, c, 0.8);  // hyperbolic radius
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, ball_projection_map(m.space, c, 0.8), sp.make({0.8, 0.3}),
          detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      // Mann iteration of the (ternary-search) metric projection onto a
      // geodesic segment; exercises the generic projection inside the trace.
      ShadowScenario s;
      s.name = "disk/mann-segment-projection/segment";
      s.model = m;
      s.set = segment_set(m.space, sp.make({-0.5, 0}), sp.make({0.5, 0}), "diameter segment");
      MappingSpec P;
      P.name = "segment_projection";
      auto set_copy = s.set;
      auto space = m.space;
      P.apply = [space, set_copy](const Point& p) { return project(*space, set_copy, p); };
      P.iterate_n = [apply = P.apply](const Point& p, std::uint64_t n) {
        return n == 0 ? p : apply(p);
      };
      P.sample_fixed_point = set_copy.sample_witness;
      s.trace = std::make_shared<IterationTrace>(
          mann_iteration(m.space, P, sp.make({0.3, 0.5}), detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "disk/mann-segment-projection-kicked/segment";
      s.model = m;
      s.set = segment_set(m.space, sp.make({-0.5, 0}), sp.make({0.5, 0}), "diameter segment");
      MappingSpec P;
      P.name = "segment_projection";
      auto set_copy = s.set;
      auto space = m.space;
      P.apply = [space, set_copy](const Point& p) { return project(*space, set_copy, p); };
      P.sample_fixed_point = set_copy.sample_witness;
      auto base = [space, P](Index, const Point& x) {
        return space->combine(x, P.apply(x), 0.5);
      };
      auto delta = [](Index n) { return 0.01 * std::pow(0.5, static_cast<double>(n)); };
      s.trace = std::make_shared<IterationTrace>(IterationTrace(
          IterationTrace::Scheme::custom, m.space, sp.make({0.3, 0.5}),
          detail::kicked_step(m.space, base, delta, seed), "kicked-mann"));
      s.trace->set_error_seq(delta, detail::geometric_gamma_tail(0.01), 0.02);
      s.quasi = true;
      s.B = 0.02;
      add(std::move(s));
    }
  }

  // ---- Metric tree ---------------------------------------------------------
  {
    auto m = detail::make_model(ModelKind::tree);
    auto tree = std::static_pointer_cast<const MetricTree>(m.space);
    std::vector<bool> ab(tree->vertex_count(), false);
    ab[0] = ab[1] = true;

    {
      ShadowScenario s;
      s.name = "tree/mann-fold/subtree";
      s.model = m;
      s.set = subtree_set(tree, ab, "subtree{A,B}");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, tree_fold_map(tree, ab), tree->make_point(1, 1.7), detail::const_alpha(0.5)));
      add(std::move(s));
    }
    {
      // March along edge B-C toward B: d(x_n, q) = offset_n + d(B, q) for
      // every q in the subtree, so the trace is exactly Fejer.
      ShadowScenario s;
      s.name = "tree/custom-march/subtree";
      s.model = m;
      s.set = subtree_set(tree, ab, "subtree{A,B}");
      s.trace = std::make_shared<IterationTrace>(custom_trace(m.space, [tree](Index n) {
        return tree->make_point(1, 1.8 * std::pow(0.5, static_cast<double>(n)));
      }, "march"));
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "tree/mann-fold-kicked/subtree";
      s.model = m;
      s.set = subtree_set(tree, ab, "subtree{A,B}");
      auto T = tree_fold_map(tree, ab);
      auto space = m.space;
      auto base = [space, T](Index, const Point& x) {
        return space->combine(x, T.apply(x), 0.5);
      };
      auto delta = [](Index n) { return 0.02 * std::pow(0.5, static_cast<double>(n)); };
      s.trace = std::make_shared<IterationTrace>(IterationTrace(
          IterationTrace::Scheme::custom, m.space, tree->make_point(1, 1.7),
          detail::kicked_step(m.space, base, delta, seed ^ 0x5a5a), "kicked-fold"));
      s.trace->set_error_seq(delta, detail::geometric_gamma_tail(0.02), 0.04);
      s.quasi = true;
      s.B = 0.04;
      add(std::move(s));
    }
    {
      ShadowScenario s;
      s.name = "tree/mann-contraction/vertex";
      s.model = m;
      const Point c = tree->vertex_point(2);
      s.set = singleton_set(m.space, c, "vertex C");
      s.trace = std::make_shared<IterationTrace>(mann_iteration(
          m.space, contraction_map(m.space, c, 0.7), tree->vertex_point(0),
          detail::const_alpha(0.5)));
      add(std::move(s));
    }
  }

  return out;
}

}  // namespace ucw
