#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ucw/axiom_report.hpp"
#include "ucw/models.hpp"

namespace ucw {

namespace detail {

inline std::string format_tuple(std::initializer_list<const Point*> pts,
                                std::initializer_list<double> scalars) {
  std::string s;
  for (const Point* p : pts) {
    if (!s.empty()) s += " ";
    s += format_point(*p);
  }
  char buf[32];
  for (double v : scalars) {
    std::snprintf(buf, sizeof(buf), " %.17g", v);
    s += buf;
  }
  return s;
}

/// Tuple sampler with a fixed 1% rate of duplicated points, so degenerate
/// (x = y) geodesics are always exercised.
inline Point sample_tuple_point(const GeodesicSpace& space, Rng& rng,
                                const std::vector<Point>& prior) {
  if (!prior.empty() && rng.next_unit() < 0.01)
    return prior[static_cast<std::size_t>(rng.below(prior.size()))];
  return space.sample(rng);
}

}  // namespace detail

/// Randomized verification of the metric axioms and the convexity-operator
/// axioms (W1)-(W5), plus the squared-distance convexity consequence and the
/// geodesic length consistency of combine. One report per check id.
inline std::vector<AxiomReport> check_axioms(const GeodesicSpace& space, std::uint64_t seed,
                                             std::uint64_t trials, double tol) {
  if (trials < 1) throw UsageError("check_axioms: trials must be >= 1");
  const char* ids[] = {"metric", "W1", "W2", "W3", "W4", "W5", "quad_convexity", "geodesic"};
  std::vector<AxiomReport> reports;
  for (std::size_t a = 0; a < std::size(ids); ++a) {
    AxiomReport rep;
    rep.id = ids[a];
    rep.tolerance = tol;
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng rng = Rng::derive(seed, a, t);
      std::vector<Point> pts;
      auto next = [&]() {
        pts.push_back(detail::sample_tuple_point(space, rng, pts));
        return pts.back();
      };
      switch (a) {
        case 0: {  // metric: symmetry, identity, nonnegativity, triangle
          const Point x = next(), y = next(), z = next();
          const double dxy = space.dist(x, y);
          const double dyx = space.dist(y, x);
          double gap = std::abs(dxy - dyx);
          gap = std::max(gap, space.dist(x, x));
          gap = std::max(gap, -dxy);
          gap = std::max(gap, space.dist(x, z) - (dxy + space.dist(y, z)));
          rep.record(dxy, dyx, gap, detail::format_tuple({&x, &y, &z}, {}));
          break;
        }
        case 1: {  // W1
          const Point x = next(), y = next(), z = next();
          const double lam = rng.next_unit();
          const double lhs = space.dist(z, space.combine(x, y, lam));
          const double rhs = (1.0 - lam) * space.dist(z, x) + lam * space.dist(z, y);
          rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&x, &y, &z}, {lam}));
          break;
        }
        case 2: {  // W2 (equality, two-sided)
          const Point x = next(), y = next();
          const double lam = rng.next_unit(), mu = rng.next_unit();
          const double lhs = space.dist(space.combine(x, y, lam), space.combine(x, y, mu));
          const double rhs = std::abs(lam - mu) * space.dist(x, y);
          rep.record(lhs, rhs, std::abs(lhs - rhs), detail::format_tuple({&x, &y}, {lam, mu}));
          break;
        }
        case 3: {  // W3
          const Point x = next(), y = next();
          const double lam = rng.next_unit();
          const double lhs = space.dist(space.combine(x, y, lam), space.combine(y, x, 1.0 - lam));
          rep.record(lhs, 0.0, lhs, detail::format_tuple({&x, &y}, {lam}));
          break;
        }
        case 4: {  // W4
          const Point x = next(), y = next(), z = next(), w = next();
          const double lam = rng.next_unit();
          const double lhs = space.dist(space.combine(x, z, lam), space.combine(y, w, lam));
          const double rhs = (1.0 - lam) * space.dist(x, y) + lam * space.dist(z, w);
          rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&x, &y, &z, &w}, {lam}));
          break;
        }
        case 5: {  // W5
          const Point x = next(), y = next(), z = next();
          const double lam = rng.next_unit();
          const double lhs = space.dist(space.combine(x, z, lam), space.combine(y, z, lam));
          const double rhs = space.dist(x, y);
          rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&x, &y, &z}, {lam}));
          break;
        }
        case 6: {  // squared-distance convexity along geodesics
          const Point x = next(), y = next(), a2 = next();
          const double lam = rng.next_unit();
          const double dz = space.dist(space.combine(x, y, lam), a2);
          const double dx = space.dist(x, a2), dy = space.dist(y, a2);
          const double lhs = dz * dz;
          const double rhs = (1.0 - lam) * dx * dx + lam * dy * dy;
          rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&x, &y, &a2}, {lam}));
          break;
        }
        case 7: {  // dist(x, combine(x,y,lam)) = lam * dist(x,y)
          const Point x = next(), y = next();
          const double lam = rng.next_unit();
          const double lhs = space.dist(x, space.combine(x, y, lam));
          const double rhs = lam * space.dist(x, y);
          rep.record(lhs, rhs, std::abs(lhs - rhs), detail::format_tuple({&x, &y}, {lam}));
          break;
        }
      }
    }
    reports.push_back(std::move(rep));
  }
  return reports;
}

/// Midpoint CAT(0) inequality on random triples. Only meaningful for the
/// CAT(0) members; requesting it for lp with p > 2 is a usage error.
inline AxiomReport check_cat0(const ModelSpace& model, std::uint64_t seed, std::uint64_t trials,
                              double tol) {
  if (!model.is_cat0())
    throw UsageError("check_cat0: " + model.space->name() +
                     " (p = " + std::to_string(model.params.p) +
                     " > 2) is not a CAT(0) space");
  const auto& space = *model.space;
  AxiomReport rep;
  rep.id = "cat0";
  rep.tolerance = tol;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 101, t);
    std::vector<Point> pts;
    const Point x = detail::sample_tuple_point(space, rng, pts);
    pts.push_back(x);
    const Point y = detail::sample_tuple_point(space, rng, pts);
    pts.push_back(y);
    const Point a = detail::sample_tuple_point(space, rng, pts);
    const double dm = space.dist(space.combine(x, y, 0.5), a);
    const double dx = space.dist(x, a), dy = space.dist(y, a), dxy = space.dist(x, y);
    const double lhs = dm * dm;
    const double rhs = 0.5 * dx * dx + 0.5 * dy * dy - 0.25 * dxy * dxy;
    rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&x, &y, &a}, {}));
  }
  return rep;
}

/// A sampled anchored pair: d(x,a) <= r, d(y,a) <= r, d(x,y) >= eps.
struct ConstrainedTriple {
  Point a, x, y;
  double r = 0.0;
  double eps = 0.0;  // absolute separation actually enforced
};

namespace detail {

inline std::optional<Point> point_at_distance_within(const GeodesicSpace& space, Rng& rng,
                                                     const Point& a, double r) {
  const Point w = space.sample(rng);
  const double d = space.dist(a, w);
  if (d < 1e-12) return std::nullopt;
  const double u = rng.uniform(0.0, std::min(r, d));
  return space.combine(a, w, u / d);
}

/// Rejection sampler for the property-(G) premises. The requested separation
/// is a fraction of r drawn from (0.02, eps_fraction_max]; c.eps records the
/// absolute separation enforced.
inline std::optional<ConstrainedTriple> sample_constrained(const GeodesicSpace& space, Rng& rng,
                                                           double r_lo, double r_hi,
                                                           double eps_fraction_max) {
  const Point a = space.sample(rng);
  const double r = rng.uniform(r_lo, r_hi);
  const double frac = rng.uniform(0.02, eps_fraction_max);
  const double sep = frac * r;
  for (int retry = 0; retry < 1000; ++retry) {
    auto x = point_at_distance_within(space, rng, a, r);
    auto y = point_at_distance_within(space, rng, a, r);
    if (!x || !y) continue;
    if (space.dist(*x, *y) >= sep) {
      ConstrainedTriple c;
      c.a = a;
      c.x = *x;
      c.y = *y;
      c.r = r;
      c.eps = sep;
      return c;
    }
  }
  return std::nullopt;
}

inline double model_r_hi(const ModelSpace& model) {
  switch (model.params.kind) {
    case ModelKind::poincare: return 2.0;
    case ModelKind::tree:
      return 0.9 * std::static_pointer_cast<const MetricTree>(model.space)->total_length();
    default: return 1.5 * model.params.r_sample;
  }
}

}  // namespace detail

/// Property (G) with modulus psi: on constrained triples,
///   d^2(mid, a) <= 1/2 d^2(x,a) + 1/2 d^2(y,a) - psi(r, eps).
inline AxiomReport check_property_g(const ModelSpace& model, const PropertyGModulus& psi,
                                    std::uint64_t seed, std::uint64_t trials, double tol) {
  const auto& space = *model.space;
  AxiomReport rep;
  rep.id = std::string("property_g[") + psi.name + "]";
  rep.tolerance = tol;
  const double r_hi = detail::model_r_hi(model);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 201, t);
    auto c = detail::sample_constrained(space, rng, 0.05 * r_hi, r_hi, 1.2);
    if (!c) {
      ++rep.skipped;
      continue;
    }
    const double dm = space.dist(space.combine(c->x, c->y, 0.5), c->a);
    const double dx = space.dist(c->x, c->a), dy = space.dist(c->y, c->a);
    const double lhs = dm * dm;
    const double rhs = 0.5 * dx * dx + 0.5 * dy * dy - psi.eval(c->r, c->eps);
    rep.record(lhs, rhs, lhs - rhs, detail::format_tuple({&c->a, &c->x, &c->y}, {c->r, c->eps}));
  }
  if (rep.skipped > rep.trials)
    throw SolverError("check_property_g: constraint sampler starved (infeasible (r,eps) ranges)",
                      static_cast<double>(rep.skipped));
  return rep;
}

/// Lambda-weighted uniform convexity of the squared distance: both the
/// 2*min(lam, 1-lam) form and the weaker 2*lam*(1-lam) form, plus the
/// half-geodesic chain d^2(z,a) <= (1-2 lam) d^2(x,a) + 2 lam d^2(m,a)
/// (lam <= 1/2) used to derive them.
inline std::vector<AxiomReport> check_lambda_convexity(const ModelSpace& model, std::uint64_t seed,
                                                       std::uint64_t trials, double tol) {
  const auto& space = *model.space;
  std::vector<AxiomReport> reports(3);
  reports[0].id = "lambda_convexity_min";
  reports[1].id = "lambda_convexity_product";
  reports[2].id = "halving_chain";
  for (auto& r : reports) r.tolerance = tol;
  const double r_hi = detail::model_r_hi(model);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 301, t);
    auto c = detail::sample_constrained(space, rng, 0.05 * r_hi, r_hi, 1.2);
    if (!c) {
      for (auto& r : reports) ++r.skipped;
      continue;
    }
    const double lam = rng.next_unit();
    const double psi = psi_eta(model.eta, c->r, c->eps);
    const Point z = space.combine(c->x, c->y, lam);
    const double dz = space.dist(z, c->a);
    const double dx = space.dist(c->x, c->a), dy = space.dist(c->y, c->a);
    const double base = (1.0 - lam) * dx * dx + lam * dy * dy;
    const auto inputs = detail::format_tuple({&c->a, &c->x, &c->y}, {c->r, c->eps, lam});
    reports[0].record(dz * dz, base - 2.0 * std::min(lam, 1.0 - lam) * psi,
                      dz * dz - (base - 2.0 * std::min(lam, 1.0 - lam) * psi), inputs);
    reports[1].record(dz * dz, base - 2.0 * lam * (1.0 - lam) * psi,
                      dz * dz - (base - 2.0 * lam * (1.0 - lam) * psi), inputs);
    const double lam_half = 0.5 * lam;  // always <= 1/2
    const Point z2 = space.combine(c->x, c->y, lam_half);
    const Point m = space.combine(c->x, c->y, 0.5);
    const double dz2 = space.dist(z2, c->a), dm = space.dist(m, c->a);
    reports[2].record(dz2 * dz2, (1.0 - 2.0 * lam_half) * dx * dx + 2.0 * lam_half * dm * dm,
                      dz2 * dz2 - ((1.0 - 2.0 * lam_half) * dx * dx + 2.0 * lam_half * dm * dm),
                      inputs);
  }
  return reports;
}

/// The defining inequality of the modulus of uniform convexity:
/// d(x,a) <= r, d(y,a) <= r, d(x,y) >= eps*r imply
/// d(mid, a) <= (1 - eta(r, eps)) * r.
inline AxiomReport check_uc_certificate(const ModelSpace& model, std::uint64_t seed,
                                        std::uint64_t trials, double tol) {
  const auto& space = *model.space;
  AxiomReport rep;
  rep.id = "uc_certificate[" + model.eta.name + "]";
  rep.tolerance = tol;
  const double r_hi = detail::model_r_hi(model);
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::derive(seed, 401, t);
    auto c = detail::sample_constrained(space, rng, 0.05 * r_hi, r_hi, 1.6);
    if (!c) {
      ++rep.skipped;
      continue;
    }
    const double eps_rel = c->eps / c->r;
    const double lhs = space.dist(space.combine(c->x, c->y, 0.5), c->a);
    const double rhs = (1.0 - model.eta(c->r, eps_rel)) * c->r;
    rep.record(lhs, rhs, lhs - rhs,
               detail::format_tuple({&c->a, &c->x, &c->y}, {c->r, eps_rel}));
  }
  return rep;
}

}  // namespace ucw
