#pragma once

#include <memory>
#include <string>

#include "ucw/errors.hpp"
#include "ucw/point.hpp"
#include "ucw/rng.hpp"

namespace ucw {

/// A metric space together with a convex-combination operator W and a seeded
/// point sampler. `combine(x, y, lam)` returns the point at parameter `lam`
/// on the distinguished geodesic from x to y, so dist(x, combine(x,y,lam)) =
/// lam * dist(x,y). Endpoints are returned exactly (no arithmetic) for
/// lam == 0 and lam == 1.
///
/// Instances are immutable after construction; all operations are pure.
class GeodesicSpace {
 public:
  virtual ~GeodesicSpace() = default;

  virtual ModelKind kind() const = 0;
  virtual const std::string& name() const = 0;

  /// Tolerance at which this model's arithmetic is trusted (1e-9 for the
  /// exact-formula models, 1e-7 for the transcendental Poincare metric).
  virtual double tol() const = 0;

  virtual double dist(const Point& x, const Point& y) const = 0;

  Point combine(const Point& x, const Point& y, double lam) const {
    require_member(x);
    require_member(y);
    if (!(lam >= 0.0 && lam <= 1.0))
      throw UsageError("combine: lambda must lie in [0,1], got " + std::to_string(lam));
    if (lam == 0.0) return x;
    if (lam == 1.0) return y;
    return combine_interior(x, y, lam);
  }

  /// A random point inside the model's bounded sampling region.
  virtual Point sample(Rng& rng) const = 0;

  void require_member(const Point& p) const {
    if (p.kind != kind())
      throw UsageError(std::string("point of model '") + to_string(p.kind) +
                       "' used with space '" + name() + "'");
    check_member(p);
  }

 protected:
  virtual Point combine_interior(const Point& x, const Point& y, double lam) const = 0;
  virtual void check_member(const Point& p) const = 0;
};

using SpacePtr = std::shared_ptr<const GeodesicSpace>;

}  // namespace ucw
