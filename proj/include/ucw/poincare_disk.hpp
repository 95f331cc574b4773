#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "ucw/geodesic_space.hpp"

namespace ucw {

/// The Poincare disk: the open unit disk of R^2 with
///   d(u,v) = arccosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))).
/// Internally the equivalent form d = 2 artanh(|u-v| / |1 - conj(u) v|) is
/// used; it is exact for the same metric and numerically stable for nearby
/// points. Geodesic combination conjugates by the Mobius isometry that moves
/// x to the origin, where geodesics are radial.
class PoincareDisk final : public GeodesicSpace {
 public:
  static constexpr double kBoundaryMargin = 1e-12;

  explicit PoincareDisk(double r_sample, std::string name = "poincare")
      : r_sample_(r_sample), name_(std::move(name)) {
    if (!(r_sample_ > 0.0 && r_sample_ < 1.0))
      throw UsageError("poincare: sampling radius must lie in (0,1)");
  }

  ModelKind kind() const override { return ModelKind::poincare; }
  const std::string& name() const override { return name_; }
  double tol() const override { return 1e-7; }
  double sampling_radius() const { return r_sample_; }

  double dist(const Point& x, const Point& y) const override {
    require_member(x);
    require_member(y);
    const auto u = as_complex(x);
    const auto v = as_complex(y);
    const double num = std::abs(u - v);
    const double den = std::abs(1.0 - std::conj(u) * v);
    return 2.0 * std::atanh(num / den);
  }

  /// Uniform (in the Euclidean chart) on the closed sub-disk of radius
  /// r_sample; adequate for counterexample search, not hyperbolically uniform.
  Point sample(Rng& rng) const override {
    const double rho = r_sample_ * std::sqrt(rng.next_unit());
    const double phi = rng.uniform(0.0, 6.283185307179586476925286766559);
    return make({rho * std::cos(phi), rho * std::sin(phi)});
  }

  Point make(std::vector<double> coords) const {
    Point p = vector_point(ModelKind::poincare, std::move(coords));
    require_member(p);
    return p;
  }

 protected:
  Point combine_interior(const Point& x, const Point& y, double lam) const override {
    const auto u = as_complex(x);
    const auto v = as_complex(y);
    // Image of y under the isometry z -> (z - u)/(1 - conj(u) z), which
    // sends x to 0; geodesics through 0 are Euclidean radii.
    const auto w = (v - u) / (1.0 - std::conj(u) * v);
    const double aw = std::abs(w);
    if (aw < 1e-300) return x;
    const double total = 2.0 * std::atanh(aw);
    const double s = std::tanh(0.5 * lam * total);
    const auto z = (s / aw) * w;
    const auto r = (z + u) / (1.0 + std::conj(u) * z);
    Point p;
    p.kind = ModelKind::poincare;
    p.coords = {r.real(), r.imag()};
    return p;
  }

  void check_member(const Point& p) const override {
    if (p.coords.size() != 2) throw UsageError("poincare: points are 2-dimensional");
    const double n2 = p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1];
    if (!(n2 < 1.0 - kBoundaryMargin))
      throw UsageError("poincare: point norm^2 = " + std::to_string(n2) +
                       " violates the open-disk bound");
  }

 private:
  static std::complex<double> as_complex(const Point& p) {
    return {p.coords[0], p.coords[1]};
  }

  double r_sample_;
  std::string name_;
};

}  // namespace ucw
