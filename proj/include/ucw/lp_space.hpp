#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ucw/geodesic_space.hpp"

namespace ucw {

/// R^n with the p-norm, p >= 2, and linear interpolation as W. A uniformly
/// convex normed space that is not CAT(0) for p > 2, shipped as the
/// non-Hilbertian test instance.
class LpSpace final : public GeodesicSpace {
 public:
  LpSpace(double p, std::size_t dim, double r_sample, std::string name = "lp")
      : p_(p), dim_(dim), r_sample_(r_sample), name_(std::move(name)) {
    if (!(p_ >= 2.0)) throw UsageError("lp: exponent p must be >= 2, got " + std::to_string(p_));
    if (dim_ < 1) throw UsageError("lp: dimension must be >= 1");
    if (!(r_sample_ > 0.0)) throw UsageError("lp: sampling radius must be positive");
  }

  ModelKind kind() const override { return ModelKind::lp; }
  const std::string& name() const override { return name_; }
  double tol() const override { return 1e-9; }
  std::size_t dim() const { return dim_; }
  double exponent() const { return p_; }
  double sampling_radius() const { return r_sample_; }

  double dist(const Point& x, const Point& y) const override {
    require_member(x);
    require_member(y);
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      s += std::pow(std::abs(x.coords[i] - y.coords[i]), p_);
    return std::pow(s, 1.0 / p_);
  }

  Point sample(Rng& rng) const override {
    Point p;
    p.kind = ModelKind::lp;
    p.coords.resize(dim_);
    for (auto& c : p.coords) c = rng.uniform(-r_sample_, r_sample_);
    return p;
  }

  Point make(std::vector<double> coords) const {
    Point p = vector_point(ModelKind::lp, std::move(coords));
    require_member(p);
    return p;
  }

 protected:
  Point combine_interior(const Point& x, const Point& y, double lam) const override {
    Point p;
    p.kind = ModelKind::lp;
    p.coords.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      p.coords[i] = (1.0 - lam) * x.coords[i] + lam * y.coords[i];
    return p;
  }

  void check_member(const Point& p) const override {
    if (p.coords.size() != dim_)
      throw UsageError("lp: point dimension " + std::to_string(p.coords.size()) +
                       " != space dimension " + std::to_string(dim_));
  }

 private:
  double p_;
  std::size_t dim_;
  double r_sample_;
  std::string name_;
};

}  // namespace ucw
