#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ucw/geodesic_space.hpp"

namespace ucw {

/// R^n with the Euclidean norm; W is linear interpolation. Sampling is
/// uniform on the coordinate box [-r_sample, r_sample]^n.
class EuclideanSpace final : public GeodesicSpace {
 public:
  EuclideanSpace(std::size_t dim, double r_sample, std::string name = "euclidean")
      : dim_(dim), r_sample_(r_sample), name_(std::move(name)) {
    if (dim_ < 1) throw UsageError("euclidean: dimension must be >= 1");
    if (!(r_sample_ > 0.0)) throw UsageError("euclidean: sampling radius must be positive");
  }

  ModelKind kind() const override { return ModelKind::euclidean; }
  const std::string& name() const override { return name_; }
  double tol() const override { return 1e-9; }
  std::size_t dim() const { return dim_; }
  double sampling_radius() const { return r_sample_; }

  double dist(const Point& x, const Point& y) const override {
    require_member(x);
    require_member(y);
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double d = x.coords[i] - y.coords[i];
      s += d * d;
    }
    return std::sqrt(s);
  }

  Point sample(Rng& rng) const override {
    Point p;
    p.kind = ModelKind::euclidean;
    p.coords.resize(dim_);
    for (auto& c : p.coords) c = rng.uniform(-r_sample_, r_sample_);
    return p;
  }

  Point make(std::vector<double> coords) const {
    Point p = vector_point(ModelKind::euclidean, std::move(coords));
    require_member(p);
    return p;
  }

 protected:
  Point combine_interior(const Point& x, const Point& y, double lam) const override {
    Point p;
    p.kind = ModelKind::euclidean;
    p.coords.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      p.coords[i] = (1.0 - lam) * x.coords[i] + lam * y.coords[i];
    return p;
  }

  void check_member(const Point& p) const override {
    if (p.coords.size() != dim_)
      throw UsageError("euclidean: point dimension " + std::to_string(p.coords.size()) +
                       " != space dimension " + std::to_string(dim_));
  }

 private:
  std::size_t dim_;
  double r_sample_;
  std::string name_;
};

}  // namespace ucw
