#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ucw/errors.hpp"

namespace ucw {

/// Modulus of uniform convexity eta(r, eps): for d(x,a) <= r, d(y,a) <= r and
/// d(x,y) >= eps*r the midpoint satisfies d(mid, a) <= (1 - eta(r,eps)) * r.
/// Monotone means nonincreasing in r for fixed eps. The closed-form modulus
/// transfer below is only valid for monotone moduli, so non-monotone inputs
/// are rejected by psi_eta.
struct UCModulus {
  std::function<double(double r, double eps)> eval;
  bool monotone = true;
  std::string name;

  double operator()(double r, double eps) const {
    if (!(r > 0.0)) throw UsageError("UCModulus: r must be positive");
    if (!(eps > 0.0 && eps <= 2.0)) throw UsageError("UCModulus: eps must lie in (0,2]");
    return eval(r, eps);
  }
};

/// eta(r, eps) = eps^2 / 8, valid for every CAT(0) space; constant in r.
inline UCModulus cat0_modulus() {
  return {[](double, double eps) { return eps * eps / 8.0; }, true, "cat0:eps^2/8"};
}

/// Clarkson-type modulus of the p-norm, p >= 2:
///   eta(r, eps) = 1 - (1 - (eps/2)^p)^(1/p), constant in r.
/// Evaluated as -expm1(log1p(-t)/p) with t = (eps/2)^p: the naive form
/// cancels to exactly 0 once t drops below the epsilon of 1.0, and a zero
/// modulus poisons every rate formula dividing by it.
inline UCModulus clarkson_modulus(double p) {
  if (!(p >= 2.0)) throw UsageError("clarkson_modulus: p must be >= 2");
  return {[p](double, double eps) {
            const double t = std::pow(eps / 2.0, p);
            if (t >= 1.0) return 1.0;
            return -std::expm1(std::log1p(-t) / p);
          },
          true, "clarkson:p=" + std::to_string(p)};
}

/// Modulus of uniform convexity of the squared distance derived from eta:
///
///   psi_eta(r, eps) = min( (min(eps/2, eps^2/(96 r) * eta^2))^2 / 4,
///                          eps^2/32 * eta^2 )
///   with eta evaluated at (r, min(eps/(2r), 2)).
///
/// Whenever d(x,a) <= r, d(y,a) <= r and d(x,y) >= eps, the midpoint gains
/// psi_eta(r,eps) in squared distance to a.
inline double psi_eta(const UCModulus& eta, double r, double eps) {
  if (!(r > 0.0)) throw UsageError("psi_eta: r must be positive");
  if (!(eps > 0.0)) throw UsageError("psi_eta: eps must be positive");
  if (!eta.monotone) throw UsageError("psi_eta: requires a monotone modulus");
  const double e2 = eta(r, std::min(eps / (2.0 * r), 2.0));
  const double gamma = eps * eps / 32.0 * e2 * e2;
  const double delta = std::min(eps / 2.0, eps * eps / (96.0 * r) * e2 * e2);
  return std::min(delta * delta / 4.0, gamma);
}

/// The direct squared-distance modulus of CAT(0) spaces: eps^2 / 4.
/// r is accepted for interface uniformity and unused.
inline double psi_cat0_direct(double /*r*/, double eps) { return eps * eps / 4.0; }

enum class PsiProvenance { from_eta, cat0_direct };

/// A squared-distance uniform-convexity modulus psi(r, eps) > 0 together with
/// the route that produced it.
struct PropertyGModulus {
  std::function<double(double r, double eps)> eval;
  PsiProvenance provenance;
  std::string name;
};

inline PropertyGModulus make_psi_from_eta(UCModulus eta) {
  auto name = "psi_eta[" + eta.name + "]";
  return {[eta = std::move(eta)](double r, double eps) { return psi_eta(eta, r, eps); },
          PsiProvenance::from_eta, std::move(name)};
}

inline PropertyGModulus make_psi_cat0_direct() {
  return {[](double r, double eps) { return psi_cat0_direct(r, eps); },
          PsiProvenance::cat0_direct, "psi_cat0:eps^2/4"};
}

/// Grid diagnostics for a candidate modulus: strict positivity,
/// r-monotonicity, and how often it exceeds 1 (the definition types the
/// codomain as (0,1]; values above 1 are flagged as warnings, not errors,
/// since the rate formulas remain sound for (0,inf)-valued moduli).
struct ModulusGridReport {
  bool positive = true;
  bool monotone = true;
  int above_one_count = 0;
};

inline ModulusGridReport check_modulus_grid(const UCModulus& eta,
                                            const std::vector<double>& rs,
                                            const std::vector<double>& epss) {
  ModulusGridReport rep;
  for (double eps : epss) {
    double prev = -1.0;  // eta at the previous (smaller) r; must not increase
    for (double r : rs) {
      const double v = eta(r, eps);
      if (!(v > 0.0)) rep.positive = false;
      if (v > 1.0) ++rep.above_one_count;
      if (prev >= 0.0 && v > prev + 1e-12) rep.monotone = false;
      prev = v;
    }
  }
  return rep;
}

}  // namespace ucw
