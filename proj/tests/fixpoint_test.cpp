#include <gtest/gtest.h>

#include <cmath>

#include "ucw/fixpoint.hpp"

using namespace ucw;

namespace {

ModelSpace euclid2(double r = 1.0) {
  ModelParams p;
  p.kind = ModelKind::euclidean;
  p.dim = 2;
  p.r_sample = r;
  return instantiate_model(p);
}

ModelSpace lp43() {
  ModelParams p;
  p.kind = ModelKind::lp;
  p.p = 4.0;
  p.dim = 3;
  p.r_sample = 1.0;
  return instantiate_model(p);
}

ModelSpace poincare09() {
  ModelParams p;
  p.kind = ModelKind::poincare;
  p.r_sample = 0.9;
  return instantiate_model(p);
}

std::vector<ModelSpace> all_models() {
  return {euclid2(), lp43(), poincare09(), instantiate_model(demo_tree_params())};
}

}  // namespace

TEST(AfpDelta, HandEvaluatedCat0Instance) {
  // b = 1, eps = 2: min(1, 1, (4/16) * eta(2, 1)) with eta(2,1) = 1/8.
  EXPECT_DOUBLE_EQ(afp_delta(1.0, 2.0, cat0_modulus()), 0.03125);
}

TEST(AfpDelta, ClampServesLargeEps) {
  // b = 0.25, eps = 2: eps/(2b) = 4 clamps to 2, eta(0.5, 2) = 0.5, and the
  // third term (4 / (16*0.25)) * 0.5 = 0.5, so delta = min(1, 0.25, 0.5) = b.
  EXPECT_DOUBLE_EQ(afp_delta(0.25, 2.0, cat0_modulus()), 0.25);
}

TEST(AfpDelta, NeverExceedsB) {
  const auto eta = cat0_modulus();
  for (double b : {0.1, 0.5, 1.0, 3.0})
    for (double eps : {0.01, 0.3, 1.0, 2.0, 7.0}) {
      const double d = afp_delta(b, eps, eta);
      EXPECT_GT(d, 0.0);
      EXPECT_LE(d, b);
    }
  EXPECT_THROW(afp_delta(0.0, 1.0, eta), UsageError);
  EXPECT_THROW(afp_delta(1.0, 0.0, eta), UsageError);
}

TEST(AfpBundle, ThetaIsHalfDelta) {
  const auto eta = cat0_modulus();
  const auto bundle = afp_bundle(2.0, eta, [](double) { return std::uint64_t{0}; }, 0.0);
  for (double eps : {0.05, 0.4, 1.0, 2.0})
    EXPECT_DOUBLE_EQ(bundle.theta(eps), 0.5 * afp_delta(2.0, eps, eta));
}

TEST(AfpBundle, DegenerateErrorSequence) {
  // delta_n = 0, u = 0, B = 0: gamma = N = 0 and Omega(eps) = Theta(eps/2).
  const auto eta = cat0_modulus();
  const auto bundle = afp_bundle(1.5, eta, [](double) { return std::uint64_t{0}; }, 0.0);
  EXPECT_EQ(bundle.gamma_rate(0.7), 0u);
  EXPECT_EQ(bundle.n_index(0.7), 0u);
  EXPECT_DOUBLE_EQ(bundle.omega(0.7), bundle.theta(0.35));
}

TEST(AfpBundle, HandEvaluatedChainForGeometricErrors) {
  // delta_n = 2^-n, u(eps) = ceil(log2(1/eps)) for eps < 1, b = 1, B = 1,
  // CAT(0) eta, eps = 1. Walked by hand:
  //   delta(1, 1)    = min(1/2, 1, (1/16) eta(2, 1/2)) = 1/512, Theta(1) = 1/1024,
  //   gamma(1)       = u(1/1024) = 10,
  //   delta(1, 1/3)  = min(1/6, 1, (1/144) eta(2, 1/6)) = 1/41472,
  //   Theta(1/3)     = 1/82944, N(1) = u(1/82944) = 17,
  //   Omega(1)       = (1/82944) / (18 * 2) = 1/2985984.
  auto u = [](double eps) {
    return eps >= 1.0 ? std::uint64_t{0}
                      : static_cast<std::uint64_t>(std::ceil(std::log2(1.0 / eps)));
  };
  const auto bundle = afp_bundle(1.0, cat0_modulus(), u, 1.0);
  EXPECT_DOUBLE_EQ(bundle.theta(1.0), 1.0 / 1024.0);
  EXPECT_EQ(bundle.gamma_rate(1.0), 10u);
  EXPECT_EQ(bundle.n_index(1.0), 17u);
  EXPECT_DOUBLE_EQ(bundle.theta(1.0 / 3.0), 1.0 / 82944.0);
  EXPECT_NEAR(bundle.omega(1.0), 1.0 / 2985984.0, 1e-18);
}

TEST(AfpBundle, ThetaAndOmegaNondecreasingInEps) {
  auto u = [](double eps) {
    return eps >= 1.0 ? std::uint64_t{0}
                      : static_cast<std::uint64_t>(std::ceil(std::log2(1.0 / eps)));
  };
  for (double b : {0.5, 1.0, 2.0}) {
    const auto bundle = afp_bundle(b, cat0_modulus(), u, 1.0);
    double prev_theta = 0.0, prev_omega = 0.0;
    for (double eps = 0.05; eps <= 2.0; eps += 0.05) {
      const double th = bundle.theta(eps);
      const double om = bundle.omega(eps);
      EXPECT_GE(th, prev_theta - 1e-15) << "b=" << b << " eps=" << eps;
      EXPECT_GE(om, prev_omega - 1e-15) << "b=" << b << " eps=" << eps;
      EXPECT_LE(th, eps / 4.0 + 1e-15);  // theta = delta/2 <= (eps/2)/2
      prev_theta = th;
      prev_omega = om;
    }
  }
}

TEST(AfpSegment, IdentityMapAlwaysPasses) {
  auto m = euclid2();
  auto T = identity_map(m.space);
  Rng rng(5);
  const Point x = m.space->sample(rng), y = m.space->sample(rng);
  const auto v = check_afp_segment(*m.space, T, x, y, 0.37, 0.5, 3.0, m.eta, m.tol());
  EXPECT_TRUE(v.admissible);
  EXPECT_TRUE(v.pass);
  EXPECT_EQ(v.residual_z, 0.0);
}

TEST(AfpSegment, ProjectionFixedSegment) {
  auto m = euclid2();
  auto& sp = static_cast<const EuclideanSpace&>(*m.space);
  auto T = axis_projection_map(m.space, 1);
  const Point x = sp.make({-0.5, 0.0}), y = sp.make({0.75, 0.0});
  const auto v = check_afp_segment(*m.space, T, x, y, 0.6, 0.25, 2.0, m.eta, m.tol());
  EXPECT_TRUE(v.admissible);
  EXPECT_TRUE(v.pass);
  EXPECT_NEAR(v.residual_z, 0.0, 1e-15);
}

TEST(AfpSegment, PreconditionFailureIsSkippedNotViolation) {
  auto m = euclid2();
  auto& sp = static_cast<const EuclideanSpace&>(*m.space);
  auto T = rotation_map(m.space, 0.3);
  // Far from the fixed point: residual exceeds any admissible delta.
  const Point x = sp.make({0.9, 0.0}), y = sp.make({0.0, 0.9});
  const auto v = check_afp_segment(*m.space, T, x, y, 0.5, 0.1, 2.0, m.eta, m.tol());
  EXPECT_FALSE(v.admissible);
  EXPECT_FALSE(v.pass);
}

TEST(AfpSegment, VerdictCarriesProofCaseDiagnostics) {
  auto m = euclid2();
  auto& sp = static_cast<const EuclideanSpace&>(*m.space);
  auto T = identity_map(m.space);
  const Point x = sp.make({0, 0}), y = sp.make({0.9, 0});
  // lam below eps/(4b) -> case 1; 1-lam below it -> case 2; generic -> case 4.
  EXPECT_EQ(check_afp_segment(*m.space, T, x, y, 0.01, 0.4, 2.0, m.eta, m.tol()).proof_case, 1);
  EXPECT_EQ(check_afp_segment(*m.space, T, x, y, 0.99, 0.4, 2.0, m.eta, m.tol()).proof_case, 2);
  EXPECT_EQ(check_afp_segment(*m.space, T, x, y, 0.50, 0.4, 2.0, m.eta, m.tol()).proof_case, 4);
  // Short segment with d(x,y) <= eps/4 -> case 3.
  const Point y2 = sp.make({0.05, 0});
  EXPECT_EQ(check_afp_segment(*m.space, T, x, y2, 0.50, 0.4, 2.0, m.eta, m.tol()).proof_case, 3);
}

TEST(AfpSegment, CampaignCleanOnAllModels) {
  for (const auto& m : all_models()) {
    const auto camp = run_afp_segment_campaign(m, 4242, 2000, m.tol());
    EXPECT_EQ(camp.violations, 0u) << m.space->name();
    EXPECT_GE(camp.admissible_ratio(), 0.5) << m.space->name();
    EXPECT_EQ(camp.instances, 2000u);
  }
}

TEST(AfpAsymptotic, CampaignsCleanOnAllModels) {
  for (const auto& m : all_models()) {
    for (auto mode : {AfpMode::power_n, AfpMode::single_step}) {
      const auto camp = run_afp_asymptotic_campaign(m, 777, 1500, mode, m.tol());
      EXPECT_EQ(camp.violations, 0u)
          << m.space->name() << " mode=" << (mode == AfpMode::power_n ? "power" : "single");
      EXPECT_GE(camp.admissible_ratio(), 0.5) << m.space->name();
    }
  }
}

TEST(CollapseMap, GenuinelyExpansiveButAsymptoticallyNonexpansive) {
  auto m = euclid2(3.0);
  auto& sp = static_cast<const EuclideanSpace&>(*m.space);
  auto T = collapse_map(m.space, 1.0);
  validate_error_moduli(T);
  // One step expands by factor 1.5 between points in the ramp region.
  const Point x = sp.make({2.5, 0.0}), y = sp.make({2.6, 0.0});
  EXPECT_GT(sp.dist(T.apply(x), T.apply(y)), sp.dist(x, y) * 1.4);
  // T^2 collapses everything to the origin.
  const Point z = T.power(sp.make({2.9, 1.7}), 2);
  EXPECT_EQ(z.coords[0], 0.0);
  EXPECT_EQ(z.coords[1], 0.0);
  // Empirical asymptotic nonexpansiveness over random pairs and powers.
  const auto rep = check_mapping_contractivity(*m.space, T, 99, 4000, 1e-12);
  EXPECT_EQ(rep.violation_count, 0u) << rep.max_gap;
}

TEST(CollapseMap, FastIterateMatchesLoop) {
  auto m = euclid2(3.0);
  auto T = collapse_map(m.space, 0.5);
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const Point x = m.space->sample(rng);
    const std::uint64_t n = rng.below(5);
    Point slow = x;
    for (std::uint64_t k = 0; k < n; ++k) slow = T.apply(slow);
    const Point fast = T.power(x, n);
    EXPECT_EQ(slow.coords, fast.coords);
  }
}

TEST(MappingLibrary, EmpiricalContractivityOnAllModels) {
  for (const auto& m : all_models()) {
    for (const auto& T : nonexpansive_library(m)) {
      const auto rep = check_mapping_contractivity(*m.space, T, 11, 1500, m.tol());
      EXPECT_EQ(rep.violation_count, 0u) << m.space->name() << " " << T.name;
    }
  }
}

TEST(MappingLibrary, RejectsInconsistentModulus) {
  auto m = euclid2();
  auto T = collapse_map(m.space, 1.0);
  T.u = [](double) { return std::uint64_t{0}; };  // claims delta_n <= eps from n = 0
  EXPECT_THROW(validate_error_moduli(T), UsageError);
  auto T2 = collapse_map(m.space, 1.0);
  T2.B = 0.25;  // delta_0 = 1 > B
  EXPECT_THROW(validate_error_moduli(T2), UsageError);
}

TEST(FixConvexity, CombinationsOfFixedPointsStayFixed) {
  for (const auto& m : all_models()) {
    for (const auto& T : nonexpansive_library(m)) {
      const auto rep = check_fix_convexity(m, T, 21, 400, m.tol());
      EXPECT_EQ(rep.violation_count, 0u) << m.space->name() << " " << T.name;
      // The combined point is a fixed point at every eps on a decreasing grid.
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6})
        EXPECT_LE(rep.max_gap, eps) << m.space->name() << " " << T.name;
    }
  }
}

TEST(RotationMap, RequiresTwoDimensionalModel) {
  auto m = lp43();
  EXPECT_THROW(rotation_map(m.space, 0.5), UsageError);
}
