#include <gtest/gtest.h>

#include <cmath>

#include "revlab/diagnostics.hpp"
#include "revlab/parallel.hpp"

using namespace revlab;

TEST(Diagnostics, JumpEstimateAndCuspFit) {
  const double x0 = 0.3;
  const ScalarField f = [&](double x) { return cplx((x >= x0 ? 2.0 : 0.0) + 0.7 * std::log(std::abs(x - x0)) + x); };
  EXPECT_NEAR(jump_estimate(f, x0, 1e-8).real(), 2.0, 1e-6);
  const std::vector<double> eps{1e-2, 1e-3, 1e-4};
  const auto fit = cusp_fit(f, x0, eps);
  EXPECT_NEAR(fit.rate.real(), -0.7, 1e-10);
  EXPECT_LT(fit.max_residual, 1e-10);
}

TEST(Diagnostics, ScanFindsOnlyJumps) {
  const ScalarField f = [](double x) {
    return cplx((x >= 0.25 ? 1.0 : 0.0) - (x >= 0.6 ? 0.5 : 0.0) + 0.3 * std::log(std::abs(x - 0.8) + 1e-300));
  };
  const auto found = scan_jumps(f, 0.0, 1.0, 500, 0.1);
  ASSERT_EQ(found.size(), 2u);
  EXPECT_NEAR(found[0].x, 0.25, 1e-9);
  EXPECT_NEAR(found[0].jump.real(), 1.0, 1e-6);
  EXPECT_NEAR(found[1].x, 0.6, 1e-9);
  EXPECT_NEAR(found[1].jump.real(), -0.5, 1e-6);
}

TEST(Diagnostics, MergeAndDistance) {
  std::vector<SingularPoint> pts{{0.5, 1.0, 0.0, {0}}, {0.1, 2.0, 0.0, {1}}, {0.5 + 1e-14, 3.0, 0.0, {2}}};
  const auto m = merge_singular_points(pts, 1e-12);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[1].predicted_jump, cplx(4.0));
  EXPECT_EQ(m[1].ks.size(), 2u);
  EXPECT_NEAR(distance_to_set(0.95, m, 1.0), 0.15, 1e-15);
  EXPECT_NEAR(distance_to_set(0.95, m), 0.45, 1e-15);
}

TEST(Parallel, PairwiseSumIndependentOfThreads) {
  std::vector<double> v(100003);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * i) / (1.0 + i);
  const double a = pairwise_sum(std::span<const double>(v));
  std::vector<double> out(64);
  set_thread_count(1);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = pairwise_sum(std::span<const double>(v).subspan(i)); });
  const auto one = out;
  set_thread_count(4);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = pairwise_sum(std::span<const double>(v).subspan(i)); });
  EXPECT_EQ(one, out);
  EXPECT_EQ(out[0], a);
  set_thread_count(0);
}

TEST(Parallel, ExceptionPropagates) {
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("x");
               }),
               std::runtime_error);
}
