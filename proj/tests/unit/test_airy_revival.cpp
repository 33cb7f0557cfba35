#include <gtest/gtest.h>

#include <numbers>
#include <numeric>

#include "oracle.hpp"
#include "revlab/airy_revival.hpp"
#include "revlab/errors.hpp"

using namespace revlab;
using std::numbers::pi;

namespace {

const PiecewiseFn& step() {
  static const auto f = PiecewiseFn::steps(1.0, {0.0, 0.5, 1.0}, {1.0, 0.0});
  return f;
}

double kappa(int n) { return (2.0 * n - 1.0 / 3.0) * pi; }

}  // namespace

TEST(RationalTime, CoprimeRequired) {
  EXPECT_THROW(AiryRationalTime::make(2, 6), DomainError);
  EXPECT_THROW(AiryRationalTime::make(0, 3), DomainError);
  EXPECT_DOUBLE_EQ(AiryRationalTime::make(1, 3).t(), 1.0 / (3.0 * pi * pi));
}

TEST(RationalTime, ExactPhaseMatchesLongDouble) {
  for (auto [p, q] : {std::pair{1LL, 3LL}, {2LL, 5LL}, {7LL, 4LL}}) {
    const auto rt = AiryRationalTime::make(p, q);
    for (int n = 1; n <= 40; ++n) {
      const long double kap = std::numbers::pi_v<long double> * (2.0L * n - 1.0L / 3.0L);
      const long double t = static_cast<long double>(p) / (q * std::numbers::pi_v<long double> * std::numbers::pi_v<long double>);
      long double ref = std::fmod(kap * kap * kap * t, 2 * std::numbers::pi_v<long double>);
      const double got = airy_phase_kappa(n, rt);
      double d = std::fmod(std::abs(got - static_cast<double>(ref)), 2 * pi);
      d = std::min(d, 2 * pi - d);
      EXPECT_LT(d, 1e-9) << n;
    }
  }
}

TEST(U0Tilde, Examples) {
  const auto zero = PiecewiseFn::constant(1.0, 0.0);
  const auto one = PiecewiseFn::constant(1.0, 1.0);
  const cplx alpha = std::polar(1.0, 2 * pi / 3);
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(u0_tilde(zero, n), cplx(0.0));
    EXPECT_NEAR(std::abs(u0_tilde(one, n) - 3.0 * cplx(0.0, 1.0) * alpha / kappa(n)), 0.0, 1e-15);
  }
}

TEST(U0Tilde, PlainCoefficientWhenEndsVanish) {
  const auto f = PiecewiseFn::from_global(1.0, {0.0, 0.4, 1.0}, {{0.0, 1.0}, {0.0, 0.0, 0.0}});
  ASSERT_EQ(f.eval(0.0), cplx(0.0));
  ASSERT_EQ(f.eval(1.0), cplx(0.0));
  for (int n = 1; n <= 6; ++n) {
    const cplx ref = oracle::integrate([&](double y) { return f.eval(y) * std::polar(1.0, -kappa(n) * y); }, 0.0, 1.0, {0.4});
    EXPECT_NEAR(std::abs(u0_tilde(f, n) - ref), 0.0, 1e-14);
  }
}

TEST(U0Tilde, ComplexDataRejected) {
  EXPECT_THROW(u0_tilde(PiecewiseFn::constant(1.0, cplx(0.0, 1.0)), 1), DomainError);
  EXPECT_THROW(u0_tilde(PiecewiseFn::constant(2.0, 1.0), 1), DomainError);
}

TEST(SolveSeries, SingleModeEvolution) {
  const auto p = airy_pair(1);
  const auto u0 = PiecewiseFn::interpolate([&](double x) { return cplx(p.scaled.eval(x).real()); }, 1.0, 16);
  const AirySolver solver(u0, 4);
  for (double t : {0.0, 0.01, 0.37}) {
    for (double x : {0.1, 0.35, 0.8}) {
      const double expect = (std::polar(1.0, p.lambda * t) * p.scaled.eval(x)).real();
      EXPECT_NEAR(solver.solve(x, t), expect, 1e-6) << t << " " << x;
    }
  }
}

TEST(SolveSeries, PlancherelMonotone) {
  double prev = 1e300;
  for (int n : {50, 100, 200, 400}) {
    const double e = AirySolver(step(), n).truncation_error_sq();
    EXPECT_GE(e, -1e-12);
    EXPECT_LE(e, prev);
    prev = e;
  }
}

TEST(SolveSeries, ZeroDatum) {
  const auto zero = PiecewiseFn::constant(1.0, 0.0);
  EXPECT_EQ(solve_series(zero, 0.3, 0.1, 20), 0.0);
  EXPECT_EQ(ur_series(zero, 0.3, 0.1, 20), 0.0);
  EXPECT_EQ(uc(zero, 0.3, 0.1, 20), 0.0);
}

TEST(UrSeries, MatchesDirectSum) {
  const AirySolver s(step(), 200);
  const double t = 0.0123;
  for (double x : {0.1, 0.45, 0.77}) {
    long double acc = 0;
    for (int n = 1; n <= 200; ++n) {
      const long double k = std::numbers::pi_v<long double> * (2.0L * n - 1.0L / 3.0L);
      const cplx ph = std::polar(1.0, static_cast<double>(std::fmod(k * k * k * t + k * x, 2 * std::numbers::pi_v<long double>)));
      acc += 2.0L * (u0_tilde(step(), n) * ph).real();
    }
    EXPECT_NEAR(s.ur(x, t), static_cast<double>(acc), 1e-11);
  }
}

TEST(UrSeries, ConvergesAtTimeZero) {
  const AirySolver a(step(), 2000), b(step(), 4000);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = 0.025 + 0.95 * i / 199.0;
    if (std::abs(x - 0.5) < 0.025) continue;
    worst = std::max(worst, std::abs(a.ur(x, 0.0) - b.ur(x, 0.0)));
  }
  EXPECT_LT(worst, 1e-2);
}

TEST(UrSeries, ApproximatesEigenfunctionTerms) {
  // Away from the ends, the revival terms approach the exact expansion terms
  // at a rate C n^{-3/2}.
  const AirySolver s(step(), 400);
  std::vector<double> scaled;
  for (int n : {25, 50, 100, 200, 400}) {
    const auto& p = s.pairs()[n - 1];
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = 0.1 + 0.8 * i / 100.0;
      const cplx exact = s.coefficients()[n - 1] * p.scaled.eval(x);
      const cplx approx = s.tilde()[n - 1] * std::polar(1.0, p.kappa * x);
      worst = std::max(worst, std::abs(exact - approx));
    }
    scaled.push_back(worst * std::pow(n, 1.5));
  }
  for (double c : scaled) EXPECT_LT(c, 2.0 * scaled.front());
}

TEST(Dk, Examples) {
  for (long long p : {1, 2, 5}) EXPECT_NEAR(std::abs(dk_airy(p, 1, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(dk_airy(1, 2, 0) - 1.0), 0.0, 1e-15);
  EXPECT_LT(std::abs(dk_airy(1, 2, 1)), 1e-15);
  for (auto [p, q] : {std::pair{1LL, 2LL}, {1LL, 3LL}, {2LL, 3LL}, {3LL, 4LL}}) {
    cplx s = 0.0;
    for (long long k = 0; k < q; ++k) {
      s += dk_airy(p, q, k);
      EXPECT_NEAR(std::abs(dk_airy(p, q, k) - oracle::dk_airy_direct(p, q, k)), 0.0, 1e-13);
    }
    EXPECT_NEAR(std::abs(s - 1.0), 0.0, 1e-12);
  }
}

TEST(Dk, PropertyRevivalIdentity) {
  for (auto [p, q] : {std::pair{1LL, 2LL}, {1LL, 3LL}, {2LL, 5LL}}) {
    for (long long n = 1; n <= 50; ++n) {
      cplx s = 0.0;
      for (long long k = 0; k < q; ++k) s += dk_airy(p, q, k) * std::polar(1.0, -2 * pi * static_cast<double>(n * k % q) / q);
      const long long r = ((4 * n * n * n - 2 * n * n) * p) % q;
      EXPECT_NEAR(std::abs(s - std::polar(1.0, 2 * pi * static_cast<double>(r) / q)), 0.0, 1e-12);
    }
  }
}

TEST(Dk, PropertyRootsOfUnity) {
  for (long long q : {2, 3, 5}) {
    for (long long m = 0; m <= 4 * q; ++m)
      for (long long n = 0; n <= 4 * q; ++n) {
        cplx s = 0.0;
        for (long long k = 0; k < q; ++k) s += std::polar(1.0, 2 * pi * static_cast<double>((m - n) * k % q) / q);
        EXPECT_NEAR(std::abs(s - ((m - n) % q == 0 ? cplx(q) : cplx(0.0))), 0.0, 1e-12);
      }
  }
}

TEST(GFunction, Examples) {
  const auto zero = PiecewiseFn::constant(1.0, 0.0);
  const auto one = PiecewiseFn::constant(1.0, 1.0);
  for (double x : {0.0, 0.3, 0.99}) {
    EXPECT_EQ(g_u0(zero, x), cplx(0.0));
    EXPECT_NEAR(std::abs(g_u0(one, x) - 3.0 * std::polar(1.0, pi * x / 3)), 0.0, 1e-15);
  }
}

TEST(GFunction, JumpSet) {
  // Step: the interior jump plus the periodization seam at 0.
  const auto js = g_u0_function(step()).jumps();
  ASSERT_EQ(js.size(), 2u);
  EXPECT_EQ(js[0].x, 0.0);
  EXPECT_NEAR(js[1].x, 0.5, 1e-15);
  // Zero boundary values and continuity: no seam jump.
  const auto bump = PiecewiseFn::from_global(1.0, {0.0, 1.0}, {{0.0, 1.0, -1.0}});
  EXPECT_TRUE(g_u0_function(bump).jumps().size() <= 1);
}

TEST(ClosedForm, ZeroDatum) {
  const auto zero = PiecewiseFn::constant(1.0, 0.0);
  EXPECT_EQ(ur_closed(zero, 0.3, AiryRationalTime::make(1, 2), 256), 0.0);
}

TEST(ClosedForm, SingleTranslateMatchesSeries) {
  const auto rt = AiryRationalTime::make(3, 1);
  const AiryClosedForm cf(step(), rt, 1 << 16);
  const AirySolver s(step(), 2000);
  double worst = 0.0;
  for (int i = 0; i < 256; ++i) {
    const double x = (i + 0.5) / 256;
    if (cf.distance_to_singular(x) < 1e-2) continue;
    worst = std::max(worst, std::abs(cf.eval(x) - s.ur(x, rt)));
  }
  EXPECT_LT(worst, 5e-3);
}

TEST(ClosedForm, SingularProximityAndDomain) {
  const AiryClosedForm cf(step(), AiryRationalTime::make(1, 3), 256);
  ASSERT_FALSE(cf.singular_points().empty());
  const double x0 = cf.singular_points().front().x;
  const double probe = x0 > 0.5 ? x0 - 1e-3 : x0 + 1e-3;
  EXPECT_THROW(cf.parts(probe), SingularityError);
  EXPECT_THROW(cf.parts(1.2), DomainError);
}

TEST(ClosedForm, SingularAbscissaePredicted) {
  // x + p/(3q) - k/q must hit a jump of G modulo 1 for some k with d_k != 0.
  const auto rt = AiryRationalTime::make(1, 3);
  const AiryClosedForm cf(step(), rt, 256);
  for (const auto& sp : cf.singular_points()) {
    bool hit = false;
    for (long long k = 0; k < 3; ++k) {
      if (std::abs(dk_airy(1, 3, k)) < 1e-12) continue;
      for (const Jump& j : cf.g().jumps()) {
        const double y = wrap_periodic(sp.x + 1.0 / 9.0 - k / 3.0, 1.0);
        hit = hit || std::abs(circular_offset(y, j.x, 1.0)) < 1e-12;
      }
    }
    EXPECT_TRUE(hit) << sp.x;
  }
}

TEST(ClosedForm, JumpAndCuspRevival) {
  const auto rt = AiryRationalTime::make(1, 2);
  const AiryClosedForm cf(step(), rt, 1 << 16);
  const ScalarField f = [&](double x) { return cplx(cf.parts_unchecked(wrap_periodic(x, 1.0)).value); };
  const std::vector<double> eps{1e-2, 3e-3, 1e-3};
  for (const auto& sp : cf.singular_points()) {
    const auto row = jump_table(f, std::span<const SingularPoint>(&sp, 1), 1e-4, eps).front();
    EXPECT_NEAR(std::abs(row.measured_jump - row.predicted_jump), 0.0, 0.05 * std::max(1.0, std::abs(row.predicted_jump)));
    EXPECT_NEAR(row.measured_cusp.real(), row.predicted_cusp.real(), 0.05);
    EXPECT_LT(row.cusp_residual, 0.05);
  }
}

TEST(Revival, DecompositionIdentity) {
  const auto parts = airy_revival(step(), AiryRationalTime::make(1, 2), 300, 64, 1024);
  for (std::size_t j = 0; j < parts.grid.size(); ++j) {
    EXPECT_EQ(parts.uc[j], parts.u[j] - parts.ur_series[j]);
    if (!parts.excluded[j]) EXPECT_FALSE(std::isnan(parts.ur_closed[j]));
    else EXPECT_TRUE(std::isnan(parts.ur_closed[j]));
  }
}
