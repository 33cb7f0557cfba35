#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracle.hpp"
#include "revlab/errors.hpp"
#include "revlab/exp_poly.hpp"
#include "revlab/specfun.hpp"

using namespace revlab;
using std::numbers::pi;

namespace {

const double kSqrt3 = std::sqrt(3.0);

double kappa(int n) { return (2.0 * n - 1.0 / 3.0) * pi; }

cplx one_sided_derivative(const std::function<cplx(double)>& f, double x, double h) {
  return (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h);
}

}  // namespace

// ------------------------------------------------------------------ Airy

TEST(AiryDet, VanishesAtZero) { EXPECT_NEAR(airy_det_scaled(0.0), 0.0, 1e-15); }

TEST(AiryDet, SignChangeOnEachBracket) {
  for (int n = 1; n <= 20; ++n)
    EXPECT_LT(airy_det_scaled((2 * n - 1) * pi) * airy_det_scaled(2 * n * pi), 0.0) << n;
}

TEST(AiryDet, ScaledMatchesUnscaled) {
  for (double k : {0.7, 2.5, 6.1, 11.0}) {
    const cplx full = airy_det(k);
    EXPECT_NEAR(full.imag(), 0.0, 1e-10 * std::abs(full));
    EXPECT_NEAR(airy_det_scaled(k), std::exp(-0.5 * kSqrt3 * k) * full.real(), 1e-12);
  }
}

TEST(AiryDet, PropertyRotationSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const cplx alpha = std::polar(1.0, 2.0 * pi / 3.0);
  int done = 0;
  while (done < 200) {
    const cplx k(8.0 * U(rng), 8.0 * U(rng));
    if (std::abs(k) > 8.0) continue;
    ++done;
    const cplx d = airy_det(k);
    EXPECT_LT(std::abs(airy_det(alpha * k) - alpha * alpha * d), 1e-9 * std::max(1.0, std::abs(d)));
  }
}

TEST(AiryRoot, FirstRootInBracket) {
  const double k = airy_root(1);
  EXPECT_GT(k, pi);
  EXPECT_LT(k, 2 * pi);
}

TEST(AiryRoot, FifthRootNearAsymptote) {
  EXPECT_LT(std::abs(airy_root(5) - 29.0 * pi / 3.0), 1e-9);
  EXPECT_LT(std::abs(airy_det_scaled(airy_root(5))), 1e-12);
}

TEST(AiryRoot, MatchesBisectionOracle) {
  for (int n = 1; n <= 30; ++n) {
    const double ref = oracle::bisect([](double k) { return airy_det(k).real(); }, (2 * n - 1) * pi, 2 * n * pi);
    EXPECT_NEAR(airy_root(n), ref, 4e-15 * ref) << n;
  }
}

TEST(AiryRoot, OffsetStrictlyDecreasing) {
  double prev = std::abs(airy_root_offset(2));
  for (int n = 3; n <= 30; ++n) {
    const double g = std::abs(airy_root_offset(n));
    EXPECT_LT(g, prev) << n;
    prev = g;
  }
}

TEST(AiryRoot, PropertyResidualsAndBrackets) {
  for (int n = 1; n <= 50; ++n) {
    const double k = airy_root(n);
    EXPECT_LT(std::abs(airy_det_scaled(k)), 1e-11) << n;
    EXPECT_GT(k, (2 * n - 1) * pi);
    EXPECT_LT(k, 2 * n * pi);
  }
  EXPECT_THROW(airy_root(0), DomainError);
}

TEST(AiryEigfun, DirichletAndDerivativeConditions) {
  for (int n = 1; n <= 20; ++n) {
    const auto p = airy_pair(n);
    EXPECT_LT(std::abs(airy_eigfun_scaled(p, 0.0)), 1e-10) << n;
    EXPECT_LT(std::abs(airy_eigfun_scaled(p, 1.0)), 1e-10) << n;
    const auto f = [&](double x) { return airy_eigfun_scaled(p, x); };
    const auto g = [&](double x) { return airy_eigfun_scaled(p, 1.0 - x); };
    const double h = 1e-6;
    const cplx d0 = one_sided_derivative(f, 0.0, h);
    const cplx d1 = -one_sided_derivative(g, 0.0, h);
    EXPECT_LT(std::abs(d1 - d0), 1e-8 * std::max(std::abs(d0), 1.0) * p.k) << n;
    EXPECT_LT(std::abs(p.scaled.derivative(1.0 - 1e-15) - p.scaled.derivative(0.0)), 1e-10 * p.k);
  }
}

TEST(AiryEigfun, BoundedInScaledGauge) {
  for (int n : {1, 7, 60, 600}) {
    const auto p = airy_pair(n);
    for (int i = 0; i <= 200; ++i) EXPECT_LE(std::abs(airy_eigfun_scaled(p, i / 200.0)), 4.0);
  }
}

TEST(AiryEigfun, DominantTermAwayFromEnds) {
  const auto p = airy_pair(30);
  const cplx a0 = p.scaled.terms(0)[0].poly[0];
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double x = 0.1 + 0.8 * i / 400.0;
    worst = std::max(worst, std::abs(airy_eigfun_scaled(p, x) - a0 * std::polar(1.0, p.k * x)));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(AiryNorm, Asymptotics) {
  double prev = 1.0;
  for (int n : {1, 2, 5, 20}) {
    const double dev = std::abs(airy_pair(n).scaled_norm_sq - 1.0);
    EXPECT_LE(dev, prev + 1e-15) << n;
    prev = dev;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(AiryNorm, MatchesQuadratureOracle) {
  for (int n = 1; n <= 10; ++n) {
    const auto p = airy_pair(n);
    const double ref = oracle::integrate([&](double x) { return std::norm(airy_eigfun_scaled(p, x)); }, 0.0, 1.0).real();
    EXPECT_NEAR(airy_norm_scaled(p), ref, 1e-10) << n;
  }
}

TEST(AiryNorm, PositiveAndBounded) {
  for (const auto& p : airy_spectrum(100)) {
    EXPECT_GT(p.scaled_norm_sq, 0.0);
    EXPECT_LT(p.scaled_norm_sq, 2.0);
  }
}

TEST(AiryOrthogonality, Property) {
  const auto pairs = airy_spectrum(15);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j) continue;
      const cplx ip = inner(pairs[i].scaled, pairs[j].scaled);
      EXPECT_LT(std::abs(ip) / std::sqrt(pairs[i].scaled_norm_sq * pairs[j].scaled_norm_sq), 1e-8) << i << "," << j;
    }
}

TEST(AiryOrthogonality, NegativePartnersOrthogonal) {
  // <phi_m, -conj(phi_n)> = -integral phi_m phi_n.
  const auto pairs = airy_spectrum(15);
  for (const auto& a : pairs)
    for (const auto& b : pairs) {
      const cplx v = oracle::integrate([&](double x) { return a.scaled.eval(x) * b.scaled.eval(x); }, 0.0, 1.0);
      EXPECT_LT(std::abs(v) / std::sqrt(a.scaled_norm_sq * b.scaled_norm_sq), 1e-8) << a.n << "," << b.n;
    }
}

// ----------------------------------------------------------- dislocation

TEST(DislocRoot, HalfSideFirstRoot) { EXPECT_LT(std::abs(disloc_root(0.5, 1) - 2 * pi * 1.25), 0.01); }

TEST(DislocRoot, HalfSideFifthRoot) { EXPECT_LT(std::abs(disloc_root(0.5, 5) - 2 * pi * 5.25), 1e-12); }

TEST(DislocRoot, MatchesBisectionOracle) {
  for (double c : {0.3, 0.5, 0.7})
    for (int n = 1; n <= 20; ++n) {
      const double ref = oracle::bisect(
          [&](double k) { return std::sin(k * c) * std::cosh(k * (1 - c)) - std::cos(k * c) * std::sinh(k * (1 - c)); },
          n * pi / c, (n * pi + 0.25 * pi) / c);
      EXPECT_NEAR(disloc_root(c, n), ref, 4e-15 * ref) << c << " " << n;
    }
}

TEST(DislocRoot, PropertyBracketResidualAndDecay) {
  for (double c : {0.2, 0.3, 0.5, 0.7, 0.8}) {
    double prev = 1e300;
    for (int n = 1; n <= 50; ++n) {
      const double k = disloc_root(c, n);
      // The bracket is checked on the offset: k itself rounds to nu once gamma < ulp(nu).
      const double off = disloc_root_offset(c, n);
      EXPECT_GT(off, -0.25 * pi / c);
      EXPECT_LE(off, 0.0);  // underflows to zero for large k(1 - c)
      // tan(kc) = tan(pi/4 + c * offset), free of the rounding in k * c.
      const double t = std::tan(0.25 * pi + c * off);
      EXPECT_GT(t, 0.0);
      EXPECT_LE(t, 1.0);
      EXPECT_LT(std::abs(std::tan(k * c) - std::tanh(k * (1 - c))), 1e-11);
      const double g = std::abs(off);
      if (g > 0.0) {
        EXPECT_LT(g, prev);
        prev = g;
      }
    }
  }
}

TEST(DislocRoot, LowRootOnlyOnShortSide) {
  for (double c : {0.1, 0.3, 0.45}) {
    const double k = disloc_root(c, 0);
    EXPECT_GT(k, 0.0);
    EXPECT_LT(k, 0.25 * pi / c);
    EXPECT_LT(std::abs(disloc_char(c, k)), 1e-12);
  }
  EXPECT_THROW(disloc_root(0.5, 0), DomainError);
  EXPECT_THROW(disloc_root(0.7, 0), DomainError);
  EXPECT_EQ(disloc_zero_mode_side(0.5), 0);
  EXPECT_EQ(disloc_zero_mode_side(0.3), 1);
  EXPECT_EQ(disloc_zero_mode_side(0.7), -1);
}

TEST(DislocEigfun, InterfaceConditions) {
  for (double b : {0.35, 0.5, 0.6}) {
    for (int n = -20; n <= 20; ++n) {
      if (n == 0) continue;
      const auto p = disloc_pair(b, n);
      const double scale = std::max(1.0, std::abs(p.eigfun.eval(b)));
      EXPECT_LT(std::abs(p.eigfun.eval(b) - p.eigfun.eval(std::nextafter(b, 0.0))), 1e-12 * scale) << n;
      const auto f = [&](double x) { return p.eigfun.eval(x); };
      const double h = 1e-6;
      const cplx right = one_sided_derivative(f, b, h);
      const cplx left = -one_sided_derivative([&](double s) { return f(b - s); }, 0.0, h);
      EXPECT_LT(std::abs(left + right), 1e-6 * std::max(std::abs(left), 1.0)) << b << " " << n;
    }
  }
}

TEST(DislocEigfun, HatModeAtHalf) {
  const auto p = disloc_pair(0.5, 0);
  EXPECT_DOUBLE_EQ(p.lambda, 0.0);
  EXPECT_NEAR(disloc_eigfun(0.5, p, 0.25), 0.25, 1e-15);
  EXPECT_NEAR(disloc_norm(0.5, p), 1.0 / 12.0, 1e-15);
}

TEST(DislocEigfun, MismatchedInterfaceRejected) {
  const auto p = disloc_pair(0.4, 2);
  EXPECT_THROW(disloc_eigfun(0.5, p, 0.2), DomainError);
}

TEST(DislocEigfun, DirichletEnds) {
  for (int n : {-7, -1, 0, 1, 9}) {
    const auto p = disloc_pair(0.3, n);
    EXPECT_LT(std::abs(p.eigfun.eval(0.0)), 1e-14);
    EXPECT_LT(std::abs(p.eigfun.eval(1.0)), 1e-14);
  }
}

TEST(DislocEigfun, ZeroModeIsEigenfunction) {
  // Off the symmetric point the low root gives a genuine eigenfunction; the
  // residual of u'' + lambda u on each side is checked by finite differences.
  for (double b : {0.3, 0.7}) {
    const auto p = disloc_pair(b, 0);
    EXPECT_EQ(p.lambda > 0.0, b < 0.5);
    const double h = 1e-4;
    for (double x : {0.1, 0.2, 0.45, 0.8, 0.9}) {
      if (std::abs(x - b) < 2 * h) continue;
      const double u = disloc_eigfun(b, p, x);
      const double d2 = (disloc_eigfun(b, p, x + h) - 2 * u + disloc_eigfun(b, p, x - h)) / (h * h);
      // Sign-flipped operator: -u'' on (0, b), +u'' on (b, 1).
      const double op = x < b ? -d2 : d2;
      EXPECT_NEAR(op, p.lambda * u, 1e-5);
    }
  }
}

TEST(DislocNorm, Asymptotics) {
  const auto p = disloc_pair(0.4, 30);
  EXPECT_LT(std::abs(p.norm_sq - 0.2), 0.01);
}

TEST(DislocNorm, MatchesQuadratureOracle) {
  for (double b : {0.35, 0.5}) {
    for (int n = -10; n <= 10; ++n) {
      if (n == 0 && b != 0.5) continue;
      const auto p = disloc_pair(b, n);
      const double ref = oracle::integrate([&](double x) { return std::norm(p.eigfun.eval(x)); }, 0.0, 1.0, {b}).real();
      EXPECT_NEAR(disloc_norm(b, p), ref, 1e-10) << n;
    }
  }
}

TEST(DislocSpectrum, PropertySignsAndNormLimit) {
  for (double b : {0.3, 0.5, 0.7}) {
    for (const auto& p : disloc_spectrum(b, 60)) {
      if (p.n != 0) EXPECT_EQ(p.lambda > 0.0, p.n > 0);
      EXPECT_GT(p.norm_sq, 0.0);
      if (std::abs(p.n) == 60) EXPECT_NEAR(p.norm_sq * 2.0 / p.c, 1.0, 1e-2);
    }
  }
}

TEST(DislocOrthogonality, Property) {
  for (double b : {0.35, 0.5, 0.7}) {
    const auto pairs = disloc_spectrum(b, 15);
    for (const auto& a : pairs)
      for (const auto& c : pairs) {
        if (a.n == c.n) continue;
        EXPECT_LT(std::abs(inner(a.eigfun, c.eigfun)) / std::sqrt(a.norm_sq * c.norm_sq), 1e-8)
            << b << ": " << a.n << "," << c.n;
      }
  }
}

TEST(DislocReflection, SpectrumIsNegated) {
  for (double b : {0.3, 0.5, 0.65}) {
    const auto s = disloc_spectrum(b, 20);
    const auto r = disloc_spectrum(1.0 - b, 20);
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto& a = s[i];
      const auto& m = r[s.size() - 1 - i];
      ASSERT_EQ(a.n, -m.n);
      EXPECT_NEAR(a.lambda, -m.lambda, 1e-12 * std::max(1.0, std::abs(a.lambda)));
    }
  }
}

TEST(SpectrumRows, ResidualColumn) {
  const auto rows = airy_spectrum_rows(10);
  ASSERT_EQ(rows.size(), 10u);
  for (const auto& r : rows) EXPECT_LT(r.residual, 1e-11);
  const auto d = disloc_spectrum_rows(0.5, -5, 5);
  ASSERT_EQ(d.size(), 11u);
  EXPECT_EQ(d[5].n, 0);
  for (const auto& r : d) EXPECT_LT(r.residual, 1e-11);
}
