#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qfock/gates.hpp"
#include "qfock/quadrature.hpp"

using namespace qfock;

TEST(Rules, GaussLegendreIntegratesPolynomials) {
  std::vector<double> x, w;
  gauss_legendre(5, x, w);
  double s0 = 0, s8 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s0 += w[i];
    s8 += w[i] * std::pow(x[i], 8);
  }
  EXPECT_NEAR(s0, 2, 1e-14);
  EXPECT_NEAR(s8, 2.0 / 9, 1e-14);
}

TEST(Rules, GaussLaguerreMoments) {
  std::vector<double> x, w;
  gauss_laguerre(6, -0.5, x, w);
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * x[i] * x[i] * x[i];
  EXPECT_NEAR(s, std::tgamma(3.5), 1e-12);
  for (const double wi : w) EXPECT_GT(wi, 0);
  EXPECT_THROW(gauss_laguerre(0, 0, x, w), ConfigError);
}

TEST(Measure, CorrectedMoments) {
  const auto m = MeasureSpec::corrected();
  const auto g = QuadratureGrid::for_dim(8);
  EXPECT_NEAR(moment(0, m, g), 1, 1e-10);
  EXPECT_NEAR(moment(3, m, g), 6, 1e-8);
}

TEST(Measure, UnnormalizedMomentIsPiToThreeHalves) {
  const double v = moment(0, MeasureSpec::paper(), QuadratureGrid::for_dim(8));
  EXPECT_NEAR(v, std::pow(std::numbers::pi, 1.5), 1e-10);
}

TEST(Measure, CoarseGridFailsDoubling) {
  QuadratureGrid g{2, 4, 2, 2};
  EXPECT_THROW(moment(6, MeasureSpec::corrected(), g), ConvergenceError);
}

TEST(Measure, Parse) {
  EXPECT_EQ(parse_measure("paper"), MeasureVariant::paper);
  EXPECT_THROW(parse_measure("flat"), ConfigError);
}

TEST(Gram, CorrectedIsIdentity) {
  const QOperatord G = gram(8, MeasureSpec::corrected(), QuadratureGrid::for_dim(8));
  EXPECT_LT(max_abs(G - QOperatord::Identity(8)), 1e-8);
}

TEST(Gram, UnnormalizedDiagonal) {
  const QOperatord G = gram(6, MeasureSpec::paper(), QuadratureGrid::for_dim(6));
  for (Index n = 0; n < 6; ++n) {
    const double expected = std::numbers::pi * std::tgamma(n + 0.5) / std::tgamma(n + 1.0);
    EXPECT_NEAR(G(n, n).w(), expected, 1e-9) << n;
  }
  QOperatord off = G;
  for (Index n = 0; n < 6; ++n) off.set(n, n, Quaterniond(0));
  EXPECT_LT(max_abs(off), 1e-10);
}

TEST(Resolution, KernelWeightedIsIdentity) {
  const ResolutionResult r = resolution_of_identity(16, MeasureSpec::corrected(),
                                                    QuadratureGrid::for_dim(16), ProtectedBlock(16, 4));
  EXPECT_LT(r.deviation, 1e-6);
  EXPECT_LT(r.doubling_change, 1e-7);
}

TEST(Resolution, LiteralWeightHalvesEachLevel) {
  // e^{-2t} against the e^{-t} rule is not exact, so only a few digits
  const QuadratureGrid g = QuadratureGrid::for_dim(8).doubled().doubled();
  const QOperatord R = resolution_operator(8, MeasureSpec::corrected(), g, ResolutionWeight::literal);
  for (Index n = 0; n < 8; ++n) EXPECT_NEAR(R(n, n).w(), std::pow(0.5, n + 1), 1e-6);
}

TEST(Resolution, InvariantUnderSqueezing) {
  const ResolutionResult r = resolution_of_identity(16, MeasureSpec::corrected(),
                                                    QuadratureGrid::for_dim(16), ProtectedBlock(16, 4));
  const QOperatord S = squeeze(SqueezeParams(Quaterniond(0, 0.2, 0.1, 0)), build_ladder(16));
  EXPECT_LT(block_distance(S * r.op * adjoint(S), QOperatord::Identity(16), 12), 1e-6);
}

TEST(Kernel, MatchesStarExponential) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int s = 0; s < 20; ++s) {
    const Quaterniond q(u(g), u(g), u(g), u(g)), p(u(g), u(g), u(g), u(g));
    EXPECT_LT(distance(kernel(q, p, 40), star_exp(q, conj(p))), 1e-12);
  }
  EXPECT_EQ(kernel(Quaterniond(0.3, 0.2, 0, 0), Quaterniond(0), 40), Quaterniond(1));
}

TEST(Kernel, SliceInputs) {
  const auto ax = SliceAxis<double>::j();
  const Quaterniond q = ax.point(0.5, -0.4), p = ax.point(0.1, 0.7);
  EXPECT_LT(distance(kernel(q, p, 40), exp_q(q * conj(p))), 1e-13);
}

TEST(Kernel, TailViolation) {
  EXPECT_THROW(kernel(Quaterniond(3), Quaterniond(3), 10), TailViolation);
}
