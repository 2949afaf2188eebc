#include <gtest/gtest.h>

#include <numbers>

#include "qfock/gates.hpp"
#include "qfock/slice_lab.hpp"

using namespace qfock;

namespace {

SliceParams point(const SliceAxis<double>& ax, double rp, double tp, double rq, double tq) {
  SliceParams sl;
  sl.axis = ax;
  sl.r_p = rp;
  sl.theta_p = tp;
  sl.r_q = rq;
  sl.theta_q = tq;
  return sl;
}

const SliceObservable& find(const SliceReport& r, const std::string& name) {
  for (const auto& o : r.observables)
    if (o.name == name) return o;
  throw std::out_of_range(name);
}

}  // namespace

TEST(SliceParams, FromPairSharesSlice) {
  const auto ax = SliceAxis<double>(0, 1, 1);
  const SliceParams sl = SliceParams::from_pair(ax.point(0.1, 0.5), ax.point(-0.4, 0.2));
  EXPECT_NEAR(distance(sl.p(), ax.point(0.1, 0.5)), 0, 1e-15);
  EXPECT_NEAR(distance(sl.q(), ax.point(-0.4, 0.2)), 0, 1e-15);
  EXPECT_THROW(SliceParams::from_pair(Quaterniond(0, 1, 0, 0), Quaterniond(0, 0, 1, 0)),
               OffSliceError);
}

TEST(SliceParams, RealPairUsesFallback) {
  const SliceParams sl =
      SliceParams::from_pair(Quaterniond(0.3), Quaterniond(-0.2), SliceAxis<double>::k());
  EXPECT_NEAR(distance(sl.p(), Quaterniond(0.3)), 0, 1e-15);
  EXPECT_NEAR(distance(sl.q(), Quaterniond(-0.2)), 0, 1e-15);
}

TEST(SliceParams, RParam) {
  const Quaterniond p(0, 0.6, 0, 0.8);
  EXPECT_NEAR(distance(r_param(p), p * std::tanh(1.0)), 0, 1e-15);
}

TEST(TwoPhoton, DerivedFormsMatchOracle) {
  const SliceParams sl = point(SliceAxis<double>::j(), 0.6, std::numbers::pi / 3, 0.8, 0.6);
  const Index d = recommended_dim(8, sl.r_p, sl.r_q);
  const SliceReport rep = two_photon_expectations(sl, build_ladder(d, sl.axis), ProtectedBlock(d, d - 8));
  for (const auto& o : rep.observables) EXPECT_LT(o.derived_deviation(), 1e-8) << o.name;
  EXPECT_TRUE(rep.oracle_report(1e-8).passed());
  EXPECT_LT(rep.off_slice, 1e-13);
}

TEST(TwoPhoton, PrintedSecondMomentsHaveDoubledPrefactor) {
  const SliceParams sl = point(SliceAxis<double>::i(), 0.5, 0.4, 0.3, 1.0);
  const Index d = recommended_dim(8, sl.r_p, sl.r_q);
  const SliceReport rep = two_photon_expectations(sl, build_ladder(d), ProtectedBlock(d, d - 8));
  const auto& x2 = find(rep, "<X^2>");
  EXPECT_NEAR(x2.printed.w(), 2 * x2.derived.w(), 1e-12);
  EXPECT_GT(x2.printed_deviation(), 0.1);
}

TEST(SqueezedCoherent, DerivedFormsMatchOracle) {
  const SliceParams sl = point(SliceAxis<double>::k(), 0.9, 1.2, 0.6, 0.2);
  const Index d = recommended_dim(8, sl.r_p, sl.r_q);
  const SliceReport rep =
      squeezed_coherent_expectations(sl, build_ladder(d, sl.axis), ProtectedBlock(d, d - 8));
  for (const auto& o : rep.observables) EXPECT_LT(o.derived_deviation(), 1e-8) << o.name;
  EXPECT_GT(find(rep, "var N").printed_deviation(), 1e-3);
}

TEST(SqueezedCoherent, PrintedVarianceHoldsOnSpecialPhase) {
  // 2 theta_q = theta_p aligns displacement with the squeezing axis
  const SliceParams sl = point(SliceAxis<double>::i(), 0.4, 1.0, 0.5, 0.5);
  const Index d = recommended_dim(8, sl.r_p, sl.r_q);
  const SliceReport rep = squeezed_coherent_expectations(sl, build_ladder(d), ProtectedBlock(d, d - 8));
  EXPECT_LT(find(rep, "var N").printed_deviation(), 1e-8);
}

TEST(SqueezedCoherent, MandelQUsesSquaredSpread) {
  const SliceParams sl = point(SliceAxis<double>::i(), 0.4, 1.0, 0.5, 0.5);
  const Index d = recommended_dim(8, sl.r_p, sl.r_q);
  const SliceReport rep = squeezed_coherent_expectations(sl, build_ladder(d), ProtectedBlock(d, d - 8));
  const double n = find(rep, "<N>").numeric.w();
  const double var = find(rep, "var N").numeric.w();
  EXPECT_NEAR(rep.mandel_q, var / n - 1, 1e-10);
  EXPECT_NEAR(rep.mandel_q_printed, std::sqrt(var) / n - 1, 1e-10);
}

TEST(Hermite, LowOrders) {
  const Quaterniond q(0.3, 0.2, 0, 0);
  EXPECT_EQ(hermite(0, q), Quaterniond(1));
  EXPECT_NEAR(distance(hermite(1, q), q * 2.0), 0, 1e-15);
  EXPECT_NEAR(distance(hermite(2, q), q * q * 4.0 - Quaterniond(2)), 0, 1e-15);
  EXPECT_NEAR(distance(hermite(3, q), q * q * q * 8.0 - q * 12.0), 0, 1e-14);
}

TEST(Bargmann, EvaluatesMonomials) {
  const Quaterniond q(0.2, 0.1, -0.3, 0.05);
  const FockVectord phi2 = FockVectord::basis(32, 2);
  EXPECT_NEAR(distance(bargmann_eval(phi2, q), q * q / std::sqrt(2.0)), 0, 1e-16);
}

TEST(Bargmann, TailViolationForSlowDecay) {
  FockVectord v(8);
  for (Index k = 0; k < 8; ++k) v.set(k, Quaterniond(1));
  EXPECT_THROW(bargmann_eval(v, Quaterniond(2)), TailViolation);
}

TEST(SqueezedBasis, ClosedFormMatchesOperator) {
  for (const auto& ax : {SliceAxis<double>::i(), SliceAxis<double>(1, 0, 1)}) {
    SliceParams sl = point(ax, 0.5, 0.9, 0, 0);
    const LadderSet L = build_ladder(96, ax);
    const QOperatord S = squeeze(sl.squeeze(), L);
    const Quaterniond pt = ax.point(0.3, 0.3);
    for (int n = 0; n <= 6; ++n) {
      const Quaterniond num = bargmann_eval(apply(S, FockVectord::basis(96, n)), pt);
      EXPECT_LT(distance(squeezed_basis_closed_form(n, sl, pt), num), 1e-7) << n;
      EXPECT_LT(distance(squeezed_basis_factorized(n, sl, pt), num), 1e-7) << n;
    }
  }
}
