#include <gtest/gtest.h>

#include <numbers>

#include "qfock/gates.hpp"
#include "qfock/states.hpp"

using namespace qfock;

TEST(Coherent, VacuumAndNormalization) {
  const FockVectord v = coherent(Quaterniond(0), 8);
  EXPECT_EQ(v[0], Quaterniond(1));
  for (Index k = 1; k < 8; ++k) EXPECT_EQ(v[k], Quaterniond(0));
  const FockVectord eta = coherent(Quaterniond(0.4, -0.3, 0.6, 0.1), 64);
  EXPECT_NEAR(norm(eta), 1, 1e-14);
}

TEST(Coherent, EigenvectorOfAnnihilator) {
  const Quaterniond q(0.4, -0.3, 0.6, 0.1);
  const LadderSet L = build_ladder(64);
  const FockVectord eta = coherent(q, 64);
  const FockVectord lhs = apply(L.a, eta), rhs = left_mul(q, eta);
  EXPECT_LT((lhs.coeffs().topRows(48) - rhs.coeffs().topRows(48)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Coherent, MatchesDisplacedVacuum) {
  const Quaterniond q = SliceAxis<double>::k().point(0.5, 0.5);
  const LadderSet L = build_ladder(64);
  const FockVectord d = apply(displacement(q, L), FockVectord::basis(64, 0));
  EXPECT_LT((d.coeffs() - coherent(q, 64).coeffs()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Coherent, TailViolationCarriesSuggestion) {
  try {
    coherent(Quaterniond(3), 16);
    FAIL() << "expected TailViolation";
  } catch (const TailViolation& e) {
    EXPECT_GT(e.tail(), 1e-12);
    EXPECT_GT(e.suggested_dim(), 16);
  }
  EXPECT_NEAR(coherent_tail(0, 4), 0, 1e-300);
}

TEST(PureSqueezed, EvenSupportAndClosedForm) {
  const SqueezeParams sp = SqueezeParams::polar(0.9, SliceAxis<double>::j().phase(0.4));
  const Index d = recommended_dim(8, sp.r);
  const LadderSet L = build_ladder(d);
  const FockVectord st = pure_squeezed(sp, L);
  for (Index k = 1; k < d; k += 2) EXPECT_LE(st[k].norm(), 1e-12);
  const FockVectord cf = pure_squeezed_closed_form(sp, d);
  EXPECT_LT((st.coeffs() - cf.coeffs()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(PureSqueezed, MomentsAgainstClosedForms) {
  for (const double r : {0.3, 0.7, 1.0}) {
    const SqueezeParams sp = SqueezeParams::polar(r, SliceAxis<double>(1, -1, 2).phase(1.2));
    const Index d = recommended_dim(8, r);
    const LadderSet L = build_ladder(d);
    const Report rep = check_pure_squeezed_moments(sp, L, ProtectedBlock(d, 16));
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  }
}

TEST(PureSqueezed, UVQuadratures) {
  for (const double theta : {0.5, std::numbers::pi}) {
    const SqueezeParams sp = SqueezeParams::polar(0.7, SliceAxis<double>::k().phase(theta));
    const Index d = recommended_dim(8, sp.r);
    const Report rep = uv_quadrature_check(sp, build_ladder(d), ProtectedBlock(d, 16));
    EXPECT_TRUE(rep.passed()) << rep.to_json().dump();
  }
}

TEST(PureSqueezed, PrintedSeriesDiverges) {
  const SqueezeParams sp = SqueezeParams::polar(1.0, Quaterniond(1));
  const Index d = recommended_dim(8, sp.r);
  const ScsSeriesReport s = scs_series_check(sp, build_ladder(d));
  EXPECT_TRUE(s.printed_diverges);
  EXPECT_GT(s.printed_deviation, 1);
  EXPECT_LT(s.closed_form_deviation, 1e-9);
}

TEST(PureSqueezed, PrintedSeriesMissesEvenWhenConvergent) {
  const SqueezeParams sp = SqueezeParams::polar(0.3, Quaterniond(1));
  const ScsSeriesReport s = scs_series_check(sp, build_ladder(64));
  EXPECT_FALSE(s.printed_diverges);
  EXPECT_GT(s.printed_deviation, 1e-3);
}

TEST(Expectations, TailCheckOnBlock) {
  const SqueezeParams sp = SqueezeParams::polar(1.0, Quaterniond(1));
  const LadderSet L = build_ladder(64);
  EXPECT_THROW(expectations(pure_squeezed(sp, L), L, ProtectedBlock(64, 32)), TailViolation);
}

TEST(Expectations, MandelQUndefinedOnVacuum) {
  const LadderSet L = build_ladder(16);
  EXPECT_THROW(mandel_q(FockVectord::basis(16, 0), L, ProtectedBlock(16, 4)), UndefinedQuantity);
}

TEST(SqueezedState, MixedSliceParametersAreFine) {
  const SqueezeParams sp(Quaterniond(0, 0.4, 0, 0));
  const Quaterniond q(0, 0, 0.5, 0);
  const Index d = recommended_dim(8, sp.r, q.norm());
  const FockVectord st = squeezed_state(sp, q, build_ladder(d));
  EXPECT_NEAR(norm(st), 1, 1e-12);
}
