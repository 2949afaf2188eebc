#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qfock/errors.hpp"
#include "qfock/quaternion.hpp"
#include "qfock/summation.hpp"

using namespace qfock;

namespace {

Quaterniond random_quat(std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(-1, 1);
  return {u(g), u(g), u(g), u(g)};
}

}  // namespace

TEST(Quaternion, HamiltonTable) {
  const auto i = Quaterniond::i(), j = Quaterniond::j(), k = Quaterniond::k();
  EXPECT_EQ(i * j, k);
  EXPECT_EQ(j * k, i);
  EXPECT_EQ(k * i, j);
  EXPECT_EQ(j * i, -k);
  EXPECT_EQ(i * i, Quaterniond(-1));
  EXPECT_EQ(i * j * k, Quaterniond(-1));
}

TEST(Quaternion, ConjugateAndInverse) {
  const Quaterniond q(1, 2, -3, 4);
  EXPECT_EQ(conj(q), Quaterniond(1, -2, 3, -4));
  EXPECT_NEAR(distance(q * q.inverse(), Quaterniond(1)), 0, 1e-15);
  EXPECT_NEAR(distance(q.inverse() * q, Quaterniond(1)), 0, 1e-15);
  EXPECT_THROW(Quaterniond().inverse(), ZeroInputError);
  EXPECT_EQ(q * conj(q), Quaterniond(q.squaredNorm()));
}

TEST(Quaternion, NormIsMultiplicative) {
  std::mt19937_64 g(7);
  for (int s = 0; s < 1000; ++s) {
    const Quaterniond p = random_quat(g), q = random_quat(g);
    EXPECT_NEAR((p * q).norm(), p.norm() * q.norm(), 1e-15);
    EXPECT_NEAR(distance(conj(p * q), conj(q) * conj(p)), 0, 1e-15);
  }
}

TEST(Quaternion, MatrixRepresentationIsHomomorphism) {
  std::mt19937_64 g(11);
  for (int s = 0; s < 1000; ++s) {
    const Quaterniond p = random_quat(g), q = random_quat(g);
    EXPECT_LT((to_matrix(p * q) - to_matrix(p) * to_matrix(q)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((to_matrix(conj(p)) - to_matrix(p).adjoint()).cwiseAbs().maxCoeff(), 1e-16);
    EXPECT_NEAR(distance(from_matrix(to_matrix(p)), p), 0, 1e-16);
  }
}

TEST(Quaternion, FromMatrixRejectsNonQuaternionPattern) {
  Mat2C<double> m = Mat2C<double>::Identity();
  m(0, 1) = 1.0;
  EXPECT_THROW(from_matrix(m), RepresentationError);
}

TEST(Quaternion, PolarRoundTrip) {
  std::mt19937_64 g(13);
  for (int s = 0; s < 1000; ++s) {
    const Quaterniond q = random_quat(g);
    const auto pf = polar(q);
    EXPECT_GE(pf.theta, 0);
    EXPECT_LE(pf.theta, std::numbers::pi);
    EXPECT_GE(pf.psi, 0);
    EXPECT_LT(pf.psi, 2 * std::numbers::pi);
    EXPECT_LT(distance(unpolar(pf), q) / q.norm(), 1e-14);
  }
}

TEST(Quaternion, PolarOfRealAndZero) {
  const auto pf = polar(Quaterniond(-2));
  EXPECT_DOUBLE_EQ(pf.r, 2);
  EXPECT_DOUBLE_EQ(pf.theta, std::numbers::pi);
  EXPECT_EQ(polar(Quaterniond()).r, 0);
}

TEST(Quaternion, SigmaMatchesPolarImaginaryUnit) {
  // r e^{theta I} with I the unit imaginary part has matrix r e^{i theta sigma(n)}
  const Quaterniond q(0.3, -0.2, 0.5, 0.4);
  const auto pf = polar(q);
  const Quaterniond unit(0, q.imag() / q.imagNorm());
  const Mat2C<double> s = sigma_n(pf.phi, pf.psi);
  // to_matrix(I) and i sigma(n) generate the same one-parameter group
  const Mat2C<double> m = to_matrix(unit);
  EXPECT_LT((m * m + Mat2C<double>::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((s * s - Mat2C<double>::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Quaternion, PowerAgreesWithRepeatedProduct) {
  const Quaterniond q(0.4, 0.1, -0.7, 0.2);
  Quaterniond acc(1);
  for (int n = 0; n < 8; ++n) {
    EXPECT_NEAR(distance(pow(q, n), acc), 0, 1e-15);
    acc = acc * q;
  }
}

TEST(SliceAxis, NormalizesAndRejectsZero) {
  const SliceAxis<double> ax(0, 3, 4);
  EXPECT_NEAR(ax.direction().norm(), 1, 1e-16);
  EXPECT_THROW(SliceAxis<double>(0, 0, 0), ZeroInputError);
  const Quaterniond u = ax.unit();
  EXPECT_NEAR(distance(u * u, Quaterniond(-1)), 0, 1e-15);
}

TEST(SliceAxis, SlicePointsCommute) {
  const SliceAxis<double> ax(1, -2, 2);
  const Quaterniond a = ax.point(0.3, 1.1), b = ax.point(-0.7, 0.4);
  EXPECT_NEAR(distance(a * b, b * a), 0, 1e-15);
  EXPECT_NEAR(ax.off_slice(a), 0, 1e-16);
  EXPECT_GT(ax.off_slice(Quaterniond::i() + Quaterniond::j()), 0.1);
}

TEST(SliceFunctions, ExpOnSlice) {
  const auto ax = SliceAxis<double>::j();
  const Quaterniond q = ax.point(0.5, 1.2);
  const Quaterniond e = exp_q(q);
  EXPECT_NEAR(e.w(), std::exp(0.5) * std::cos(1.2), 1e-15);
  EXPECT_NEAR(e.y(), std::exp(0.5) * std::sin(1.2), 1e-15);
  EXPECT_EQ(exp_q(Quaterniond(0.3)), Quaterniond(std::exp(0.3)));
}

TEST(SliceFunctions, StarExpReducesToExpOnSlice) {
  const auto ax = SliceAxis<double>::k();
  const Quaterniond p = ax.point(0.4, -0.6), q = ax.point(0.2, 0.9);
  EXPECT_NEAR(distance(star_exp(p, q), exp_q(p * q)), 0, 1e-15);
  EXPECT_EQ(star_exp(p, Quaterniond()), Quaterniond(1));
}

TEST(SliceFunctions, StarExpOffSliceDiffersFromExp) {
  const Quaterniond p(0.1, 0.8, 0, 0), q(0.2, 0, 0.7, 0);
  EXPECT_GT(distance(star_exp(p, q), exp_q(p * q)), 1e-3);
}

TEST(SliceFunctions, SliceSqrt) {
  const auto ax = SliceAxis<double>::j();
  const Quaterniond q = ax.point(-0.3, 0.8);
  const Quaterniond h = slice_sqrt(q);
  EXPECT_NEAR(distance(h * h, q), 0, 1e-15);
  EXPECT_GE(h.w(), 0);
  const Quaterniond m = slice_sqrt(Quaterniond(-4), ax);
  EXPECT_NEAR(distance(m, ax.point(0, 2)), 0, 1e-15);
}

TEST(Summation, PairwiseMatchesSmallSums) {
  const double s = pairwise_sum<double>(100, [](std::ptrdiff_t n) { return double(n); });
  EXPECT_EQ(s, 4950);
  EXPECT_EQ(pairwise_sum<double>(0, [](std::ptrdiff_t) { return 1.0; }), 0);
}

TEST(Summation, PairwiseBeatsNaiveOnCancellation) {
  const std::ptrdiff_t n = 1 << 20;
  const auto term = [](std::ptrdiff_t) { return 0.1; };
  double naive = 0;
  for (std::ptrdiff_t i = 0; i < n; ++i) naive += term(i);
  const double exact = 0.1 * static_cast<double>(n);
  EXPECT_LE(std::abs(pairwise_sum<double>(n, term) - exact), std::abs(naive - exact));
}
