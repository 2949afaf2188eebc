#include <gtest/gtest.h>

#include <sstream>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "qfock/errors.hpp"
#include "qfock/fock.hpp"
#include "qfock/io.hpp"
#include "qfock/report.hpp"

using namespace qfock;

namespace {

struct Gen {
  std::mt19937_64 g{42};
  double u() { return std::uniform_real_distribution<double>(-1, 1)(g); }
  Quaterniond q() { return {u(), u(), u(), u()}; }
  FockVectord vec(Index d) {
    FockVectord f(d);
    for (Index k = 0; k < d; ++k) f.set(k, q());
    return f;
  }
  QOperatord op(Index d) {
    QOperatord a(d);
    for (Index j = 0; j < d; ++j)
      for (Index k = 0; k < d; ++k) a.set(j, k, q());
    return a;
  }
};

double vdist(const FockVectord& a, const FockVectord& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(FockVector, BasisAndNorm) {
  const FockVectord e = FockVectord::basis(5, 2);
  EXPECT_EQ(e[2], Quaterniond(1));
  EXPECT_DOUBLE_EQ(norm(e), 1);
  EXPECT_THROW(FockVectord(0), ConfigError);
}

TEST(FockVector, InnerIsRightLinearInSecondSlot) {
  Gen g;
  const FockVectord f = g.vec(6), h = g.vec(6);
  const Quaterniond q = g.q();
  EXPECT_NEAR(distance(inner(f, right_scale(h, q)), inner(f, h) * q), 0, 1e-14);
  EXPECT_NEAR(distance(inner(right_scale(f, q), h), conj(q) * inner(f, h)), 0, 1e-14);
  EXPECT_NEAR(distance(inner(f, h), conj(inner(h, f))), 0, 1e-15);
}

TEST(FockVector, TailMass) {
  FockVectord f(4);
  f.set(0, Quaterniond(0.6));
  f.set(3, Quaterniond(0, 0.8));
  EXPECT_NEAR(tail_mass(f, 2), 0.64, 1e-15);
  EXPECT_EQ(tail_mass(f, 4), 0);
}

TEST(LeftProduct, Axioms) {
  Gen g;
  const FockVectord f = g.vec(8), h = g.vec(8);
  const Quaterniond p = g.q(), q = g.q();
  EXPECT_NEAR(norm(left_mul(q, f)), q.norm() * norm(f), 1e-14);
  EXPECT_LT(vdist(left_mul(q, left_mul(p, f)), left_mul(q * p, f)), 1e-15);
  EXPECT_NEAR(distance(inner(left_mul(conj(q), f), h), inner(f, left_mul(q, h))), 0, 1e-14);
  EXPECT_LT(vdist(left_mul(Quaterniond(0.7), f), right_scale(f, Quaterniond(0.7))), 1e-16);
  for (Index k = 0; k < 8; ++k)
    EXPECT_EQ(left_mul(q, FockVectord::basis(8, k))[k], q);
}

TEST(LeftProduct, IsNotRightScalingOffBasis) {
  FockVectord f(2);
  f.set(0, Quaterniond::j());
  const Quaterniond q = Quaterniond::i();
  EXPECT_GT(vdist(left_mul(q, f), right_scale(f, q)), 1);
}

TEST(QOperator, ApplyComposeAndAdjoint) {
  Gen g;
  const QOperatord a = g.op(5), b = g.op(5);
  const FockVectord f = g.vec(5), h = g.vec(5);
  EXPECT_LT(vdist(apply(compose(a, b), f), apply(a, apply(b, f))), 1e-14);
  EXPECT_NEAR(distance(inner(apply(a, f), h), inner(f, apply(adjoint(a), h))), 0, 1e-13);
  EXPECT_LT(max_abs(adjoint(adjoint(a)) - a), 1e-16);
  EXPECT_LT(max_abs(adjoint(a * b) - adjoint(b) * adjoint(a)), 1e-14);
}

TEST(QOperator, ScalarMultiplicationLaws) {
  Gen g;
  const QOperatord a = g.op(4);
  const FockVectord f = g.vec(4);
  const Quaterniond q = g.q(), p = g.q();
  EXPECT_LT(vdist(apply(left_mul_op(q, a), f), left_mul(q, apply(a, f))), 1e-14);
  EXPECT_LT(vdist(apply(right_mul_op(a, q), f), apply(a, left_mul(q, f))), 1e-14);
  EXPECT_LT(max_abs(adjoint(left_mul_op(q, a)) - right_mul_op(adjoint(a), conj(q))), 1e-15);
  EXPECT_LT(max_abs(left_mul_op(q, left_mul_op(p, a)) - left_mul_op(q * p, a)), 1e-15);
}

TEST(QOperator, DimensionMismatchThrows) {
  EXPECT_THROW(QOperatord(3) * QOperatord(4), DimensionMismatch);
  EXPECT_THROW(apply(QOperatord(3), FockVectord(4)), DimensionMismatch);
}

TEST(QOperator, ComplexEmbeddingIsMultiplicative) {
  Gen g;
  const QOperatord a = g.op(4), b = g.op(4);
  EXPECT_LT((embed_complex(a * b) - embed_complex(a) * embed_complex(b)).cwiseAbs().maxCoeff(),
            1e-14);
  EXPECT_LT((embed_complex(adjoint(a)) - embed_complex(a).adjoint()).cwiseAbs().maxCoeff(), 1e-16);
}

TEST(OpExp, MatchesComplexMatrixExponential) {
  Gen g;
  for (const double scale : {0.1, 1.0, 6.0}) {
    const QOperatord a = g.op(6) * scale;
    const auto expected = embed_complex(a).exp().eval();
    const auto got = embed_complex(op_exp(a));
    const double rel = (got - expected).cwiseAbs().maxCoeff() /
                       std::max(1.0, expected.cwiseAbs().maxCoeff());
    EXPECT_LT(rel, 1e-12) << "scale " << scale;
  }
}

TEST(OpExp, AntiHermitianGivesUnitary) {
  Gen g;
  const QOperatord h = g.op(8);
  const QOperatord a = (h - adjoint(h)) * 0.8;
  const QOperatord u = op_exp(a);
  EXPECT_LT(max_abs(adjoint(u) * u - QOperatord::Identity(8)), 1e-13);
  EXPECT_LT(max_abs(op_exp(QOperatord::Zero(8)) - QOperatord::Identity(8)), 0.0 + 1e-300);
}

TEST(OpExp, NonFiniteInputFails) {
  QOperatord a(3);
  a.set(0, 0, Quaterniond(std::numeric_limits<double>::infinity()));
  EXPECT_THROW(op_exp(a), ConvergenceError);
}

TEST(ProtectedBlock, Validation) {
  EXPECT_EQ(ProtectedBlock(64, 16).size(), 48);
  EXPECT_THROW(ProtectedBlock(8, 8), ConfigError);
  EXPECT_THROW(ProtectedBlock(8, 0), ConfigError);
}

TEST(Io, VectorJsonRoundTrip) {
  Gen g;
  const FockVectord f = g.vec(5);
  const auto j = to_json(f);
  EXPECT_EQ(j["dim"], 5);
  EXPECT_EQ(j["layout"], "row-major");
  EXPECT_EQ(vdist(vector_from_json(nlohmann::json::parse(j.dump())), f), 0);
}

TEST(Io, OperatorJsonRoundTrip) {
  Gen g;
  const QOperatord a = g.op(3);
  EXPECT_EQ(max_abs(operator_from_json(nlohmann::json::parse(to_json(a).dump())) - a), 0);
}

TEST(Io, CsvQuoting) {
  std::ostringstream os;
  CsvWriter csv(os, {"a", "b"});
  csv.row({"x,y", "say \"hi\""});
  EXPECT_EQ(os.str(), "a,b\r\n\"x,y\",\"say \"\"hi\"\"\"\r\n");
}

TEST(Report, PassFailAndLedger) {
  Report r("t");
  r.add("ok", 1e-10, 1e-9);
  r.add("bad", 1e-3, 1e-9);
  EXPECT_FALSE(r.passed());
  ASSERT_EQ(r.failures().size(), 1u);
  EXPECT_EQ(r.failures()[0], "bad");
  EXPECT_DOUBLE_EQ(r.deviation("bad"), 1e-3);
  Ledger l;
  l.add({"x", "printed", "derived", std::numeric_limits<double>::infinity(), 8, 2});
  EXPECT_TRUE(l.contains("x"));
  EXPECT_EQ(l.to_json()[0]["measured_deviation"], "inf");
}

TEST(Report, FormatDoubleRoundTrips) {
  for (const double v : {0.1, 1.0 / 3, 1e-300, 12345.678})
    EXPECT_EQ(std::stod(format_double(v)), v);
}
