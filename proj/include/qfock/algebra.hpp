#pragma once

#include <array>
#include <string>

#include "json.hpp"
#include "qfock/fock.hpp"
#include "qfock/ladder.hpp"

namespace qfock {

enum class Generator { I = 0, N, A, ADag, A2, ADag2 };
inline constexpr int kGenerators = 6;
inline constexpr int kAlgebraDim = 24;

/// Real coefficients over tau . G for tau in {1, i, j, k} and the six
/// generators; index tau * 6 + generator.
class AlgebraElement {
 public:
  using Coeffs = Eigen::Matrix<double, kAlgebraDim, 1>;

  AlgebraElement() : c_(Coeffs::Zero()) {}
  explicit AlgebraElement(const Coeffs& c) : c_(c) {}
  static AlgebraElement basis(int tau, Generator g, double value = 1);

  double operator()(int tau, Generator g) const { return c_(tau * kGenerators + int(g)); }
  double& operator()(int tau, Generator g) { return c_(tau * kGenerators + int(g)); }
  const Coeffs& coeffs() const { return c_; }

  /// Part carried by tau alone (A_1 for tau = 0, A_tau otherwise).
  AlgebraElement part(int tau) const;
  /// Only the {1, tau} blocks are nonzero.
  bool in_h12(int tau) const;

  AlgebraElement operator+(const AlgebraElement& o) const { return AlgebraElement(c_ + o.c_); }
  AlgebraElement operator-(const AlgebraElement& o) const { return AlgebraElement(c_ - o.c_); }
  AlgebraElement operator*(double s) const { return AlgebraElement(c_ * s); }
  /// Left multiplication by x + tau y, which maps h12(tau) to itself.
  AlgebraElement scale(double x, double y, int tau) const;

 private:
  Coeffs c_;
};

std::string generator_name(int tau, Generator g);

/// sum coeff * tau . G as an operator.
QOperatord realize(const AlgebraElement& e, const LadderSet& L);

struct Decomposition {
  AlgebraElement element;
  double residual{0};  // max entry deviation on the block
};
/// Least squares fit of op on the protected block.
Decomposition decompose(const QOperatord& op, const LadderSet& L, const ProtectedBlock& block);

struct BracketResult {
  AlgebraElement element;
  double residual{0};
};

/// [A,B]_tau = AB - BA for A, B in h12(tau) (ConfigError otherwise).
BracketResult bracket_tau(const AlgebraElement& a, const AlgebraElement& b, int tau,
                          const LadderSet& L, const ProtectedBlock& block);

/// The h24 bracket in both printed forms:
///   first:  [A1,B1] + sum_tau [A1,B_tau] + sum_tau [A_tau, B1 + B_tau]
///   second: sum_tau ( [A1,B1]/3 + [A1,B_tau] + [A_tau, B1 + B_tau] )
struct H24Bracket {
  BracketResult first;
  BracketResult second;
  double disagreement{0};  // max coefficient difference
};
H24Bracket bracket_h24(const AlgebraElement& a, const AlgebraElement& b, const LadderSet& L,
                       const ProtectedBlock& block);

/// Coefficient max norm of [A,[B,C]] + [C,[A,B]] + [B,[C,A]].
double jacobi_residual_h24(const AlgebraElement& a, const AlgebraElement& b,
                           const AlgebraElement& c, const LadderSet& L,
                           const ProtectedBlock& block);
double jacobi_residual_tau(const AlgebraElement& a, const AlgebraElement& b,
                           const AlgebraElement& c, int tau, const LadderSet& L,
                           const ProtectedBlock& block);

/// Nonzero structure constants of the h24 bracket on basis pairs.
nlohmann::ordered_json structure_constants(const LadderSet& L, const ProtectedBlock& block);

}  // namespace qfock
