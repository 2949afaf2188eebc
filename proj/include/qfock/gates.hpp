#pragma once

#include "qfock/fock.hpp"
#include "qfock/ladder.hpp"
#include "qfock/report.hpp"

namespace qfock {

/// p = r u with r = |p| and |u| = 1; u is meaningless when r = 0.
struct SqueezeParams {
  Quaterniond p;
  double r{0};
  Quaterniond u{1};

  SqueezeParams() = default;
  explicit SqueezeParams(const Quaterniond& p_);
  static SqueezeParams polar(double r, const Quaterniond& unit);
  bool has_phase() const { return r > 0; }
};

/// Truncation size for identities probed on the first `block` levels of
/// states or conjugations produced by S(p) and D(q). Squeezing by r
/// stretches the occupied levels by roughly e^{2r}.
Index recommended_dim(Index block, double r, double q_abs = 0);

/// max |U^dagger U - I| on the leading n x n block.
double unitarity_defect(const QOperatord& u, Index n);

// ------------------------------------------------------------ displacement

QOperatord displacement_generator(const Quaterniond& q, const LadderSet& L);
/// D(q) = exp(q.a^dagger - conj(q).a).
QOperatord displacement(const Quaterniond& q, const LadderSet& L);

enum class Ordering { normal, antinormal };
/// normal: e^{-|q|^2/2} e^{q.a+} e^{-q*.a}; antinormal: e^{|q|^2/2} e^{-q*.a} e^{q.a+}.
QOperatord ordered_displacement(const Quaterniond& q, const LadderSet& L, Ordering mode);

/// D^dagger a D = a + q and D^dagger a^dagger D = a^dagger + conj(q).
Report check_displacement_shift(const Quaterniond& q, const LadderSet& L,
                                const ProtectedBlock& block, double tol = 1e-8);

// ----------------------------------------------------------------- squeeze

/// A = (p.(a+)^2 - conj(p).a^2)/2.
QOperatord squeeze_generator(const SqueezeParams& sp, const LadderSet& L);
QOperatord squeeze(const SqueezeParams& sp, const LadderSet& L);

/// Conjugation of a, a^dagger and N by S(p) against the closed forms.
Report check_squeeze_conjugation(const SqueezeParams& sp, const LadderSet& L,
                                 const ProtectedBlock& block, double tol = 1e-8);

/// Nested commutators of -A with a: p.a^dagger, then |p|^2 a.
Report check_squeeze_bch(const SqueezeParams& sp, const LadderSet& L,
                         const ProtectedBlock& block, double tol = 1e-12);

enum class BetaVariant { statement, proof };
double disentangle_beta(double r, BetaVariant v);
/// e^{z.K+} e^{beta K0} e^{-conj(z).K-} with z = tanh(r) u.
QOperatord disentangled_squeeze(const SqueezeParams& sp, const LadderSet& L, BetaVariant v);

/// e^{A} K0 e^{-A} and e^{A} K- e^{-A} against closed forms. The K0 form
/// is measured with both candidate coefficients on the K+/K- part.
struct SqueezeAdjointResult {
  double k0_printed;   // coefficient sinh(2r)
  double k0_derived;   // coefficient sinh(2r)/2
  double k_minus;
};
SqueezeAdjointResult squeeze_adjoint_action(const SqueezeParams& sp, const LadderSet& L,
                                            Index block);

}  // namespace qfock
