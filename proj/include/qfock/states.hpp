#pragma once

#include <limits>

#include "qfock/fock.hpp"
#include "qfock/gates.hpp"
#include "qfock/ladder.hpp"
#include "qfock/report.hpp"

namespace qfock {

/// Default bound on probability mass allowed outside the truncated space.
inline constexpr double kTailTol = 1e-12;

/// e^{-|q|^2/2} q^n / sqrt(n!), n < dim. Throws TailViolation when the
/// dropped mass exceeds tail_tol.
FockVectord coherent(const Quaterniond& q, Index dim, double tail_tol = kTailTol);
/// Mass e^{-|q|^2} sum_{n >= dim} |q|^{2n}/n! dropped by truncation.
double coherent_tail(double q_abs, Index dim);

/// S(p) Phi_0 through the matrix exponential.
FockVectord pure_squeezed(const SqueezeParams& sp, const LadderSet& L);
/// c_{2n} = (cosh r)^{-1/2} (u tanh r)^n sqrt((2n)!) / (2^n n!).
FockVectord pure_squeezed_closed_form(const SqueezeParams& sp, Index dim);

/// The printed normal-ordered series e^{r^2/4} sum e^{n r^2} p^n sqrt((2n)!)/(2^n n!)
/// and the anti-normal double sum, both against the oracle state.
struct ScsSeriesReport {
  double printed_deviation{0};   // max coefficient deviation from S(p) Phi_0
  double printed_norm{0};        // norm of the printed partial sum
  double printed_term_ratio{0};  // limiting ratio e^{r^2} r of successive terms
  bool printed_diverges{false};
  double antinormal_deviation{0};
  double antinormal_norm{0};
  int antinormal_terms{0};
  double closed_form_deviation{0};  // tanh-form coefficients vs S(p) Phi_0
};
ScsSeriesReport scs_series_check(const SqueezeParams& sp, const LadderSet& L,
                                 int antinormal_terms = 40);
FockVectord scs_printed_series(const SqueezeParams& sp, Index dim);
FockVectord scs_antinormal_series(const SqueezeParams& sp, Index dim, int terms);

/// S(p) D(q) Phi_0 = S(p) eta_q.
FockVectord squeezed_state(const SqueezeParams& sp, const Quaterniond& q, const LadderSet& L,
                           double tail_tol = kTailTol);

struct ExpectationReport {
  Quaterniond mean_a, mean_adag, mean_x, mean_y, mean_n;
  Quaterniond mean_aadag, mean_adaga, mean_a2, mean_adag2, mean_x2, mean_y2, mean_n2;
  double var_x{0}, var_y{0}, var_n{0};
  double mandel_q{std::numeric_limits<double>::quiet_NaN()};
  double max_self_adjoint_imag{0};  // largest imaginary part among <X>, <Y>, <N>, <X^2>, ...
};

/// Means and variances on a unit state whose mass beyond the block is
/// below tail_tol.
ExpectationReport expectations(const FockVectord& state, const LadderSet& L,
                               const ProtectedBlock& block, double tail_tol = 1e-10);

/// Closed forms for pure squeezed states compared with `expectations`.
Report check_pure_squeezed_moments(const SqueezeParams& sp, const LadderSet& L,
                                   const ProtectedBlock& block, double tol = 1e-8);

/// U = (conj(u)^{1/2}.a + u^{1/2}.a^dagger)/2, V = -(I/2).(conj(u)^{1/2}.a - u^{1/2}.a^dagger),
/// with I the slice axis of u.
struct UVOperators {
  QOperatord u_op{1};
  QOperatord v_op{1};
};
UVOperators uv_operators(const SqueezeParams& sp, const LadderSet& L);
Report uv_quadrature_check(const SqueezeParams& sp, const LadderSet& L,
                           const ProtectedBlock& block, double tol = 1e-8);

/// <Delta N>^2 / <N> - 1. Throws UndefinedQuantity when <N> <= min_mean.
double mandel_q(const FockVectord& state, const LadderSet& L, const ProtectedBlock& block,
                double min_mean = 1e-12);

}  // namespace qfock
