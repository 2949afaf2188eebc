#pragma once

#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/gates.hpp"
#include "qfock/ladder.hpp"
#include "qfock/report.hpp"

namespace qfock {

/// p = r_p e^{I theta_p} and q = r_q e^{I theta_q} in one slice C_I.
struct SliceParams {
  SliceAxis<double> axis;
  double r_p{0}, theta_p{0};
  double r_q{0}, theta_q{0};

  Quaterniond p() const { return axis.phase(theta_p) * r_p; }
  Quaterniond q() const { return axis.phase(theta_q) * r_q; }
  /// I_p = e^{I theta_p}.
  Quaterniond i_p() const { return axis.phase(theta_p); }
  SqueezeParams squeeze() const { return SqueezeParams(p()); }

  /// Rejects p, q that do not share a slice (OffSliceError).
  static SliceParams from_pair(const Quaterniond& p, const Quaterniond& q,
                               const SliceAxis<double>& fallback = SliceAxis<double>::i(),
                               double tol = 1e-12);
};

/// frak r = tanh(|p|) p / |p|.
Quaterniond r_param(const Quaterniond& p);

/// One observable: printed closed form, closed form derived from the
/// operator identities, and the value measured on the state.
struct SliceObservable {
  std::string name;
  std::string printed_formula;
  Quaterniond printed;
  Quaterniond derived;
  Quaterniond numeric;

  double printed_deviation() const { return distance(printed, numeric); }
  double derived_deviation() const { return distance(derived, numeric); }
};

struct SliceReport {
  std::string state;  // "two_photon" or "squeezed_coherent"
  SliceParams params;
  Index dim{0};
  std::vector<SliceObservable> observables;
  std::vector<Check> operator_identities;  // block deviations of the conjugation formulas
  double snr{0};
  double mandel_q{0};          // var N / <N> - 1
  double mandel_q_printed{0};  // sqrt(var N) / <N> - 1, as the definition is printed
  double off_slice{0};         // largest coefficient component outside C_I

  /// Every observable matches the oracle through its printed or derived form.
  Report oracle_report(double tol) const;
};

/// S(p) D(q) Phi_0.
FockVectord two_photon_state(const SliceParams& sl, const LadderSet& L);
/// D(q) S(p) Phi_0.
FockVectord squeezed_coherent_state(const SliceParams& sl, const LadderSet& L);

/// Moments use the state's own tail check (margin 16); block bounds the
/// operator identities.
SliceReport two_photon_expectations(const SliceParams& sl, const LadderSet& L,
                                    const ProtectedBlock& block);
SliceReport squeezed_coherent_expectations(const SliceParams& sl, const LadderSet& L,
                                           const ProtectedBlock& block);

/// H_n(q) = n! sum_m (-1)^m (2q)^{n-2m} / (m! (n-2m)!).
Quaterniond hermite(int n, const Quaterniond& q);

/// f(q) = sum_n q^n / sqrt(n!) c_n. Throws TailViolation when the last
/// terms are not negligible.
Quaterniond bargmann_eval(const FockVectord& v, const Quaterniond& q, double tail_tol = 1e-13);

/// Closed form of (S(p) Phi_n)(q) through Hermite polynomials.
Quaterniond squeezed_basis_closed_form(int n, const SliceParams& sl, const Quaterniond& point);

/// The same value through the three-factor product acting on q^n / sqrt(n!):
/// e^{-conj(r) d^2/2}, then q^k -> (1-|r|^2)^{(k+1/2)/2} q^k, then e^{r q^2/2}.
Quaterniond squeezed_basis_factorized(int n, const SliceParams& sl, const Quaterniond& point);

}  // namespace qfock
