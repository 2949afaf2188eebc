#pragma once

#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/report.hpp"

namespace qfock {

/// Ladder operators and their quadratic companions on a truncated space.
struct LadderSet {
  Index dim{0};
  SliceAxis<double> axis;
  QOperatord a{1}, a_dag{1}, n_op{1};
  QOperatord x_op{1}, y_op{1};
  QOperatord a2{1}, a_dag2{1};
  QOperatord k_plus{1}, k_minus{1}, k_zero{1};
  QOperatord identity{1};
};

/// a Phi_n = sqrt(n) Phi_{n-1}, a^dagger its adjoint. Y uses the given axis
/// in place of i.
LadderSet build_ladder(Index dim, const SliceAxis<double>& axis = SliceAxis<double>::i());

/// max |q.A - A.q| for A = a and A = a^dagger.
Report check_scalar_commute(const Quaterniond& q, const LadderSet& L);

Report check_canonical(const LadderSet& L, const ProtectedBlock& block, double tol = 1e-12);
Report check_su11(const LadderSet& L, const ProtectedBlock& block, double tol = 1e-12);
Report check_xy(const LadderSet& L, const ProtectedBlock& block, double tol = 1e-12);

struct BracketIdentity {
  std::string name;
  QOperatord lhs;
  QOperatord printed;  // right-hand side as tabulated
  QOperatord derived;  // right-hand side from [a, a^dagger] = I
};

/// The eight-entry commutator table of the quadratic algebra.
std::vector<BracketIdentity> bracket_table(const LadderSet& L);

/// Checks every table entry against its derived right-hand side and
/// records, separately, the deviation of each printed right-hand side.
struct BracketTableResult {
  Report derived;
  Report printed;
};
BracketTableResult check_bracket_table(const LadderSet& L, const ProtectedBlock& block,
                                       double tol = 1e-12);

}  // namespace qfock
