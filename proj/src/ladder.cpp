#include "qfock/ladder.hpp"

#include <cmath>

namespace qfock {

LadderSet build_ladder(Index dim, const SliceAxis<double>& axis) {
  if (dim < 4) throw ConfigError("ladder needs dim >= 4");
  LadderSet L;
  L.dim = dim;
  L.axis = axis;
  QOperatord::Matrix a = QOperatord::Matrix::Zero(dim, dim);
  for (Index n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  L.a = QOperatord::Real(a);
  L.a_dag = adjoint(L.a);
  L.n_op = L.a_dag * L.a;
  L.a2 = L.a * L.a;
  L.a_dag2 = L.a_dag * L.a_dag;
  L.identity = QOperatord::Identity(dim);
  L.x_op = (L.a + L.a_dag) * 0.5;
  L.y_op = left_mul_op(axis.unit() * -0.5, L.a - L.a_dag);
  L.k_plus = L.a_dag2 * 0.5;
  L.k_minus = L.a2 * 0.5;
  L.k_zero = (L.n_op + L.identity * 0.5) * 0.5;
  return L;
}

Report check_scalar_commute(const Quaterniond& q, const LadderSet& L) {
  Report r("scalar commute");
  r.add("q.a = a.q", max_abs(left_mul_op(q, L.a) - right_mul_op(L.a, q)), 1e-15);
  r.add("q.a+ = a+.q", max_abs(left_mul_op(q, L.a_dag) - right_mul_op(L.a_dag, q)), 1e-15);
  return r;
}

Report check_canonical(const LadderSet& L, const ProtectedBlock& block, double tol) {
  Report r("canonical");
  const Index n = block.size();
  r.add("[a,a+] = I", block_distance(commutator(L.a, L.a_dag), L.identity, n), tol);
  r.add("a+ = adjoint(a)", max_abs(L.a_dag - adjoint(L.a)), 0.0);
  r.add("N self-adjoint", max_abs(L.n_op - adjoint(L.n_op)), 0.0);
  QOperatord diag(L.dim);
  for (Index k = 0; k < L.dim; ++k) diag.set(k, k, Quaterniond(static_cast<double>(k)));
  r.add("N = diag(0..d-1)", max_abs(L.n_op - diag), tol);
  return r;
}

Report check_su11(const LadderSet& L, const ProtectedBlock& block, double tol) {
  Report r("su(1,1)");
  const Index n = block.size();
  r.add("[K0,K+] = K+", block_distance(commutator(L.k_zero, L.k_plus), L.k_plus, n), tol);
  r.add("[K0,K-] = -K-", block_distance(commutator(L.k_zero, L.k_minus), -L.k_minus, n), tol);
  r.add("[K+,K-] = -2K0",
        block_distance(commutator(L.k_plus, L.k_minus), L.k_zero * -2.0, n), tol);
  return r;
}

Report check_xy(const LadderSet& L, const ProtectedBlock& block, double tol) {
  Report r("X,Y");
  r.add("X self-adjoint", max_abs(adjoint(L.x_op) - L.x_op), tol);
  r.add("Y self-adjoint", max_abs(adjoint(L.y_op) - L.y_op), tol);
  const QOperatord target = left_mul_op(L.axis.unit() * 0.5, L.identity);
  r.add("[X,Y] = (I/2) id", block_distance(commutator(L.x_op, L.y_op), target, block.size()),
        tol);
  return r;
}

std::vector<BracketIdentity> bracket_table(const LadderSet& L) {
  const QOperatord two_n_plus_one = L.n_op * 2.0 + L.identity;
  std::vector<BracketIdentity> t;
  t.push_back({"[a,a+] = I", commutator(L.a, L.a_dag), L.identity, L.identity});
  t.push_back({"[a,N] = a", commutator(L.a, L.n_op), L.a, L.a});
  t.push_back({"[a+,N] = -a+", commutator(L.a_dag, L.n_op), -L.a_dag, -L.a_dag});
  t.push_back({"[a^2,(a+)^2]", commutator(L.a2, L.a_dag2), two_n_plus_one * -2.0,
               two_n_plus_one * 2.0});
  t.push_back({"[a^2,a+] = 2a", commutator(L.a2, L.a_dag), L.a * 2.0, L.a * 2.0});
  t.push_back({"[(a+)^2,a] = -2a+", commutator(L.a_dag2, L.a), L.a_dag * -2.0,
               L.a_dag * -2.0});
  t.push_back({"[a^2,N] = 2a^2", commutator(L.a2, L.n_op), L.a2 * 2.0, L.a2 * 2.0});
  t.push_back({"[(a+)^2,N] = -2(a+)^2", commutator(L.a_dag2, L.n_op), L.a_dag2 * -2.0,
               L.a_dag2 * -2.0});
  return t;
}

BracketTableResult check_bracket_table(const LadderSet& L, const ProtectedBlock& block,
                                       double tol) {
  BracketTableResult out{Report("bracket table"), Report("bracket table, printed")};
  for (const auto& b : bracket_table(L)) {
    out.derived.add(b.name, block_distance(b.lhs, b.derived, block.size()), tol);
    out.printed.add(b.name, block_distance(b.lhs, b.printed, block.size()), tol);
  }
  return out;
}

}  // namespace qfock
