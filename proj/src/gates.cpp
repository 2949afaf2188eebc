#include "qfock/gates.hpp"

#include <algorithm>
#include <cmath>

namespace qfock {

SqueezeParams::SqueezeParams(const Quaterniond& p_) : p(p_), r(p_.norm()) {
  if (r > 0) u = p_ / r;
}

SqueezeParams SqueezeParams::polar(double r, const Quaterniond& unit) {
  if (r < 0) throw ConfigError("squeeze radius must be nonnegative");
  return SqueezeParams(unit_phase(unit) * r);
}

Index recommended_dim(Index block, double r, double q_abs) {
  const double e = (static_cast<double>(block) + 2 * q_abs * q_abs + 1) * std::exp(2 * r);
  const double need = e + 10 * std::sqrt(e) + 16;
  const Index d = static_cast<Index>(std::ceil(need / 16.0)) * 16;
  return std::max<Index>(64, d);
}

double unitarity_defect(const QOperatord& u, Index n) {
  return block_distance(adjoint(u) * u, QOperatord::Identity(u.dim()), n);
}

QOperatord displacement_generator(const Quaterniond& q, const LadderSet& L) {
  return left_mul_op(q, L.a_dag) - left_mul_op(conj(q), L.a);
}

QOperatord displacement(const Quaterniond& q, const LadderSet& L) {
  if (q == Quaterniond(0)) return L.identity;
  return op_exp(displacement_generator(q, L));
}

QOperatord ordered_displacement(const Quaterniond& q, const LadderSet& L, Ordering mode) {
  const double s = q.squaredNorm();
  const QOperatord up = op_exp(left_mul_op(q, L.a_dag));
  const QOperatord down = op_exp(left_mul_op(-conj(q), L.a));
  if (mode == Ordering::normal) return (up * down) * std::exp(-s / 2);
  return (down * up) * std::exp(s / 2);
}

Report check_displacement_shift(const Quaterniond& q, const LadderSet& L,
                                const ProtectedBlock& block, double tol) {
  Report r("displacement shift");
  const QOperatord d = displacement(q, L);
  const QOperatord dd = adjoint(d);
  const Index n = block.size();
  r.add("D+ a D = a + q", block_distance(dd * L.a * d, L.a + left_mul_op(q, L.identity), n),
        tol);
  r.add("D+ a+ D = a+ + conj(q)",
        block_distance(dd * L.a_dag * d, L.a_dag + left_mul_op(conj(q), L.identity), n), tol);
  return r;
}

QOperatord squeeze_generator(const SqueezeParams& sp, const LadderSet& L) {
  return (left_mul_op(sp.p, L.a_dag2) - left_mul_op(conj(sp.p), L.a2)) * 0.5;
}

QOperatord squeeze(const SqueezeParams& sp, const LadderSet& L) {
  if (!sp.has_phase()) return L.identity;
  return op_exp(squeeze_generator(sp, L));
}

Report check_squeeze_conjugation(const SqueezeParams& sp, const LadderSet& L,
                                 const ProtectedBlock& block, double tol) {
  Report r("squeeze conjugation");
  const QOperatord s = squeeze(sp, L);
  const QOperatord sd = adjoint(s);
  const double c = std::cosh(sp.r), sh = std::sinh(sp.r);
  const Quaterniond u = sp.u, ub = conj(sp.u);
  const Index n = block.size();

  const QOperatord ta = L.a * c + left_mul_op(u * sh, L.a_dag);
  const QOperatord tad = L.a_dag * c + left_mul_op(ub * sh, L.a);
  const QOperatord tn = L.n_op * (c * c) + left_mul_op(ub * (sh * c), L.a2) +
                        left_mul_op(u * (sh * c), L.a_dag2) + (L.a * L.a_dag) * (sh * sh);
  r.add("S+ a S", block_distance(sd * L.a * s, ta, n), tol);
  r.add("S+ a+ S", block_distance(sd * L.a_dag * s, tad, n), tol);
  r.add("S+ N S", block_distance(sd * L.n_op * s, tn, n), tol);
  return r;
}

Report check_squeeze_bch(const SqueezeParams& sp, const LadderSet& L,
                         const ProtectedBlock& block, double tol) {
  Report r("squeeze nested commutators");
  const QOperatord m = -squeeze_generator(sp, L);
  const QOperatord c1 = commutator(m, L.a);
  const Index n = block.size();
  r.add("[-A,a] = p.a+", block_distance(c1, left_mul_op(sp.p, L.a_dag), n), tol);
  r.add("[-A,[-A,a]] = |p|^2 a", block_distance(commutator(m, c1), L.a * sp.p.squaredNorm(), n),
        tol);
  return r;
}

double disentangle_beta(double r, BetaVariant v) {
  return v == BetaVariant::statement ? -2 * std::log(std::cosh(2 * r))
                                     : -2 * std::log(std::cosh(r));
}

QOperatord disentangled_squeeze(const SqueezeParams& sp, const LadderSet& L, BetaVariant v) {
  if (!sp.has_phase()) return L.identity;
  const Quaterniond z = sp.u * std::tanh(sp.r);
  const QOperatord up = op_exp(left_mul_op(z, L.k_plus));
  const QOperatord mid = op_exp(L.k_zero * disentangle_beta(sp.r, v));
  const QOperatord down = op_exp(left_mul_op(-conj(z), L.k_minus));
  return up * mid * down;
}

SqueezeAdjointResult squeeze_adjoint_action(const SqueezeParams& sp, const LadderSet& L,
                                            Index block) {
  const QOperatord g = squeeze_generator(sp, L);
  const QOperatord e = op_exp(g);
  const QOperatord einv = op_exp(-g);
  const double r = sp.r;
  const Quaterniond u = sp.u, ub = conj(sp.u);

  const QOperatord k0 = e * L.k_zero * einv;
  const QOperatord mix = left_mul_op(u, L.k_plus) + left_mul_op(ub, L.k_minus);
  const QOperatord cosh_k0 = L.k_zero * std::cosh(2 * r);
  SqueezeAdjointResult out{};
  out.k0_printed = block_distance(k0, cosh_k0 - mix * std::sinh(2 * r), block);
  out.k0_derived = block_distance(k0, cosh_k0 - mix * (std::sinh(2 * r) / 2), block);

  const QOperatord km = e * L.k_minus * einv;
  const double sh = std::sinh(r), ch = std::cosh(r);
  const QOperatord target = left_mul_op(u * u * (sh * sh), L.k_plus) + L.k_minus * (ch * ch) -
                            left_mul_op(u * std::sinh(2 * r), L.k_zero);
  out.k_minus = block_distance(km, target, block);
  return out;
}

}  // namespace qfock
