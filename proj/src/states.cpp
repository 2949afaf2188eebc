#include "qfock/states.hpp"

#include <cmath>

namespace qfock {

namespace {

// log of sqrt((2n)!) / (2^n n!)
double log_even_weight(Index n) {
  return 0.5 * std::lgamma(2.0 * n + 1) - n * std::log(2.0) - std::lgamma(n + 1.0);
}

double max_coeff_distance(const FockVectord& a, const FockVectord& b) {
  detail::check_dims(a.dim(), b.dim(), "coefficient distance");
  double m = 0;
  for (Index k = 0; k < a.dim(); ++k) m = std::max(m, distance(a[k], b[k]));
  return m;
}

double imag_abs(const Quaterniond& q) { return q.imagNorm(); }

}  // namespace

double coherent_tail(double q_abs, Index dim) {
  const double s = q_abs * q_abs;
  if (s == 0) return 0;
  // terms e^{-s} s^n / n! for n >= dim, summed until they stop mattering
  double log_term = -s + dim * std::log(s) - std::lgamma(dim + 1.0);
  double tail = 0;
  for (Index n = dim; n < dim + 10000; ++n) {
    const double t = std::exp(log_term);
    tail += t;
    if (n > s && t < 1e-30 * (tail > 0 ? tail : 1)) break;
    log_term += std::log(s) - std::log(n + 1.0);
  }
  return tail;
}

FockVectord coherent(const Quaterniond& q, Index dim, double tail_tol) {
  const double tail = coherent_tail(q.norm(), dim);
  if (tail > tail_tol) {
    Index suggested = dim;
    while (coherent_tail(q.norm(), suggested) > tail_tol) suggested *= 2;
    throw TailViolation("coherent state mass beyond truncation", tail, suggested);
  }
  FockVectord v(dim);
  const double scale = std::exp(-q.squaredNorm() / 2);
  Quaterniond qn(1);
  double inv_sqrt_fact = 1;
  for (Index n = 0; n < dim; ++n) {
    if (n > 0) {
      qn = qn * q;
      inv_sqrt_fact /= std::sqrt(static_cast<double>(n));
    }
    v.set(n, qn * (scale * inv_sqrt_fact));
  }
  return v;
}

FockVectord pure_squeezed(const SqueezeParams& sp, const LadderSet& L) {
  return apply(squeeze(sp, L), FockVectord::basis(L.dim, 0));
}

FockVectord pure_squeezed_closed_form(const SqueezeParams& sp, Index dim) {
  FockVectord v(dim);
  const double lead = -0.5 * std::log(std::cosh(sp.r));
  const double t = std::tanh(sp.r);
  Quaterniond un(1);
  for (Index n = 0; 2 * n < dim; ++n) {
    if (n > 0) un = un * sp.u;
    if (n > 0 && t == 0) break;
    const double mag = std::exp(lead + (n > 0 ? n * std::log(t) : 0.0) + log_even_weight(n));
    v.set(2 * n, un * mag);
  }
  return v;
}

FockVectord scs_printed_series(const SqueezeParams& sp, Index dim) {
  FockVectord v(dim);
  const double s = sp.r * sp.r;
  Quaterniond un(1);
  for (Index n = 0; 2 * n < dim; ++n) {
    if (n > 0) un = un * sp.u;
    if (n > 0 && sp.r == 0) break;
    const double log_mag =
        s / 4 + n * s + (n > 0 ? n * std::log(sp.r) : 0.0) + log_even_weight(n);
    v.set(2 * n, un * std::exp(log_mag));
  }
  return v;
}

FockVectord scs_antinormal_series(const SqueezeParams& sp, Index dim, int terms) {
  FockVectord v(dim);
  const double s = sp.r * sp.r;
  for (Index k = 0; 2 * k < dim; ++k) {
    // p^{n+k} conj(p)^n = r^{2n+k} u^k inside one slice
    Quaterniond uk(1);
    for (Index m = 0; m < k; ++m) uk = uk * sp.u;
    double sum = pairwise_sum<double>(terms, [&](std::ptrdiff_t n) {
      if (sp.r == 0 && 2 * n + k > 0) return 0.0;
      const double log_r = (2 * n + k) > 0 ? (2 * n + k) * std::log(sp.r) : 0.0;
      const double lw = log_r + std::lgamma(2.0 * n + 2.0 * k + 1) - n * std::log(4.0) -
                        std::lgamma(n + k + 1.0) - std::lgamma(n + 1.0) -
                        0.5 * std::lgamma(2.0 * k + 1);
      return std::exp(lw);
    });
    v.set(2 * k, uk * (std::exp(s / 4 + k * s) * sum));
  }
  return v;
}

ScsSeriesReport scs_series_check(const SqueezeParams& sp, const LadderSet& L,
                                 int antinormal_terms) {
  ScsSeriesReport out;
  const FockVectord oracle = pure_squeezed(sp, L);
  const FockVectord printed = scs_printed_series(sp, L.dim);
  out.printed_deviation = max_coeff_distance(printed, oracle);
  out.printed_norm = norm(printed);
  out.printed_term_ratio = std::exp(sp.r * sp.r) * sp.r;
  out.printed_diverges = out.printed_term_ratio > 1;
  const FockVectord anti = scs_antinormal_series(sp, L.dim, antinormal_terms);
  out.antinormal_deviation = max_coeff_distance(anti, oracle);
  out.antinormal_norm = norm(anti);
  out.antinormal_terms = antinormal_terms;
  out.closed_form_deviation = max_coeff_distance(pure_squeezed_closed_form(sp, L.dim), oracle);
  return out;
}

FockVectord squeezed_state(const SqueezeParams& sp, const Quaterniond& q, const LadderSet& L,
                           double tail_tol) {
  return apply(squeeze(sp, L), coherent(q, L.dim, tail_tol));
}

ExpectationReport expectations(const FockVectord& state, const LadderSet& L,
                               const ProtectedBlock& block, double tail_tol) {
  const double tail = tail_mass(state, block.size());
  if (tail > tail_tol)
    throw TailViolation("state mass beyond protected block", tail, 2 * L.dim);

  ExpectationReport e;
  const FockVectord av = apply(L.a, state);
  const FockVectord adv = apply(L.a_dag, state);
  const FockVectord xv = apply(L.x_op, state);
  const FockVectord yv = apply(L.y_op, state);
  const FockVectord nv = apply(L.n_op, state);
  e.mean_a = inner(state, av);
  e.mean_adag = inner(state, adv);
  e.mean_x = inner(state, xv);
  e.mean_y = inner(state, yv);
  e.mean_n = inner(state, nv);
  // <f|AB|f> = <A^dagger f|B f>
  e.mean_aadag = inner(adv, adv);
  e.mean_adaga = inner(av, av);
  e.mean_a2 = inner(adv, av);
  e.mean_adag2 = inner(av, adv);
  e.mean_x2 = inner(xv, xv);
  e.mean_y2 = inner(yv, yv);
  e.mean_n2 = inner(nv, nv);
  e.var_x = e.mean_x2.real() - e.mean_x.real() * e.mean_x.real();
  e.var_y = e.mean_y2.real() - e.mean_y.real() * e.mean_y.real();
  e.var_n = e.mean_n2.real() - e.mean_n.real() * e.mean_n.real();
  if (e.mean_n.real() > 1e-12) e.mandel_q = e.var_n / e.mean_n.real() - 1;
  for (const auto* q : {&e.mean_x, &e.mean_y, &e.mean_n, &e.mean_x2, &e.mean_y2, &e.mean_n2,
                        &e.mean_aadag, &e.mean_adaga})
    e.max_self_adjoint_imag = std::max(e.max_self_adjoint_imag, imag_abs(*q));
  return e;
}

Report check_pure_squeezed_moments(const SqueezeParams& sp, const LadderSet& L,
                                   const ProtectedBlock& block, double tol) {
  Report rep("pure squeezed moments");
  const FockVectord st = pure_squeezed(sp, L);
  const ExpectationReport e = expectations(st, L, block);
  const double r = sp.r, c = std::cosh(r), s = std::sinh(r);
  const double cos_t = sp.u.real();
  const double sin2 = 1 - cos_t * cos_t;

  double odd = 0;
  for (Index k = 1; k < st.dim(); k += 2) odd = std::max(odd, st[k].norm());
  rep.add("odd coefficients vanish", odd, 1e-12);
  rep.add("norm = 1", std::abs(norm(st) - 1), tol);
  rep.add("<a> = 0", e.mean_a.norm(), tol);
  rep.add("<a+> = 0", e.mean_adag.norm(), tol);
  rep.add("<X> = 0", e.mean_x.norm(), tol);
  rep.add("<Y> = 0", e.mean_y.norm(), tol);
  rep.add("<a a+> = cosh^2 r", distance(e.mean_aadag, Quaterniond(c * c)), tol);
  rep.add("<a+ a> = sinh^2 r", distance(e.mean_adaga, Quaterniond(s * s)), tol);
  rep.add("<a^2> = cosh r sinh r u", distance(e.mean_a2, sp.u * (c * s)), tol);
  rep.add("<(a+)^2> = cosh r sinh r conj(u)", distance(e.mean_adag2, conj(sp.u) * (c * s)), tol);
  const double vx = 0.25 * (std::cosh(2 * r) + std::sinh(2 * r) * cos_t);
  const double vy = 0.25 * (std::cosh(2 * r) - std::sinh(2 * r) * cos_t);
  rep.add("var X", std::abs(e.var_x - vx), tol);
  rep.add("var Y", std::abs(e.var_y - vy), tol);
  const double sh2 = std::sinh(2 * r);
  rep.add("var X var Y = (1 + sinh^2 2r sin^2 theta)/16",
          std::abs(e.var_x * e.var_y - (1 + sh2 * sh2 * sin2) / 16), tol);
  rep.add("<N> = sinh^2 r", distance(e.mean_n, Quaterniond(s * s)), tol);
  rep.add("<N^2> = 3 sinh^4 r + 2 sinh^2 r",
          distance(e.mean_n2, Quaterniond(3 * s * s * s * s + 2 * s * s)), tol);
  rep.add("var N = 2 sinh^2 r (1 + sinh^2 r)", std::abs(e.var_n - 2 * s * s * (1 + s * s)), tol);
  if (r > 0) rep.add("Q_M = 1 + 2 sinh^2 r", std::abs(e.mandel_q - (1 + 2 * s * s)), tol);
  rep.add("self-adjoint means real", e.max_self_adjoint_imag, 1e-10);
  return rep;
}

UVOperators uv_operators(const SqueezeParams& sp, const LadderSet& L) {
  const auto sd = slice_decompose(sp.u);
  const SliceAxis<double> axis = sd.axis_defined ? sd.axis : L.axis;
  const Quaterniond h = slice_sqrt(sp.u, axis);
  const Quaterniond hb = conj(h);
  UVOperators out;
  out.u_op = (left_mul_op(hb, L.a) + left_mul_op(h, L.a_dag)) * 0.5;
  out.v_op = left_mul_op(axis.unit() * -0.5, left_mul_op(hb, L.a) - left_mul_op(h, L.a_dag));
  return out;
}

Report uv_quadrature_check(const SqueezeParams& sp, const LadderSet& L,
                           const ProtectedBlock& block, double tol) {
  Report rep("U/V quadratures");
  const FockVectord st = pure_squeezed(sp, L);
  if (tail_mass(st, block.size()) > 1e-10)
    throw TailViolation("state mass beyond protected block", tail_mass(st, block.size()),
                        2 * L.dim);
  const UVOperators uv = uv_operators(sp, L);
  const FockVectord uf = apply(uv.u_op, st);
  const FockVectord vf = apply(uv.v_op, st);
  const Quaterniond mu = inner(st, uf), mv = inner(st, vf);
  const double var_u = inner(uf, uf).real() - mu.real() * mu.real();
  const double var_v = inner(vf, vf).real() - mv.real() * mv.real();
  const double c = std::cosh(sp.r), s = std::sinh(sp.r);
  rep.add("U self-adjoint", max_abs(adjoint(uv.u_op) - uv.u_op), 1e-15);
  rep.add("V self-adjoint", max_abs(adjoint(uv.v_op) - uv.v_op), 1e-15);
  rep.add("<U> = 0", mu.norm(), tol);
  rep.add("<V> = 0", mv.norm(), tol);
  rep.add("var U = (cosh r + sinh r)^2/4", std::abs(var_u - 0.25 * (c + s) * (c + s)), tol);
  rep.add("var V = (cosh r - sinh r)^2/4", std::abs(var_v - 0.25 * (c - s) * (c - s)), tol);
  rep.add("var U var V = 1/16", std::abs(var_u * var_v - 1.0 / 16), tol);
  // ideal squeezing: V below the vacuum level; a zero deviation means it holds
  rep.add("var V < 1/4", sp.r > 0 ? std::max(0.0, var_v - 0.25 + 1e-15) : 0.0, 0.0);
  return rep;
}

double mandel_q(const FockVectord& state, const LadderSet& L, const ProtectedBlock& block,
                double min_mean) {
  const ExpectationReport e = expectations(state, L, block);
  if (!(e.mean_n.real() > min_mean)) throw UndefinedQuantity("Mandel Q needs <N> > 0");
  return e.var_n / e.mean_n.real() - 1;
}

}  // namespace qfock
