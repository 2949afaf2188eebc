#include "qfock/slice_lab.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qfock/states.hpp"

namespace qfock {

namespace {

void require_slice(const SliceAxis<double>& axis, const Quaterniond& x, double tol,
                   const char* what) {
  if (axis.off_slice(x) > tol) throw OffSliceError(std::string(what) + " is off the slice");
}

double off_slice_max(const FockVectord& v, const SliceAxis<double>& axis) {
  double m = 0;
  for (Index k = 0; k < v.dim(); ++k) m = std::max(m, axis.off_slice(v[k]));
  return m;
}

Quaterniond id(double x) { return Quaterniond(x); }

}  // namespace

SliceParams SliceParams::from_pair(const Quaterniond& p, const Quaterniond& q,
                                   const SliceAxis<double>& fallback, double tol) {
  SliceParams sl;
  const auto dp = slice_decompose(p);
  const auto dq = slice_decompose(q);
  if (dp.y > tol)
    sl.axis = dp.axis;
  else if (dq.y > tol)
    sl.axis = dq.axis;
  else
    sl.axis = fallback;
  require_slice(sl.axis, p, tol, "p");
  require_slice(sl.axis, q, tol, "q");
  const auto angle = [&](const Quaterniond& x) {
    const double y = sl.axis.direction().dot(x.imag());
    double t = std::atan2(y, x.w());
    return t < 0 ? t + 2 * std::numbers::pi : t;
  };
  sl.r_p = p.norm();
  sl.theta_p = angle(p);
  sl.r_q = q.norm();
  sl.theta_q = angle(q);
  return sl;
}

Quaterniond r_param(const Quaterniond& p) {
  const double n = p.norm();
  if (n == 0) return {};
  return p * (std::tanh(n) / n);
}

Report SliceReport::oracle_report(double tol) const {
  Report r(state);
  for (const auto& o : observables)
    r.add(o.name, std::min(o.printed_deviation(), o.derived_deviation()), tol);
  for (const auto& c : operator_identities) r.add(c.identity, c.deviation, c.tolerance);
  r.add("slice closure", off_slice, 1e-13);
  return r;
}

FockVectord two_photon_state(const SliceParams& sl, const LadderSet& L) {
  return squeezed_state(sl.squeeze(), sl.q(), L);
}

FockVectord squeezed_coherent_state(const SliceParams& sl, const LadderSet& L) {
  return apply(displacement(sl.q(), L), pure_squeezed(sl.squeeze(), L));
}

namespace {

struct Moments {
  Quaterniond a, adag, x, y, aadag, adaga, a2, adag2, x2, y2, n, n2;
};

// moments only need room for two raising steps past the state's support
Moments measure(const FockVectord& st, const LadderSet& L) {
  const ExpectationReport e = expectations(st, L, ProtectedBlock(L.dim, std::min<Index>(16, L.dim / 4)));
  return {e.mean_a,  e.mean_adag,  e.mean_x,  e.mean_y,   e.mean_aadag, e.mean_adaga,
          e.mean_a2, e.mean_adag2, e.mean_x2, e.mean_y2,  e.mean_n,     e.mean_n2};
}

}  // namespace

SliceReport two_photon_expectations(const SliceParams& sl, const LadderSet& L,
                                    const ProtectedBlock& block) {
  SliceReport rep;
  rep.state = "two_photon";
  rep.params = sl;
  rep.dim = L.dim;
  const FockVectord st = two_photon_state(sl, L);
  rep.off_slice = off_slice_max(st, sl.axis);
  const Moments m = measure(st, L);

  const double rp = sl.r_p, c = std::cosh(rp), s = std::sinh(rp);
  const double c2 = std::cosh(2 * rp), s2 = std::sinh(2 * rp);
  const double q2 = sl.r_q * sl.r_q, tp = sl.theta_p, tq = sl.theta_q;
  const Quaterniond q = sl.q(), qb = conj(q), ip = sl.i_p(), ipb = conj(ip);

  const Quaterniond mean_a = q * c + ip * qb * s;
  const Quaterniond mean_adag = qb * c + ipb * q * s;
  const double x = sl.r_q * (c * std::cos(tq) + s * std::cos(tp - tq));
  const double y = sl.r_q * (c * std::sin(tq) + s * std::sin(tp - tq));
  const double cross = q2 * s2 * std::cos(2 * tq - tp);
  const double aadag = c * c + c2 * q2 + cross;
  const double adaga = s * s + c2 * q2 + cross;
  const Quaterniond a2 = ip * (0.5 * s2 * (1 + 2 * q2)) + q * q * (c * c) + ip * ip * qb * qb * (s * s);
  const Quaterniond adag2 =
      ipb * (0.5 * s2 * (1 + 2 * q2)) + qb * qb * (c * c) + ipb * ipb * q * q * (s * s);
  const double sym = c2 + 2 * q2 * c2 + 2 * q2 * s2 * std::cos(2 * tq - tp);
  const double anti = std::cos(tp) * s2 * (1 + 2 * q2) + 2 * q2 * c * c * std::cos(2 * tq) +
                      2 * q2 * s * s * std::cos(2 * tp - 2 * tq);

  auto& o = rep.observables;
  o.push_back({"<a>", "cosh|p| q + I_p sinh|p| conj(q)", mean_a, mean_a, m.a});
  o.push_back({"<a+>", "cosh|p| conj(q) + conj(I_p) sinh|p| q", mean_adag, mean_adag, m.adag});
  o.push_back({"<X>", "|q|[cosh|p| cos(th_q) + sinh|p| cos(th_p - th_q)]", id(x), id(x), m.x});
  o.push_back({"<Y>", "|q|[cosh|p| sin(th_q) + sinh|p| sin(th_p - th_q)]", id(y), id(y), m.y});
  o.push_back({"<a a+>", "cosh^2|p| + cosh(2|p|)|q|^2 + |q|^2 sinh(2|p|) cos(2th_q - th_p)",
               id(aadag), id(aadag), m.aadag});
  o.push_back({"<a+ a>", "sinh^2|p| + cosh(2|p|)|q|^2 + |q|^2 sinh(2|p|) cos(2th_q - th_p)",
               id(adaga), id(adaga), m.adaga});
  o.push_back({"<a^2>", "I_p sinh(2|p|)(1+2|q|^2)/2 + cosh^2|p| q^2 + I_p^2 sinh^2|p| conj(q)^2",
               a2, a2, m.a2});
  o.push_back({"<(a+)^2>",
               "conj(I_p) sinh(2|p|)(1+2|q|^2)/2 + cosh^2|p| conj(q)^2 + conj(I_p)^2 sinh^2|p| q^2",
               adag2, adag2, m.adag2});
  o.push_back({"<X^2>", "(1/2)[sym] + (1/2)[anti]", id(0.5 * (sym + anti)),
               id(0.25 * (sym + anti)), m.x2});
  o.push_back({"<Y^2>", "(1/2)[sym] - (1/2)[anti]", id(0.5 * (sym - anti)),
               id(0.25 * (sym - anti)), m.y2});

  // conjugation formulas on the block
  const QOperatord s_op = squeeze(sl.squeeze(), L);
  const QOperatord d_op = displacement(q, L);
  const QOperatord sd = s_op * d_op;
  const QOperatord sdd = adjoint(sd);
  const QOperatord& I = L.identity;
  const Index n = block.size();
  const QOperatord ta = L.a * c + left_mul_op(ip * s, L.a_dag) + left_mul_op(q * c + ip * qb * s, I);
  const QOperatord tad =
      L.a_dag * c + left_mul_op(ipb * s, L.a) + left_mul_op(qb * c + ipb * q * s, I);
  const QOperatord tn =
      (L.n_op + left_mul_op(q, L.a_dag) + left_mul_op(qb, L.a) + I * q2) * (c * c) +
      left_mul_op(ipb * (0.5 * s2), L.a2 + left_mul_op(q * 2.0, L.a) + left_mul_op(q * q, I)) +
      left_mul_op(ip * (0.5 * s2),
                  L.a_dag2 + left_mul_op(qb * 2.0, L.a_dag) + left_mul_op(qb * qb, I)) +
      (L.a * L.a_dag + left_mul_op(qb, L.a) + left_mul_op(q, L.a_dag) + I * q2) * (s * s);
  rep.operator_identities.push_back(
      {"D+S+ a SD", block_distance(sdd * L.a * sd, ta, n), 1e-8});
  rep.operator_identities.push_back(
      {"D+S+ a+ SD", block_distance(sdd * L.a_dag * sd, tad, n), 1e-8});
  rep.operator_identities.push_back(
      {"D+S+ N SD", block_distance(sdd * L.n_op * sd, tn, n), 1e-8});

  const double var_x = m.x2.real() - m.x.real() * m.x.real();
  const double var_n = m.n2.real() - m.n.real() * m.n.real();
  rep.snr = m.x.real() * m.x.real() / var_x;
  rep.mandel_q = var_n / m.n.real() - 1;
  rep.mandel_q_printed = std::sqrt(var_n) / m.n.real() - 1;
  return rep;
}

SliceReport squeezed_coherent_expectations(const SliceParams& sl, const LadderSet& L,
                                           const ProtectedBlock& block) {
  SliceReport rep;
  rep.state = "squeezed_coherent";
  rep.params = sl;
  rep.dim = L.dim;
  const FockVectord st = squeezed_coherent_state(sl, L);
  rep.off_slice = off_slice_max(st, sl.axis);
  const Moments m = measure(st, L);

  const double rp = sl.r_p, c = std::cosh(rp), s = std::sinh(rp);
  const double c2 = std::cosh(2 * rp), s2 = std::sinh(2 * rp);
  const double q2 = sl.r_q * sl.r_q, tp = sl.theta_p, tq = sl.theta_q;
  const Quaterniond q = sl.q(), qb = conj(q), ip = sl.i_p(), ipb = conj(ip);
  const double phase = std::cos(2 * tq - tp);

  const double n_mean = s * s + q2;
  const double x2_printed = 0.25 * (c2 * c2 + 2 * q2 + s2 * std::cos(tp) + 2 * q2 * std::cos(2 * tq));
  const double x2 = 0.25 * (c2 + 2 * q2 + s2 * std::cos(tp) + 2 * q2 * std::cos(2 * tq));
  const double y2_printed = 0.25 * (c2 * c2 + 2 * q2 - s2 * std::cos(tp) - 2 * q2 * std::cos(2 * tq));
  const double y2 = 0.25 * (c2 + 2 * q2 - s2 * std::cos(tp) - 2 * q2 * std::cos(2 * tq));
  const double var_n_printed = 0.5 * s2 * s2 + q2 * std::exp(2 * rp);
  const double var_n = 0.5 * s2 * s2 + q2 * (c2 + s2 * phase);
  const double n2_printed = 0.5 * s2 * s2 + s * s * s * s + 2 * q2 * s * s + q2 * c2 + q2 * s2 + q2 * q2;
  const double n2 = var_n + n_mean * n_mean;

  auto& o = rep.observables;
  o.push_back({"<a>", "q", q, q, m.a});
  o.push_back({"<a+>", "conj(q)", qb, qb, m.adag});
  o.push_back({"<N>", "sinh^2|p| + |q|^2", id(n_mean), id(n_mean), m.n});
  o.push_back({"<X>", "|q| cos(th_q)", id(sl.r_q * std::cos(tq)), id(sl.r_q * std::cos(tq)), m.x});
  o.push_back({"<Y>", "|q| sin(th_q)", id(sl.r_q * std::sin(tq)), id(sl.r_q * std::sin(tq)), m.y});
  o.push_back({"<a^2>", "I_p sinh(2|p|)/2 + q^2", ip * (0.5 * s2) + q * q, ip * (0.5 * s2) + q * q,
               m.a2});
  o.push_back({"<(a+)^2>", "conj(I_p) sinh(2|p|)/2 + conj(q)^2", ipb * (0.5 * s2) + qb * qb,
               ipb * (0.5 * s2) + qb * qb, m.adag2});
  o.push_back({"<a a+>", "cosh^2|p| + |q|^2", id(c * c + q2), id(c * c + q2), m.aadag});
  o.push_back({"<X^2>",
               "(1/4){cosh^2(2|p|) + 2|q|^2 + sinh(2|p|) cos(th_p) + 2|q|^2 cos(2th_q)}",
               id(x2_printed), id(x2), m.x2});
  o.push_back({"<Y^2>",
               "(1/4){cosh^2(2|p|) + 2|q|^2 - sinh(2|p|) cos(th_p) - 2|q|^2 cos(2th_q)}",
               id(y2_printed), id(y2), m.y2});
  o.push_back({"<N^2>",
               "sinh^2(2|p|)/2 + sinh^4|p| + 2|q|^2 sinh^2|p| + |q|^2 cosh(2|p|) + |q|^2 sinh(2|p|) + |q|^4",
               id(n2_printed), id(n2), m.n2});
  o.push_back({"var N", "sinh^2(2|p|)/2 + |q|^2 e^{2|p|}", id(var_n_printed), id(var_n),
               id(m.n2.real() - m.n.real() * m.n.real())});

  const QOperatord s_op = squeeze(sl.squeeze(), L);
  const QOperatord d_op = displacement(q, L);
  const QOperatord ds = d_op * s_op;
  const QOperatord dsd = adjoint(ds);
  const QOperatord& I = L.identity;
  const Index n = block.size();
  const QOperatord ta = L.a * c + left_mul_op(ip * s, L.a_dag) + left_mul_op(q, I);
  const QOperatord tad = L.a_dag * c + left_mul_op(ipb * s, L.a) + left_mul_op(qb, I);
  const QOperatord tn = L.n_op * (c * c) + left_mul_op(ip * (0.5 * s2), L.a_dag2) +
                        left_mul_op(q * c, L.a_dag) + left_mul_op(ipb * (0.5 * s2), L.a2) +
                        (L.a * L.a_dag) * (s * s) + left_mul_op(ipb * q * s, L.a) +
                        left_mul_op(qb * c, L.a) + left_mul_op(ip * qb * s, L.a_dag) + I * q2;
  rep.operator_identities.push_back(
      {"S+D+ a DS", block_distance(dsd * L.a * ds, ta, n), 1e-8});
  rep.operator_identities.push_back(
      {"S+D+ a+ DS", block_distance(dsd * L.a_dag * ds, tad, n), 1e-8});
  rep.operator_identities.push_back(
      {"S+D+ N DS", block_distance(dsd * L.n_op * ds, tn, n), 1e-8});

  const double var_x = m.x2.real() - m.x.real() * m.x.real();
  const double var_n_num = m.n2.real() - m.n.real() * m.n.real();
  rep.snr = m.x.real() * m.x.real() / var_x;
  rep.mandel_q = var_n_num / m.n.real() - 1;
  rep.mandel_q_printed = std::sqrt(var_n_num) / m.n.real() - 1;
  return rep;
}

Quaterniond hermite(int n, const Quaterniond& q) {
  if (n < 0) throw ConfigError("hermite degree must be nonnegative");
  const Quaterniond two_q = q * 2.0;
  Quaterniond sum;
  for (int m = 0; 2 * m <= n; ++m) {
    const double coeff = std::exp(std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                                  std::lgamma(n - 2.0 * m + 1));
    sum += pow(two_q, n - 2 * m) * ((m % 2 ? -1.0 : 1.0) * coeff);
  }
  return sum;
}

Quaterniond bargmann_eval(const FockVectord& v, const Quaterniond& q, double tail_tol) {
  const double qa = q.norm();
  Quaterniond qn(1), sum;
  double inv_sqrt_fact = 1, last = 0;
  const Index d = v.dim();
  for (Index n = 0; n < d; ++n) {
    if (n > 0) {
      qn = qn * q;
      inv_sqrt_fact /= std::sqrt(static_cast<double>(n));
    }
    const Quaterniond term = (qn * inv_sqrt_fact) * v[n];
    sum += term;
    if (n >= d - 4) last = std::max(last, term.norm());
  }
  // unseen terms bounded geometrically from the last ones
  const double ratio = qa / std::sqrt(static_cast<double>(d));
  const double bound = ratio < 1 ? last / (1 - ratio) : std::numeric_limits<double>::infinity();
  if (last > 0 && bound > tail_tol)
    throw TailViolation("Bargmann series not converged at this |q|", bound, 2 * d);
  return sum;
}

Quaterniond squeezed_basis_closed_form(int n, const SliceParams& sl, const Quaterniond& point) {
  require_slice(sl.axis, point, 1e-12, "evaluation point");
  if (sl.r_p == 0) return pow(point, n) / std::sqrt(std::tgamma(n + 1.0));
  const Quaterniond r = r_param(sl.p());
  const Quaterniond rb = conj(r);
  const double one_minus = 1 - r.squaredNorm();
  const Quaterniond half_rb = slice_sqrt(rb * 0.5, sl.axis);
  const Quaterniond arg = slice_sqrt(rb.inverse() * (0.5 * one_minus), sl.axis) * point;
  const Quaterniond ex = exp_q(r * point * point * 0.5);
  return ex * pow(half_rb, n) * hermite(n, arg) *
         (std::pow(one_minus, 0.25) / std::sqrt(std::tgamma(n + 1.0)));
}

Quaterniond squeezed_basis_factorized(int n, const SliceParams& sl, const Quaterniond& point) {
  require_slice(sl.axis, point, 1e-12, "evaluation point");
  const Quaterniond r = r_param(sl.p());
  const Quaterniond rb = conj(r);
  const double scale = std::sqrt(1 - r.squaredNorm());
  // monomial coefficients of q^n / sqrt(n!) after exp(-conj(r)/2 d^2)
  std::vector<Quaterniond> coef(n + 1);
  const double inv_sqrt = 1 / std::sqrt(std::tgamma(n + 1.0));
  Quaterniond step(inv_sqrt);  // (-conj(r)/2)^m / m! times the falling factorial n!/(n-2m)!
  for (int m = 0; 2 * m <= n; ++m) {
    if (m > 0) step = step * (rb * (-0.5)) * ((n - 2.0 * m + 2) * (n - 2.0 * m + 1) / m);
    coef[n - 2 * m] = step;
  }
  Quaterniond sum;
  for (int k = 0; k <= n; ++k)
    sum += coef[k] * std::pow(scale, k + 0.5) * pow(point, k);
  return exp_q(r * point * point * 0.5) * sum;
}

}  // namespace qfock
