#include "qfock/verify.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "qfock/algebra.hpp"
#include "qfock/errors.hpp"
#include "qfock/gates.hpp"
#include "qfock/io.hpp"
#include "qfock/ladder.hpp"
#include "qfock/slice_lab.hpp"
#include "qfock/states.hpp"

namespace qfock {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeed = 0x5eed'2024'0b5cULL;

// Worst case over repeated measurements of the same printed formula.
class LedgerAcc {
 public:
  void add(LedgerEntry e) {
    for (auto& x : entries_) {
      if (x.identity != e.identity) continue;
      if (!(x.measured_deviation >= e.measured_deviation)) x = std::move(e);
      return;
    }
    entries_.push_back(std::move(e));
  }
  void merge(const LedgerAcc& o) {
    for (const auto& e : o.entries_) add(e);
  }
  Ledger ledger() const {
    Ledger l;
    for (const auto& e : entries_) l.add(e);
    return l;
  }

 private:
  std::vector<LedgerEntry> entries_;
};

struct Part {
  Report report;
  LedgerAcc ledger;
  std::vector<SliceRow> rows;

  void merge(const Part& o) {
    report.merge(o.report);
    ledger.merge(o.ledger);
    rows.insert(rows.end(), o.rows.begin(), o.rows.end());
  }
};

// A library error inside a measurement is a failed identity, not a crash.
template <typename F>
void guarded(Report& r, const std::string& label, F f) {
  try {
    f();
  } catch (const Error& e) {
    r.add(label + ": " + e.what(), kInf, 0);
  }
}

ProtectedBlock block_of_size(Index dim, Index size) {
  size = std::clamp<Index>(size, 1, dim - 1);
  return ProtectedBlock(dim, dim - size);
}

ProtectedBlock state_block(Index dim) {
  return ProtectedBlock(dim, std::clamp<Index>(dim / 4, 1, 16));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

double vdist(const FockVectord& a, const FockVectord& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

std::string axis_label(const SliceAxis<double>& ax) {
  const auto& d = ax.direction();
  if (d == SliceAxis<double>::i().direction()) return "i";
  if (d == SliceAxis<double>::j().direction()) return "j";
  if (d == SliceAxis<double>::k().direction()) return "k";
  return format_double(d(0)) + " " + format_double(d(1)) + " " + format_double(d(2));
}

struct Rng {
  std::mt19937_64 gen{kSeed};
  double uniform(double lo = -1, double hi = 1) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  Quaterniond quat(double scale = 1) {
    return Quaterniond(uniform(), uniform(), uniform(), uniform()) * scale;
  }
  // uniform in the ball of radius rmax
  Quaterniond ball(double rmax) {
    for (;;) {
      const Quaterniond q = quat();
      if (q.norm() <= 1) return q * rmax;
    }
  }
  FockVectord vec(Index dim) {
    FockVectord f(dim);
    for (Index k = 0; k < dim; ++k) f.set(k, quat());
    return f;
  }
  QOperatord op(Index dim) {
    QOperatord::Matrix p[4];
    for (auto& m : p) {
      m.resize(dim, dim);
      for (Index c = 0; c < dim; ++c)
        for (Index r = 0; r < dim; ++r) m(r, c) = uniform();
    }
    return QOperatord(p[0], p[1], p[2], p[3]);
  }
};

// ------------------------------------------------------------- 1 quaternion

Part quaternion_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  Rng rng;
  double mult = 0, hom = 0, add = 0, polar_rt = 0;
  for (int s = 0; s < 10000; ++s) {
    const Quaterniond p = rng.quat(), q = rng.quat();
    const double pq = p.norm() * q.norm();
    mult = std::max(mult, std::abs((p * q).norm() - pq) / pq);
    hom = std::max(hom, (to_matrix(p * q) - to_matrix(p) * to_matrix(q)).cwiseAbs().maxCoeff() / pq);
    add = std::max(add, (to_matrix(p + q) - to_matrix(p) - to_matrix(q)).cwiseAbs().maxCoeff() /
                            std::max(p.norm(), q.norm()));
    polar_rt = std::max(polar_rt, distance(unpolar(polar(q)), q) / q.norm());
  }
  const double tol = cfg.bound(1e-12);
  r.add("|pq| = |p||q|", mult, tol);
  r.add("M(pq) = M(p)M(q)", hom, tol);
  r.add("M(p+q) = M(p)+M(q)", add, tol);
  r.add("polar round trip", polar_rt, tol);
  return out;
}

// -------------------------------------------------------- 2 left products

Part left_product_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  Rng rng;
  const Index d = cfg.dim;
  double a1 = 0, a2 = 0, b = 0, c = 0, dd = 0, e = 0, f = 0, dist = 0, opl = 0, opr = 0, adj = 0,
         comp = 0;
  for (int s = 0; s < 20; ++s) {
    const Quaterniond p = rng.quat(), q = rng.quat();
    const FockVectord u = rng.vec(d), v = rng.vec(d);
    const QOperatord A = rng.op(d);
    FockVectord uv = u;
    uv += v;
    FockVectord lu = left_mul(q, u);
    lu += left_mul(q, v);
    a1 = std::max(a1, vdist(left_mul(q, uv), lu));
    a2 = std::max(a2, vdist(left_mul(q, right_scale(u, p)), right_scale(left_mul(q, u), p)));
    b = std::max(b, rel(norm(left_mul(q, u)), q.norm() * norm(u)));
    c = std::max(c, vdist(left_mul(q, left_mul(p, u)), left_mul(q * p, u)));
    dd = std::max(dd, distance(inner(left_mul(conj(q), u), v), inner(u, left_mul(q, v))) /
                          (norm(u) * norm(v) * q.norm()));
    const double x = rng.uniform();
    e = std::max(e, vdist(left_mul(Quaterniond(x), u), right_scale(u, Quaterniond(x))));
    for (Index k = 0; k < d; ++k) {
      const FockVectord phi = FockVectord::basis(d, k);
      f = std::max(f, vdist(left_mul(q, phi), right_scale(phi, q)));
    }
    FockVectord pu = left_mul(p, u);
    pu += left_mul(q, u);
    dist = std::max(dist, vdist(left_mul(p + q, u), pu));
    const double scale = 1.0 + static_cast<double>(d);
    opl = std::max(opl, vdist(apply(left_mul_op(q, A), u), left_mul(q, apply(A, u))) / scale);
    opr = std::max(opr, vdist(apply(right_mul_op(A, q), u), apply(A, left_mul(q, u))) / scale);
    adj = std::max(adj, max_abs(adjoint(left_mul_op(q, A)) - right_mul_op(adjoint(A), conj(q))));
    comp = std::max(comp, max_abs(left_mul_op(q, left_mul_op(p, A)) - left_mul_op(q * p, A)));
  }
  const double tol = cfg.bound(1e-13);
  r.add("(a) q.(f+g) = q.f + q.g", a1, tol);
  r.add("(a) q.(f p) = (q.f) p", a2, tol);
  r.add("(b) |q.f| = |q||f|", b, tol);
  r.add("(c) q.(p.f) = (qp).f", c, tol);
  r.add("(d) <conj(q).f|g> = <f|q.g>", dd, tol);
  r.add("(e) x.f = f x", e, tol);
  r.add("(f) q.phi_k = phi_k q", f, tol);
  r.add("(p+q).f = p.f + q.f", dist, tol);
  r.add("(q.A)f = q.(Af)", opl, tol);
  r.add("(A.q)f = A(q.f)", opr, tol);
  r.add("(q.A)+ = A+.conj(q)", adj, tol);
  r.add("q.(p.A) = (qp).A", comp, tol);
  return out;
}

// ------------------------------------------------------- 3 ladder, algebra

AlgebraElement random_h12(Rng& rng, int tau) {
  AlgebraElement e;
  for (int g = 0; g < kGenerators; ++g) {
    e(0, Generator(g)) = rng.uniform();
    e(tau, Generator(g)) = rng.uniform();
  }
  return e;
}

Part ladder_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  const LadderSet L = build_ladder(cfg.dim, cfg.axis);
  const ProtectedBlock blk(cfg.dim, cfg.margin);
  const double tol = cfg.bound(1e-12);
  guarded(r, "ladder", [&] {
    r.merge(check_scalar_commute(Quaterniond(0.3, -0.5, 0.7, 0.2), L));
    r.merge(check_canonical(L, blk, tol));
    r.merge(check_su11(L, blk, tol));
    r.merge(check_xy(L, blk, tol));
    const BracketTableResult bt = check_bracket_table(L, blk, tol);
    r.merge(bt.derived);
    for (const auto& c : bt.printed.checks()) {
      if (c.deviation <= tol) continue;
      const bool sq = c.identity == "[a^2,(a+)^2]";
      out.ledger.add({"commutator table " + c.identity,
                      sq ? "[a^2,(a+)^2] = -2(2N+I)" : "tabulated right-hand side",
                      sq ? "[a^2,(a+)^2] = 2(2N+I)" : "value from [a,a+] = I", c.deviation,
                      static_cast<long>(cfg.dim), static_cast<long>(cfg.margin)});
    }
  });

  guarded(r, "algebra", [&] {
    Rng rng;
    const double atol = cfg.bound(1e-9);
    double jac = 0, bil = 0, anti = 0, res = 0;
    for (int tau = 1; tau < 4; ++tau) {
      for (int s = 0; s < 3; ++s) {
        const AlgebraElement x = random_h12(rng, tau), y = random_h12(rng, tau),
                             z = random_h12(rng, tau);
        jac = std::max(jac, jacobi_residual_tau(x, y, z, tau, L, blk));
        const double sx = rng.uniform(), sy = rng.uniform();
        const BracketResult lhs = bracket_tau(x.scale(sx, sy, tau), y, tau, L, blk);
        const BracketResult xy = bracket_tau(x, y, tau, L, blk);
        const BracketResult yx = bracket_tau(y, x, tau, L, blk);
        bil = std::max(bil, (lhs.element - xy.element.scale(sx, sy, tau)).coeffs().cwiseAbs().maxCoeff());
        anti = std::max(anti, (xy.element + yx.element).coeffs().cwiseAbs().maxCoeff());
        res = std::max(res, xy.residual);
      }
    }
    r.add("h12 Jacobi identity", jac, atol);
    r.add("h12 bilinearity over C_tau", bil, atol);
    r.add("h12 anticommutativity", anti, atol);
    r.add("h12 closure residual", res, atol);

    AlgebraElement u, v;
    for (int tau = 0; tau < 4; ++tau)
      for (int g = 0; g < kGenerators; ++g) {
        u(tau, Generator(g)) = rng.uniform();
        v(tau, Generator(g)) = rng.uniform();
      }
    const H24Bracket uv = bracket_h24(u, v, L, blk);
    r.add("h24 closure residual", uv.first.residual, atol);
    r.add("h24 bracket forms agree", uv.disagreement, atol);

    const auto A = AlgebraElement::basis(1, Generator::A);
    const auto B = AlgebraElement::basis(1, Generator::N);
    const auto C = AlgebraElement::basis(2, Generator::ADag);
    const double j24 = jacobi_residual_h24(A, B, C, L, blk);
    if (j24 > atol)
      out.ledger.add({"h24 bracket Jacobi identity",
                      "[A,B] = [A1,B1] + sum_tau [A1,B_tau] + sum_tau [A_tau, B1 + B_tau] is a Lie bracket",
                      "Jacobi sum nonzero for A = i.a, B = i.N, C = j.a+", j24,
                      static_cast<long>(cfg.dim), static_cast<long>(cfg.margin)});
  });
  return out;
}

// ------------------------------------------------------------ 4 displacement

Part displacement_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  const LadderSet L = build_ladder(cfg.dim, cfg.axis);
  // conjugation spreads a level over about 2|q|sqrt(n) neighbours
  const Index n = std::min(cfg.dim - cfg.margin, cfg.dim / 2);
  const ProtectedBlock shift_blk = block_of_size(cfg.dim, n);
  const std::vector<Quaterniond> qs{Quaterniond(0.5, 0.3, -0.4, 0.2), cfg.axis.point(0.6, -0.7),
                                    Quaterniond(0, 0, 0, 1)};
  for (std::size_t s = 0; s < qs.size(); ++s) {
    const Quaterniond q = qs[s];
    const std::string tag = " [q" + std::to_string(s) + "]";
    guarded(r, "displacement" + tag, [&] {
      const QOperatord D = displacement(q, L);
      r.add("D unitary on block" + tag, unitarity_defect(D, cfg.dim - cfg.margin), cfg.bound(1e-9));
      for (const Report part = check_displacement_shift(q, L, shift_blk, cfg.bound(1e-8)); const auto& c : part.checks())
        r.add(c.identity + tag, c.deviation, c.tolerance);
      const QOperatord dn = ordered_displacement(q, L, Ordering::normal);
      const QOperatord da = ordered_displacement(q, L, Ordering::antinormal);
      r.add("normal ordering = exp" + tag, block_distance(dn, D, shift_blk.size()), cfg.bound(1e-9));
      r.add("antinormal ordering = exp" + tag, block_distance(da, D, shift_blk.size()),
            cfg.bound(1e-9));
    });
  }
  guarded(r, "displacement defect", [&] {
    // the normal-ordered product has exact entries, so its defect is the
    // truncation error alone
    const Quaterniond q = qs.front();
    const Index b = cfg.dim - cfg.margin;
    const double d1 = unitarity_defect(ordered_displacement(q, L, Ordering::normal), b);
    const LadderSet L2 = build_ladder(2 * cfg.dim, cfg.axis);
    const double d2 = unitarity_defect(ordered_displacement(q, L2, Ordering::normal), b);
    r.add("defect ratio dim " + std::to_string(2 * cfg.dim) + " / dim " + std::to_string(cfg.dim),
          d1 > 0 ? d2 / d1 : 0.0, 0.1);
  });
  return out;
}

// ----------------------------------------------------------------- 5 squeeze

std::vector<SliceAxis<double>> grid_axes(const VerifyConfig& cfg) {
  return {cfg.axis, SliceAxis<double>(1, 2, 2), SliceAxis<double>::k()};
}

Part squeeze_point(const VerifyConfig& cfg, const SliceAxis<double>& axis, double theta, double rr,
                   const std::string& tag) {
  Part out;
  Report& r = out.report;
  guarded(r, "squeeze" + tag, [&] {
    const Index d = cfg.scaled(recommended_dim(8, rr));
    const LadderSet L = build_ladder(d, axis);
    const ProtectedBlock blk = block_of_size(d, 8);
    const SqueezeParams sp = SqueezeParams::polar(rr, axis.phase(theta));
    const QOperatord A = squeeze_generator(sp, L);
    r.add("A+ = -A" + tag, max_abs(adjoint(A) + A), cfg.bound(0));
    const QOperatord S = op_exp(A);
    const QOperatord Sm = squeeze(SqueezeParams(-sp.p), L);
    r.add("S(p)+ = S(-p)" + tag, max_abs(adjoint(S) - Sm), cfg.bound(1e-9));
    r.add("S unitary" + tag, unitarity_defect(S, d), cfg.bound(1e-9));
    for (const Report part = check_squeeze_conjugation(sp, L, blk, cfg.bound(1e-8)); const auto& c : part.checks())
      r.add(c.identity + tag, c.deviation, c.tolerance);
    for (const Report part = check_squeeze_bch(sp, L, blk, cfg.bound(1e-12)); const auto& c : part.checks())
      r.add(c.identity + tag, c.deviation, c.tolerance);
  });
  return out;
}

Part squeeze_section(const VerifyConfig& cfg) {
  const auto axes = grid_axes(cfg);
  const std::vector<double> thetas{0.0, 0.9, 2.2, kPi};
  const std::vector<double> radii{0.3, 0.7, 1.0};
  const int n = static_cast<int>(axes.size() * thetas.size() * radii.size());
  const auto parts = parallel_map<Part>(n, cfg.threads, [&](int i) {
    const std::size_t a = i / (thetas.size() * radii.size());
    const std::size_t t = (i / radii.size()) % thetas.size();
    const std::size_t k = i % radii.size();
    const std::string tag = " [axis " + axis_label(axes[a]) + ", theta " + format_double(thetas[t]) +
                            ", r " + format_double(radii[k]) + "]";
    return squeeze_point(cfg, axes[a], thetas[t], radii[k], tag);
  });
  Part out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

// ------------------------------------------------------------ 6 pure states

Part pure_state_point(const VerifyConfig& cfg, double rr, double theta) {
  Part out;
  Report& r = out.report;
  const std::string tag = " [r " + format_double(rr) + ", theta " + format_double(theta) + "]";
  guarded(r, "pure squeezed" + tag, [&] {
    const Index d = cfg.scaled(recommended_dim(8, rr));
    const LadderSet L = build_ladder(d, cfg.axis);
    const SqueezeParams sp = SqueezeParams::polar(rr, cfg.axis.phase(theta));
    const ProtectedBlock sb = state_block(d);
    for (const Report part = check_pure_squeezed_moments(sp, L, sb, cfg.bound(1e-8)); const auto& c : part.checks())
      r.add(c.identity + tag, c.deviation, cfg.bound(c.tolerance));
    for (const Report part = uv_quadrature_check(sp, L, sb, cfg.bound(1e-8)); const auto& c : part.checks())
      r.add(c.identity + tag, c.deviation, cfg.bound(c.tolerance));

    const ScsSeriesReport scs = scs_series_check(sp, L);
    r.add("tanh-form series = S(p)Phi_0" + tag, scs.closed_form_deviation, cfg.bound(1e-9));
    const long dl = static_cast<long>(d), ml = static_cast<long>(sb.margin);
    if (!(scs.printed_deviation <= cfg.bound(1e-8)))
      out.ledger.add({"pure squeezed state normal-ordered series",
                      "e^{|p|^2/4} sum_n e^{n|p|^2} p^n sqrt((2n)!)/(2^n n!) Phi_2n",
                      "(cosh r)^{-1/2} sum_n (u tanh r)^n sqrt((2n)!)/(2^n n!) Phi_2n",
                      scs.printed_deviation, dl, ml});
    if (!(scs.antinormal_deviation <= cfg.bound(1e-8)))
      out.ledger.add({"pure squeezed state antinormal double sum",
                      "e^{|p|^2/4} sum_{n,s} p^{n+s} conj(p)^n (2n+2s)! e^{s|p|^2} / "
                      "(4^n (n+s)! n! sqrt((2s)!)) Phi_2s",
                      "(cosh r)^{-1/2} sum_n (u tanh r)^n sqrt((2n)!)/(2^n n!) Phi_2n",
                      scs.antinormal_deviation, dl, ml});
  });
  return out;
}

Part coherent_checks(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  guarded(r, "coherent", [&] {
    const Index d = cfg.dim;
    const Quaterniond q = cfg.axis.point(0.8, 0.5) + Quaterniond(0, 0, 0.3, -0.2);
    const FockVectord eta = coherent(q, d, 1.0);
    const Index b = d - cfg.margin;
    const LadderSet L = build_ladder(d, cfg.axis);
    r.add("|eta_q| = 1", std::abs(norm(eta) - 1), cfg.bound(1e-12));
    const FockVectord lhs = apply(L.a, eta), rhs = left_mul(q, eta);
    r.add("a eta_q = q.eta_q",
          (lhs.coeffs().topRows(b) - rhs.coeffs().topRows(b)).cwiseAbs().maxCoeff(),
          cfg.bound(1e-12));
    // the same coefficients with n! in place of sqrt(n!)
    FockVectord printed(d);
    Quaterniond qn(1);
    double inv = 1;
    for (Index n = 0; n < d; ++n) {
      if (n > 0) {
        qn = qn * q;
        inv /= static_cast<double>(n);
      }
      printed.set(n, qn * (inv * std::exp(-q.squaredNorm() / 2)));
    }
    out.ledger.add({"coherent state normalization",
                    "eta_q = e^{-|q|^2/2} sum_n Phi_n q^n / n!",
                    "eta_q = e^{-|q|^2/2} sum_n Phi_n q^n / sqrt(n!) (unit norm)",
                    vdist(printed, eta), static_cast<long>(d), static_cast<long>(cfg.margin)});
  });
  return out;
}

Part pure_state_section(const VerifyConfig& cfg) {
  const std::vector<double> radii{0.3, 0.7, 1.0};
  const std::vector<double> thetas{0.7, kPi / 2};
  const int n = static_cast<int>(radii.size() * thetas.size());
  const auto parts = parallel_map<Part>(n, cfg.threads, [&](int i) {
    return pure_state_point(cfg, radii[i / thetas.size()], thetas[i % thetas.size()]);
  });
  Part out = coherent_checks(cfg);
  for (const auto& p : parts) out.merge(p);
  return out;
}

// -------------------------------------------------- 7 disentangling, ledger

Part disentangle_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  for (const double rr : {0.3, 0.7, 1.0}) {
    const std::string tag = " [r " + format_double(rr) + "]";
    guarded(r, "disentangle" + tag, [&] {
      const Index d = cfg.scaled(recommended_dim(8, rr));
      const LadderSet L = build_ladder(d, cfg.axis);
      const Index b = std::min<Index>(8, d - 1);
      const SqueezeParams sp = SqueezeParams::polar(rr, cfg.axis.phase(0.7));
      const QOperatord S = squeeze(sp, L);
      const double proof = block_distance(disentangled_squeeze(sp, L, BetaVariant::proof), S, b);
      const double stmt = block_distance(disentangled_squeeze(sp, L, BetaVariant::statement), S, b);
      r.add("disentangled S, beta = -2 log cosh r" + tag, proof, cfg.bound(1e-8));
      const long dl = static_cast<long>(d), ml = static_cast<long>(d - b);
      if (!(stmt <= cfg.bound(1e-8)))
        out.ledger.add({"disentangled squeeze K0 exponent",
                        "S(p) = e^{z.K+} e^{-2 log(cosh 2r) K0} e^{-conj(z).K-}",
                        "S(p) = e^{z.K+} e^{-2 log(cosh r) K0} e^{-conj(z).K-}", stmt, dl, ml});
      const SqueezeAdjointResult adj = squeeze_adjoint_action(sp, L, b);
      r.add("S K0 S+ (sinh 2r / 2)" + tag, adj.k0_derived, cfg.bound(1e-8));
      r.add("S K- S+" + tag, adj.k_minus, cfg.bound(1e-8));
      if (!(adj.k0_printed <= cfg.bound(1e-8)))
        out.ledger.add({"squeeze adjoint action on K0",
                        "S K0 S+ = cosh(2r) K0 - sinh(2r) (u K+ + conj(u) K-)",
                        "S K0 S+ = cosh(2r) K0 - (sinh(2r)/2) (u K+ + conj(u) K-)",
                        adj.k0_printed, dl, ml});
    });
  }
  return out;
}

void ledger_requirements(Report& r, const Ledger& l) {
  r.add("ledger not empty", l.empty() ? 1.0 : 0.0, 0);
  for (const char* id : {"pure squeezed state normal-ordered series", "coherent state normalization",
                         "disentangled squeeze K0 exponent", "measure normalization"}) {
    double dev = 1;
    if (l.contains(id)) {
      const double m = l.find(id).measured_deviation;
      dev = m > 0 ? 0.0 : 1.0;
    }
    r.add(std::string("ledger records ") + id, dev, 0);
  }
}

// --------------------------------------------------------------- 8 slice lab

struct SlicePoint {
  double r_p, theta_p, r_q, theta_q;
};

Part slice_point(const VerifyConfig& cfg, const SliceAxis<double>& axis, const SlicePoint& pt) {
  Part out;
  Report& r = out.report;
  SliceParams sl;
  sl.axis = axis;
  sl.r_p = pt.r_p;
  sl.theta_p = pt.theta_p;
  sl.r_q = pt.r_q;
  sl.theta_q = pt.theta_q;
  const std::string tag = " [axis " + axis_label(axis) + ", p " + format_double(pt.r_p) + "@" +
                          format_double(pt.theta_p) + ", q " + format_double(pt.r_q) + "@" +
                          format_double(pt.theta_q) + "]";
  guarded(r, "slice" + tag, [&] {
    const Index d = cfg.scaled(recommended_dim(8, pt.r_p, pt.r_q));
    const LadderSet L = build_ladder(d, axis);
    const ProtectedBlock blk = block_of_size(d, 8);
    const double tol = cfg.bound(1e-8);
    for (const SliceReport& rep :
         {two_photon_expectations(sl, L, blk), squeezed_coherent_expectations(sl, L, blk)}) {
      for (const Report part = rep.oracle_report(tol); const auto& c : part.checks())
        r.add(rep.state + " " + c.identity + tag, c.deviation, cfg.bound(c.tolerance));
      for (const auto& o : rep.observables) {
        out.rows.push_back({rep.state, axis_label(axis), pt.r_p, pt.theta_p, pt.r_q, pt.theta_q, d,
                            o.name, o.printed_deviation(), o.derived_deviation(), o.numeric});
        if (!(o.printed_deviation() <= tol))
          out.ledger.add({rep.state + " " + o.name, o.printed_formula,
                          "closed form from the conjugation identities", o.printed_deviation(),
                          static_cast<long>(d), static_cast<long>(blk.margin)});
      }
      const double dq = std::abs(rep.mandel_q_printed - rep.mandel_q);
      if (!(dq <= tol))
        out.ledger.add({rep.state + " Mandel Q", "Q_M = <Delta N>/<N> - 1",
                        "Q_M = <Delta N>^2/<N> - 1", dq, static_cast<long>(d),
                        static_cast<long>(blk.margin)});
    }
  });
  return out;
}

Part hermite_checks(const VerifyConfig& cfg, const SliceAxis<double>& axis) {
  Part out;
  Report& r = out.report;
  const std::string tag = " [axis " + axis_label(axis) + "]";
  guarded(r, "squeezed basis" + tag, [&] {
    SliceParams sl;
    sl.axis = axis;
    sl.r_p = 0.5;
    sl.theta_p = 0.9;
    const Index d = cfg.scaled(96);
    const LadderSet L = build_ladder(d, axis);
    const QOperatord S = squeeze(sl.squeeze(), L);
    const Quaterniond pt = axis.point(0.3, 0.3);
    double num = 0, fac = 0;
    for (int n = 0; n <= 6 && n < d; ++n) {
      const Quaterniond v = bargmann_eval(apply(S, FockVectord::basis(d, n)), pt);
      const Quaterniond cf = squeezed_basis_closed_form(n, sl, pt);
      num = std::max(num, distance(cf, v));
      fac = std::max(fac, distance(squeezed_basis_factorized(n, sl, pt), cf));
    }
    r.add("Hermite form of S(p)Phi_n, n <= 6" + tag, num, cfg.bound(1e-7));
    r.add("factorized form of S(p)Phi_n, n <= 6" + tag, fac, cfg.bound(1e-7));
  });
  return out;
}

Part slice_section(const VerifyConfig& cfg) {
  const SliceAxis<double> second =
      cfg.axis.direction() == SliceAxis<double>::j().direction() ? SliceAxis<double>::k()
                                                                 : SliceAxis<double>::j();
  const std::vector<SliceAxis<double>> axes{cfg.axis, second};
  const std::vector<SlicePoint> pts{
      {0.6, kPi / 3, 0.8, kPi / 5}, {0.3, 2.0, 0.5, -0.7}, {0.9, 1.2, 0.6, 0.6}};
  const int n = static_cast<int>(axes.size() * pts.size());
  const auto parts = parallel_map<Part>(n + static_cast<int>(axes.size()), cfg.threads, [&](int i) {
    if (i >= n) return hermite_checks(cfg, axes[i - n]);
    return slice_point(cfg, axes[i / pts.size()], pts[i % pts.size()]);
  });
  Part out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

// -------------------------------------------------------------- 9 quadrature

Part quadrature_section(const VerifyConfig& cfg) {
  Part out;
  Report& r = out.report;
  const MeasureSpec m = cfg.measure;
  const double tol = cfg.bound(1e-8);

  guarded(r, "moments", [&] {
    for (int n = 0; n <= 3; ++n) {
      const double v = moment(n, m, QuadratureGrid::for_dim(8), tol);
      r.add("moment " + std::to_string(n) + " = n!", rel(v, std::tgamma(n + 1.0)), tol);
    }
    if (m.variant != MeasureVariant::paper) {
      const double v = moment(0, MeasureSpec::paper(), QuadratureGrid::for_dim(8), tol);
      out.ledger.add({"measure normalization",
                      "dzeta = (1/4pi) e^{-r^2} sin(phi) dr dtheta dphi dpsi; integral of 1 = pi^{3/2}",
                      "dzeta = (1/4pi^2) r e^{-r^2} sin(phi) dr dtheta dphi dpsi; integral of 1 = 1",
                      std::abs(v - 1.0), 0, 0});
    }
  });

  guarded(r, "gram", [&] {
    const QuadratureGrid g = QuadratureGrid::for_dim(8);
    const QOperatord G = gram(8, m, g);
    const QOperatord G2 = gram(8, m, g.doubled());
    r.add("Gram(8) = I", max_abs(G - QOperatord::Identity(8)), tol);
    r.add("Gram(8) grid doubling", max_abs(G2 - G), tol / 10);
    for (const MeasureSpec ms : {MeasureSpec::corrected(), MeasureSpec::paper()}) {
      QOperatord off = ms.variant == m.variant ? G : gram(8, ms, g);
      for (Index k = 0; k < 8; ++k) off.set(k, k, Quaterniond(0));
      r.add("Gram(8) cross terms vanish (" + ms.name() + ")", max_abs(off), cfg.bound(1e-10));
    }
    if (m.variant != MeasureVariant::paper) {
      const QOperatord P = gram(8, MeasureSpec::paper(), g);
      double dev = 0;
      for (Index k = 0; k < 8; ++k) dev = std::max(dev, std::abs(P(k, k).w() - 1));
      out.ledger.add({"Bargmann basis orthonormality under the printed measure",
                      "<Phi_n|Phi_n> = 1 under (1/4pi) e^{-r^2} sin(phi)",
                      "<Phi_n|Phi_n> = pi Gamma(n + 1/2) under the printed measure", dev, 8, 0});
    }
  });

  guarded(r, "resolution", [&] {
    const ProtectedBlock blk(16, 4);
    const QuadratureGrid g = QuadratureGrid::for_dim(16);
    const ResolutionResult res = resolution_of_identity(16, m, g, blk);
    r.add("resolution of identity, dim 16, block 12", res.deviation, cfg.bound(1e-6));
    r.add("resolution grid doubling", res.doubling_change, cfg.bound(1e-6) / 10);
    const LadderSet L = build_ladder(16, cfg.axis);
    const QOperatord S = squeeze(SqueezeParams(cfg.axis.phase(0.4) * 0.3), L);
    r.add("S R S+ = I, block 12",
          block_distance(S * res.op * adjoint(S), QOperatord::Identity(16), blk.size()),
          cfg.bound(1e-6));
    if (m.variant != MeasureVariant::paper) {
      const ResolutionResult lit = resolution_of_identity(16, m, g, blk, ResolutionWeight::literal);
      out.ledger.add({"resolution of identity weight", "integral of |eta_q><eta_q| dzeta = I",
                      "integral of e^{|q|^2} |eta_q><eta_q| dzeta = I", lit.deviation, 16, 4});
    }
  });

  guarded(r, "kernel", [&] {
    Rng rng;
    double ks = 0, kz = 0, kslice = 0;
    for (int s = 0; s < 50; ++s) {
      const Quaterniond q = rng.ball(1), p = rng.ball(1);
      ks = std::max(ks, distance(kernel(q, p, 40), star_exp(q, conj(p))));
      kz = std::max(kz, distance(kernel(q, Quaterniond(0), 40), Quaterniond(1)));
      const Quaterniond qs = cfg.axis.point(rng.uniform(), rng.uniform());
      const Quaterniond ps = cfg.axis.point(rng.uniform(), rng.uniform());
      kslice = std::max(kslice, distance(kernel(qs, ps, 40), exp_q(qs * conj(ps))));
    }
    r.add("kernel(q,p) = star_exp(q, conj(p))", ks, cfg.bound(1e-12));
    r.add("kernel(q,0) = 1", kz, cfg.bound(1e-12));
    r.add("kernel on a slice = exp(q conj(p))", kslice, cfg.bound(1e-12));
  });
  return out;
}

}  // namespace

void VerifyConfig::validate() const {
  if (dim < 4) throw ConfigError("dim must be at least 4");
  if (margin <= 0 || margin >= dim) throw ConfigError("margin must satisfy 0 < margin < dim");
  if (!(tol >= 0)) throw ConfigError("tol must be non-negative");
  if (threads < 1) throw ConfigError("threads must be positive");
}

Index VerifyConfig::scaled(Index d64) const {
  return std::max<Index>(4, (d64 * dim + 63) / 64);
}

bool VerifyResult::passed() const {
  for (const auto& s : sections)
    if (!s.report.passed()) return false;
  return true;
}

std::vector<std::string> VerifyResult::failures() const {
  std::vector<std::string> out;
  for (const auto& s : sections)
    for (const auto& f : s.report.failures())
      out.push_back(std::to_string(s.criterion) + " " + s.report.title() + ": " + f);
  return out;
}

VerifyResult run_verify(const VerifyConfig& cfg) {
  cfg.validate();
  const std::vector<std::pair<const char*, Part (*)(const VerifyConfig&)>> plan{
      {"quaternion", quaternion_section},     {"left products", left_product_section},
      {"ladder", ladder_section},             {"displacement", displacement_section},
      {"squeeze", squeeze_section},           {"pure squeezed states", pure_state_section},
      {"ledger", disentangle_section},        {"slice lab", slice_section},
      {"quadrature", quadrature_section}};

  VerifyResult res;
  LedgerAcc ledger;
  std::vector<Part> parts;
  for (const auto& [title, fn] : plan) parts.push_back(fn(cfg));
  for (const auto& p : parts) ledger.merge(p.ledger);
  res.ledger = ledger.ledger();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Report rep(plan[i].first);
    rep.merge(parts[i].report);
    if (i == 6) ledger_requirements(rep, res.ledger);
    res.sections.push_back({static_cast<int>(i + 1), std::move(rep)});
    res.slice_rows.insert(res.slice_rows.end(), parts[i].rows.begin(), parts[i].rows.end());
  }
  const Index sd = std::max<Index>(cfg.dim / 4, 8);
  res.structure_constants =
      structure_constants(build_ladder(sd, cfg.axis), ProtectedBlock(sd, std::max<Index>(sd / 4, 2)));
  return res;
}

void write_verify_outputs(const VerifyResult& res, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
    return os;
  };
  {
    auto os = open("ledger.json");
    os << res.ledger.to_json().dump(2) << "\n";
  }
  {
    auto os = open("structure_constants.json");
    os << res.structure_constants.dump(2) << "\n";
  }
  {
    auto os = open("verify.csv");
    CsvWriter csv(os, {"criterion", "section", "identity", "deviation", "tolerance", "passed"});
    for (const auto& s : res.sections)
      for (const auto& c : s.report.checks())
        csv.row({std::to_string(s.criterion), s.report.title(), c.identity,
                 format_double(c.deviation), format_double(c.tolerance),
                 c.passed() ? "true" : "false"});
  }
  {
    auto os = open("slice.csv");
    CsvWriter csv(os, {"state", "axis", "r_p", "theta_p", "r_q", "theta_q", "dim", "observable",
                       "printed_deviation", "derived_deviation", "w", "x", "y", "z"});
    for (const auto& r : res.slice_rows)
      csv.row({r.state, r.axis, format_double(r.r_p), format_double(r.theta_p),
               format_double(r.r_q), format_double(r.theta_q), std::to_string(r.dim), r.observable,
               format_double(r.printed_deviation), format_double(r.derived_deviation),
               format_double(r.numeric.w()), format_double(r.numeric.x()),
               format_double(r.numeric.y()), format_double(r.numeric.z())});
  }
}

}  // namespace qfock
