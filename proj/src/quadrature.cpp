#include "qfock/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "qfock/summation.hpp"

namespace qfock {

namespace {

constexpr double kPi = std::numbers::pi;

void golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double mu0,
                  std::vector<double>& x, std::vector<double>& w) {
  const Index n = diag.size();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  j.diagonal() = diag;
  for (Index i = 0; i + 1 < n; ++i) j(i, i + 1) = j(i + 1, i) = off(i);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  x.resize(n);
  w.resize(n);
  for (Index i = 0; i < n; ++i) {
    x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    w[i] = mu0 * v * v;
  }
}

// Four real matrices summed pairwise over quadrature nodes.
struct QuatSum {
  std::array<Eigen::MatrixXd, 4> p;
  QuatSum& operator+=(const QuatSum& o) {
    for (int c = 0; c < 4; ++c) {
      if (p[c].size() == 0)
        p[c] = o.p[c];
      else
        p[c] += o.p[c];
    }
    return *this;
  }
};

}  // namespace

double MeasureSpec::normalization() const {
  return variant == MeasureVariant::paper ? 1 / (4 * kPi) : 1 / (4 * kPi * kPi);
}

double MeasureSpec::radial_alpha() const { return variant == MeasureVariant::paper ? -0.5 : 0.0; }

double MeasureSpec::moment_reference(int n) const {
  if (variant == MeasureVariant::paper) return kPi * std::tgamma(n + 0.5);
  return std::tgamma(n + 1.0);
}

MeasureVariant parse_measure(const std::string& s) {
  if (s == "paper") return MeasureVariant::paper;
  if (s == "corrected") return MeasureVariant::corrected;
  throw ConfigError("unknown measure '" + s + "' (paper|corrected)");
}

QuadratureGrid QuadratureGrid::for_dim(Index dim) {
  QuadratureGrid g;
  g.n_r = static_cast<int>(dim / 2 + 4);
  g.n_theta = static_cast<int>(2 * dim + 2);
  return g;
}

void gauss_laguerre(int n, double alpha, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1 || alpha <= -1) throw ConfigError("gauss_laguerre needs n >= 1, alpha > -1");
  Eigen::VectorXd diag(n), off(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) diag(i) = 2 * i + alpha + 1;
  for (int i = 1; i < n; ++i) off(i - 1) = std::sqrt(i * (i + alpha));
  golub_welsch(diag, off, std::tgamma(alpha + 1), x, w);
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) throw ConfigError("gauss_legendre needs n >= 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), off(std::max(n - 1, 0));
  for (int i = 1; i < n; ++i) off(i - 1) = i / std::sqrt(4.0 * i * i - 1);
  golub_welsch(diag, off, 2.0, x, w);
}

std::vector<QuadratureNode> quadrature_nodes(const MeasureSpec& m, const QuadratureGrid& g) {
  std::vector<double> tx, tw, ux, uw;
  gauss_laguerre(g.n_r, m.radial_alpha(), tx, tw);
  gauss_legendre(g.n_phi, ux, uw);
  // dr -> dt: corrected r dr = dt/2, paper dr = t^{-1/2} dt/2
  const double base = m.normalization() * 0.5 * (2 * kPi / g.n_theta) * (2 * kPi / g.n_psi);
  std::vector<QuadratureNode> nodes;
  nodes.reserve(static_cast<std::size_t>(g.n_r) * g.n_theta * g.n_phi * g.n_psi);
  for (int ir = 0; ir < g.n_r; ++ir)
    for (int it = 0; it < g.n_theta; ++it)
      for (int ip = 0; ip < g.n_phi; ++ip)
        for (int is = 0; is < g.n_psi; ++is) {
          PolarForm<double> pf;
          pf.r = std::sqrt(tx[ir]);
          pf.theta = 2 * kPi * it / g.n_theta;
          pf.phi = std::acos(ux[ip]);
          pf.psi = 2 * kPi * is / g.n_psi;
          nodes.push_back({unpolar(pf), base * tw[ir] * uw[ip]});
        }
  return nodes;
}

double moment(int n, const MeasureSpec& m, const QuadratureGrid& g, double tol) {
  const auto integrate = [&](const QuadratureGrid& grid) {
    const auto nodes = quadrature_nodes(m, grid);
    return pairwise_sum<double>(static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t i) {
      return nodes[i].weight * std::pow(nodes[i].q.squaredNorm(), n);
    });
  };
  const double v = integrate(g);
  const double v2 = integrate(g.doubled());
  if (std::abs(v2 - v) > tol / 10 * std::max(1.0, std::abs(v)))
    throw ConvergenceError("moment not stable under grid doubling");
  return v;
}

namespace {

QOperatord integrate_outer(Index dim, const std::vector<QuadratureNode>& nodes,
                           const std::function<FockVectord(const Quaterniond&)>& left,
                           const std::function<FockVectord(const Quaterniond&)>& right) {
  // node contribution w f g^dagger, entries f_j conj(g_k)
  const QuatSum s = pairwise_sum<QuatSum>(
      static_cast<std::ptrdiff_t>(nodes.size()), [&](std::ptrdiff_t i) {
        const FockVectord f = left(nodes[i].q);
        const FockVectord h = right(nodes[i].q);
        const auto& fc = f.coeffs();
        Eigen::MatrixXd hc = h.coeffs();
        hc.rightCols<3>() *= -1;  // conj
        QuatSum t;
        for (int c = 0; c < 4; ++c) t.p[c] = Eigen::MatrixXd::Zero(dim, dim);
        for (int c = 0; c < 4; ++c)
          for (const auto& term : detail::kHamilton[c])
            t.p[c].noalias() += (term.sign * nodes[i].weight) * fc.col(term.lhs) *
                                hc.col(term.rhs).transpose();
        return t;
      });
  return QOperatord(s.p[0], s.p[1], s.p[2], s.p[3]);
}

FockVectord monomials(const Quaterniond& q, Index dim) {
  // Phi_n(q) = q^n / sqrt(n!)
  FockVectord v(dim);
  Quaterniond qn(1);
  double inv = 1;
  for (Index n = 0; n < dim; ++n) {
    if (n > 0) {
      qn = qn * q;
      inv /= std::sqrt(static_cast<double>(n));
    }
    v.set(n, qn * inv);
  }
  return v;
}

}  // namespace

QOperatord gram(Index dim, const MeasureSpec& m, const QuadratureGrid& g) {
  // entries f_j conj(f_k) with f = conj(Phi) give conj(Phi_j) Phi_k
  const auto f = [&](const Quaterniond& q) {
    FockVectord v = monomials(q, dim);
    v.coeffs().rightCols<3>() *= -1;
    return v;
  };
  return integrate_outer(dim, quadrature_nodes(m, g), f, f);
}

QOperatord resolution_operator(Index dim, const MeasureSpec& m, const QuadratureGrid& g,
                               ResolutionWeight weight) {
  const auto eta = [&](const Quaterniond& q) {
    FockVectord v = monomials(q, dim);
    v.coeffs() *= std::exp(-q.squaredNorm() / 2);
    return v;
  };
  const auto weighted = [&](const Quaterniond& q) {
    FockVectord v = eta(q);
    if (weight == ResolutionWeight::kernel) v.coeffs() *= std::exp(q.squaredNorm());
    return v;
  };
  return integrate_outer(dim, quadrature_nodes(m, g), weighted, eta);
}

ResolutionResult resolution_of_identity(Index dim, const MeasureSpec& m, const QuadratureGrid& g,
                                        const ProtectedBlock& block, ResolutionWeight weight) {
  ResolutionResult out;
  out.op = resolution_operator(dim, m, g, weight);
  out.deviation = block_distance(out.op, QOperatord::Identity(dim), block.size());
  const QOperatord fine = resolution_operator(dim, m, g.doubled(), weight);
  out.doubling_change = max_abs(fine - out.op);
  return out;
}

Quaterniond kernel(const Quaterniond& q, const Quaterniond& p, Index dim, double tail_tol) {
  const double x = q.norm() * p.norm();
  const double tail = x == 0 ? 0.0
                             : std::exp(dim * std::log(x) - std::lgamma(dim + 1.0) + x);
  if (tail > tail_tol) throw TailViolation("kernel partial sum not converged", tail, 2 * dim);
  const Quaterniond pb = conj(p);
  std::vector<Quaterniond> terms(dim);
  Quaterniond qn(1), pn(1);
  double inv_fact = 1;
  for (Index n = 0; n < dim; ++n) {
    if (n > 0) {
      qn = qn * q;
      pn = pn * pb;
      inv_fact /= n;
    }
    terms[n] = (qn * pn) * inv_fact;
  }
  return pairwise_sum<Quaterniond>(dim, [&](std::ptrdiff_t n) { return terms[n]; });
}

}  // namespace qfock
