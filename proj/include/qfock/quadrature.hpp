#pragma once

#include <string>
#include <vector>

#include "qfock/fock.hpp"
#include "qfock/ladder.hpp"

namespace qfock {

enum class MeasureVariant { paper, corrected };

/// paper:     (1/4pi)    e^{-r^2} sin(phi) dr dtheta dphi dpsi
/// corrected: (1/4pi^2) r e^{-r^2} sin(phi) dr dtheta dphi dpsi
struct MeasureSpec {
  MeasureVariant variant{MeasureVariant::corrected};

  static MeasureSpec paper() { return {MeasureVariant::paper}; }
  static MeasureSpec corrected() { return {MeasureVariant::corrected}; }
  std::string name() const { return variant == MeasureVariant::paper ? "paper" : "corrected"; }
  double normalization() const;
  /// Laguerre exponent after t = r^2: 0 for corrected, -1/2 for paper.
  double radial_alpha() const;
  /// Exact value of the integral of |q|^{2n}.
  double moment_reference(int n) const;
};

MeasureVariant parse_measure(const std::string& s);

/// Rule sizes: Gauss-Laguerre in t = r^2, trapezoid in theta and psi,
/// Gauss-Legendre in cos(phi).
struct QuadratureGrid {
  int n_r{24};
  int n_theta{34};
  int n_phi{4};
  int n_psi{4};

  QuadratureGrid doubled() const { return {2 * n_r, 2 * n_theta, 2 * n_phi, 2 * n_psi}; }
  /// Exact for the polynomial integrands of a dim-level space.
  static QuadratureGrid for_dim(Index dim);
};

struct QuadratureNode {
  Quaterniond q;
  double weight;
};

/// Nodes and weights on [0, inf) for x^alpha e^{-x} (Golub-Welsch).
void gauss_laguerre(int n, double alpha, std::vector<double>& x, std::vector<double>& w);
/// Nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

std::vector<QuadratureNode> quadrature_nodes(const MeasureSpec& m, const QuadratureGrid& g);

/// Integral of |q|^{2n}; throws ConvergenceError when doubling the grid
/// moves the value by more than tol/10 (relative).
double moment(int n, const MeasureSpec& m, const QuadratureGrid& g, double tol = 1e-10);

/// G[m][n] = integral of conj(Phi_m(q)) Phi_n(q).
QOperatord gram(Index dim, const MeasureSpec& m, const QuadratureGrid& g);

enum class ResolutionWeight { kernel, literal };

struct ResolutionResult {
  QOperatord op{1};
  double deviation{0};       // max |R - I| on the block
  double doubling_change{0}; // max entry change when the grid doubles
};

/// Integral of w(q) |eta_q><eta_q| with w = e^{|q|^2} (kernel) or w = 1
/// (literal).
QOperatord resolution_operator(Index dim, const MeasureSpec& m, const QuadratureGrid& g,
                               ResolutionWeight weight);
ResolutionResult resolution_of_identity(Index dim, const MeasureSpec& m, const QuadratureGrid& g,
                                        const ProtectedBlock& block,
                                        ResolutionWeight weight = ResolutionWeight::kernel);

/// Partial sum of Phi_n(q) conj(Phi_n(p)) over n < dim.
Quaterniond kernel(const Quaterniond& q, const Quaterniond& p, Index dim,
                   double tail_tol = 1e-14);

}  // namespace qfock
