#include "qfock/algebra.hpp"

#include <Eigen/QR>
#include <cmath>

namespace qfock {

namespace {

const QOperatord::Matrix& generator_matrix(const LadderSet& L, Generator g) {
  switch (g) {
    case Generator::I: return L.identity.part(0);
    case Generator::N: return L.n_op.part(0);
    case Generator::A: return L.a.part(0);
    case Generator::ADag: return L.a_dag.part(0);
    case Generator::A2: return L.a2.part(0);
    case Generator::ADag2: return L.a_dag2.part(0);
  }
  throw ConfigError("unknown generator");
}

double max_coeff(const AlgebraElement& e) { return e.coeffs().cwiseAbs().maxCoeff(); }

}  // namespace

AlgebraElement AlgebraElement::basis(int tau, Generator g, double value) {
  AlgebraElement e;
  e(tau, g) = value;
  return e;
}

AlgebraElement AlgebraElement::part(int tau) const {
  AlgebraElement e;
  e.c_.segment<kGenerators>(tau * kGenerators) = c_.segment<kGenerators>(tau * kGenerators);
  return e;
}

bool AlgebraElement::in_h12(int tau) const {
  for (int t = 1; t < 4; ++t)
    if (t != tau && !c_.segment<kGenerators>(t * kGenerators).isZero(0)) return false;
  return true;
}

AlgebraElement AlgebraElement::scale(double x, double y, int tau) const {
  // (x + tau y)(c1 + tau ct) = (x c1 - y ct) + tau (x ct + y c1)
  AlgebraElement out;
  const auto c1 = c_.segment<kGenerators>(0);
  const auto ct = c_.segment<kGenerators>(tau * kGenerators);
  out.c_.segment<kGenerators>(0) = x * c1 - y * ct;
  out.c_.segment<kGenerators>(tau * kGenerators) = x * ct + y * c1;
  return out;
}

std::string generator_name(int tau, Generator g) {
  static const char* taus[] = {"", "i.", "j.", "k."};
  static const char* gens[] = {"I", "N", "a", "a+", "a^2", "(a+)^2"};
  return std::string(taus[tau]) + gens[int(g)];
}

QOperatord realize(const AlgebraElement& e, const LadderSet& L) {
  QOperatord out(L.dim);
  for (int tau = 0; tau < 4; ++tau)
    for (int g = 0; g < kGenerators; ++g) {
      const double c = e(tau, Generator(g));
      if (c != 0) out.part(tau) += c * generator_matrix(L, Generator(g));
    }
  return out;
}

Decomposition decompose(const QOperatord& op, const LadderSet& L, const ProtectedBlock& block) {
  const Index n = block.size();
  const Index rows = n * n;
  Eigen::MatrixXd basis(rows, kGenerators);
  for (int g = 0; g < kGenerators; ++g)
    basis.col(g) = generator_matrix(L, Generator(g)).topLeftCorner(n, n).reshaped();
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(basis);

  Decomposition out;
  for (int tau = 0; tau < 4; ++tau) {
    const Eigen::VectorXd target = op.part(tau).topLeftCorner(n, n).reshaped();
    const Eigen::VectorXd x = qr.solve(target);
    for (int g = 0; g < kGenerators; ++g) out.element(tau, Generator(g)) = x(g);
    const double res = (basis * x - target).cwiseAbs().maxCoeff();
    out.residual = std::max(out.residual, res);
  }
  return out;
}

BracketResult bracket_tau(const AlgebraElement& a, const AlgebraElement& b, int tau,
                          const LadderSet& L, const ProtectedBlock& block) {
  if (tau < 1 || tau > 3 || !a.in_h12(tau) || !b.in_h12(tau))
    throw ConfigError("bracket_tau needs elements of h12(tau)");
  const Decomposition d = decompose(commutator(realize(a, L), realize(b, L)), L, block);
  return {d.element, d.residual};
}

H24Bracket bracket_h24(const AlgebraElement& a, const AlgebraElement& b, const LadderSet& L,
                       const ProtectedBlock& block) {
  const QOperatord a1 = realize(a.part(0), L);
  const QOperatord b1 = realize(b.part(0), L);
  const QOperatord c11 = commutator(a1, b1);
  QOperatord first = c11;
  QOperatord second = c11 * 0.0;
  for (int tau = 1; tau < 4; ++tau) {
    const QOperatord at = realize(a.part(tau), L);
    const QOperatord bt = realize(b.part(tau), L);
    const QOperatord cross = commutator(a1, bt) + commutator(at, b1 + bt);
    first += cross;
    second += c11 * (1.0 / 3.0) + cross;
  }
  H24Bracket out;
  const Decomposition d1 = decompose(first, L, block);
  const Decomposition d2 = decompose(second, L, block);
  out.first = {d1.element, d1.residual};
  out.second = {d2.element, d2.residual};
  out.disagreement = max_coeff(d1.element - d2.element);
  return out;
}

double jacobi_residual_h24(const AlgebraElement& a, const AlgebraElement& b,
                           const AlgebraElement& c, const LadderSet& L,
                           const ProtectedBlock& block) {
  const auto br = [&](const AlgebraElement& x, const AlgebraElement& y) {
    return bracket_h24(x, y, L, block).first.element;
  };
  return max_coeff(br(a, br(b, c)) + br(c, br(a, b)) + br(b, br(c, a)));
}

double jacobi_residual_tau(const AlgebraElement& a, const AlgebraElement& b,
                           const AlgebraElement& c, int tau, const LadderSet& L,
                           const ProtectedBlock& block) {
  const auto br = [&](const AlgebraElement& x, const AlgebraElement& y) {
    return bracket_tau(x, y, tau, L, block).element;
  };
  return max_coeff(br(a, br(b, c)) + br(c, br(a, b)) + br(b, br(c, a)));
}

nlohmann::ordered_json structure_constants(const LadderSet& L, const ProtectedBlock& block) {
  auto table = nlohmann::ordered_json::array();
  for (int ta = 0; ta < 4; ++ta)
    for (int ga = 0; ga < kGenerators; ++ga)
      for (int tb = 0; tb < 4; ++tb)
        for (int gb = 0; gb < kGenerators; ++gb) {
          const auto x = AlgebraElement::basis(ta, Generator(ga));
          const auto y = AlgebraElement::basis(tb, Generator(gb));
          const H24Bracket br = bracket_h24(x, y, L, block);
          nlohmann::ordered_json terms = nlohmann::ordered_json::object();
          for (int t = 0; t < 4; ++t)
            for (int g = 0; g < kGenerators; ++g) {
              const double v = std::round(br.first.element(t, Generator(g)) * 1e9) / 1e9;
              if (v != 0) terms[generator_name(t, Generator(g))] = v;
            }
          if (terms.empty()) continue;
          table.push_back({{"lhs", generator_name(ta, Generator(ga))},
                           {"rhs", generator_name(tb, Generator(gb))},
                           {"bracket", terms}});
        }
  return table;
}

}  // namespace qfock
