#include "radial/discretize.hpp"

#include <algorithm>
#include <cmath>

#include "radial/errors.hpp"

namespace radial {

namespace {

// int_a^b r^{1-d} dr, 0 <= a < b.
double resistance(double d, double a, double b) {
  const double e = 2.0 - d;
  if (a <= 0.0) return std::pow(b, e) / e;
  const double t = std::log(b / a);
  if (std::abs(e) < 1e-12) return t;
  return std::pow(a, e) * std::expm1(e * t) / e;
}

}  // namespace

DiscreteOperator discretizeOperator(const OperatorSpec& op, const WeightedGrid& grid,
                                    OuterBoundary outer) {
  if (grid.domain() != op.domain() || grid.d() != op.d()) {
    throw ParameterError("grid does not match the domain of " + op.name());
  }
  const double d = op.d();
  const auto& nodes = grid.nodes();
  const auto& w = grid.weights();
  const std::size_t n = nodes.size();
  if (n < 3) throw ParameterError("grid too small to discretize");

  std::vector<int> eliminated(n, 0);
  if (op.family() == Family::HalfLineDirichlet) {
    if (nodes.front() != 0.0) throw ParameterError("Dirichlet half line needs an origin node");
    eliminated.front() = 1;
  }
  if (op.domain() == DomainKind::FullLine && !grid.options().origin) {
    throw ParameterError("full-line discretization needs an origin node");
  }
  if (op.family() == Family::RayDirichlet) eliminated.front() = 1;
  if (outer == OuterBoundary::Dirichlet) {
    eliminated.back() = 1;
    if (op.twoSided()) eliminated.front() = 1;
  }

  DiscreteOperator D;
  D.dofOfNode.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (eliminated[i]) continue;
    D.dofOfNode[i] = static_cast<int>(D.x.size());
    D.x.push_back(nodes[i]);
    D.mass.push_back(w[i]);
  }
  const std::size_t m = D.x.size();
  std::vector<double> diag(m, 0.0);
  std::vector<Eigen::Triplet<double>> trip;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = std::min(std::abs(nodes[i]), std::abs(nodes[i + 1]));
    const double b = std::max(std::abs(nodes[i]), std::abs(nodes[i + 1]));
    const double c = 1.0 / resistance(d, a, b);
    const int p = D.dofOfNode[i], q = D.dofOfNode[i + 1];
    if (p >= 0) diag[p] += c;
    if (q >= 0) diag[q] += c;
    if (p >= 0 && q >= 0) {
      trip.emplace_back(p, q, -c);
      trip.emplace_back(q, p, -c);
    }
    if (op.hasPotential()) {
      // lumped c int r^{d-3} dr over the half elements
      const double u = 0.5 * op.c() * shellVolume(d - 2.0, a, b);
      if (p >= 0) diag[p] += u;
      if (q >= 0) diag[q] += u;
    }
  }
  if (op.family() == Family::BrokenLineDelta) {
    const auto it = std::find(nodes.begin(), nodes.end(), 1.0);
    diag[D.dofOfNode[it - nodes.begin()]] += op.a();
  }
  for (std::size_t i = 0; i < m; ++i) trip.emplace_back(i, i, diag[i]);
  D.S.resize(m, m);
  D.S.setFromTriplets(trip.begin(), trip.end());
  return D;
}

Eigen::MatrixXd DiscreteOperator::resolvent(double lambda) const {
  Eigen::SparseMatrix<double> A = S;
  for (std::size_t i = 0; i < size(); ++i) A.coeffRef(i, i) += lambda * lambda * mass[i];
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(A);
  if (solver.info() != Eigen::Success) throw ConvergenceError("resolvent factorization failed");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(size(), size());
  return solver.solve(I);
}

Eigen::MatrixXd DiscreteOperator::symmetricForm() const {
  Eigen::VectorXd s(size());
  for (std::size_t i = 0; i < size(); ++i) s[i] = 1.0 / std::sqrt(mass[i]);
  return s.asDiagonal() * Eigen::MatrixXd(S) * s.asDiagonal();
}

std::vector<double> applyResolvent(const OperatorSpec& op, double lambda,
                                   const std::vector<double>& f, const WeightedGrid& grid) {
  if (grid.domain() != op.domain() || f.size() != grid.size()) {
    throw ParameterError("sampled function and grid do not match " + op.name());
  }
  const Eigen::MatrixXd K = ops::resolventMatrix(op, lambda, grid.nodes());
  Eigen::VectorXd g(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) g[j] = f[j] * grid.weights()[j];
  const Eigen::VectorXd u = K * g;
  return {u.data(), u.data() + u.size()};
}

double symmetricSpectralNorm(const Eigen::MatrixXd& A, int iterations) {
  const Eigen::Index n = A.rows();
  if (n == 0) return 0.0;
  // deterministic start with components of both signs
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.3 * static_cast<double>(i));
  v.normalize();
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd u = A * v;
    const double nu = u.norm();
    if (nu == 0.0) return 0.0;
    const bool done = std::abs(nu - est) <= 1e-12 * nu;
    est = nu;
    v = u / nu;
    if (done) break;
  }
  return est;
}

double resolventDiscrepancy(const OperatorSpec& op, const WeightedGrid& grid, double lambda,
                            OuterBoundary outer, double compareRadius) {
  if (compareRadius <= 0.0) compareRadius = grid.R() - 20.0 / lambda;
  const auto D = discretizeOperator(op, grid, outer);
  std::vector<int> keep;
  std::vector<double> xs;
  for (std::size_t i = 0; i < D.size(); ++i) {
    if (std::abs(D.x[i]) <= compareRadius) {
      keep.push_back(static_cast<int>(i));
      xs.push_back(D.x[i]);
    }
  }
  if (keep.empty()) throw ParameterError("no grid nodes inside the comparison radius");
  const Eigen::MatrixXd Kh = D.resolvent(lambda)(keep, keep);
  const Eigen::MatrixXd K = ops::resolventMatrix(op, lambda, xs);
  Eigen::VectorXd s(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) s[i] = std::sqrt(D.mass[keep[i]]);
  const Eigen::MatrixXd E = s.asDiagonal() * (Kh - K) * s.asDiagonal();
  const Eigen::MatrixXd B = s.asDiagonal() * K * s.asDiagonal();
  return symmetricSpectralNorm(E) / symmetricSpectralNorm(B);
}

}  // namespace radial
