#pragma once

// Independent oracles shared by the unit tests and the acceptance run.

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "radial/discretize.hpp"
#include "radial/riesz.hpp"

namespace radial::testing {

struct NormalizationResult {
  double relativeDiff = 0.0;  // operator-norm gap over both off-diagonal blocks
  double scale = 0.0;         // <K_h, K> / <K, K>, ideally 1
};

/// d/dx L_h^{-1/2} from an eigendecomposition of the discretized Neumann
/// half-line operator, against the quadrature Riesz kernel on the blocks
/// x in [0.5, 1], y in [3, 6] and its transpose.
inline NormalizationResult rieszNormalization(double d, const QuadratureScheme& scheme,
                                              int perDecade = 256, double R = 200.0) {
  const OperatorSpec op(Family::HalfLineNeumann, Dimension(d));
  GridOptions o;
  o.perDecade = perDecade;
  const auto g = WeightedGrid::forOperator(op, R, o);
  const auto D = discretizeOperator(op, g);
  const std::size_t n = D.size();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D.symmetricForm());
  const Eigen::VectorXd invSqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd G = es.eigenvectors() * invSqrt.asDiagonal() * es.eigenvectors().transpose();
  Eigen::VectorXd ms(n);
  for (std::size_t i = 0; i < n; ++i) ms(i) = 1.0 / std::sqrt(D.mass[i]);
  G = ms.asDiagonal() * G * ms.asDiagonal();  // kernel of L_h^{-1/2} against the measure

  auto nodesIn = [&](double lo, double hi) {
    std::vector<int> idx;
    for (std::size_t i = 1; i + 1 < n; i += 2) {
      if (D.x[i] >= lo && D.x[i] <= hi) idx.push_back(static_cast<int>(i));
    }
    return idx;
  };
  // three-point derivative on a non-uniform grid
  auto dx = [&](int i, int j) {
    const double h0 = D.x[i] - D.x[i - 1], h1 = D.x[i + 1] - D.x[i];
    return (-h1 / (h0 * (h0 + h1))) * G(i - 1, j) + ((h1 - h0) / (h0 * h1)) * G(i, j) +
           (h0 / (h1 * (h0 + h1))) * G(i + 1, j);
  };

  double diff2 = 0.0, ref2 = 0.0, cross = 0.0, self = 0.0;
  const std::vector<int> near = nodesIn(0.5, 1.0), far = nodesIn(3.0, 6.0);
  for (int block = 0; block < 2; ++block) {
    const auto& xs = block == 0 ? near : far;
    const auto& ys = block == 0 ? far : near;
    Eigen::MatrixXd Kh(xs.size(), ys.size()), K(xs.size(), ys.size());
    for (std::size_t a = 0; a < xs.size(); ++a) {
      for (std::size_t b = 0; b < ys.size(); ++b) {
        // stride-2 subsampling doubles the weights
        const double w = 2.0 * std::sqrt(D.mass[xs[a]] * D.mass[ys[b]]);
        Kh(a, b) = w * dx(xs[a], ys[b]);
        K(a, b) = w * riesz::rieszKernel(op, D.x[xs[a]], D.x[ys[b]], scheme).value;
      }
    }
    const double dn = (Kh - K).jacobiSvd().singularValues()(0);
    const double rn = K.jacobiSvd().singularValues()(0);
    diff2 += dn * dn;
    ref2 += rn * rn;
    cross += (Kh.array() * K.array()).sum();
    self += K.squaredNorm();
  }
  return {std::sqrt(diff2 / ref2), cross / self};
}

}  // namespace radial::testing
