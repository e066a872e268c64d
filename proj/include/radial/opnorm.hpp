#pragma once

// Integral operators on weighted grids and lower-bound estimates of their
// L^p -> L^p norms.

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "radial/grid.hpp"

namespace radial {

/// (A f)_i = sum_j T(x_i, y_j) w_j f_j on a fixed grid. The adjoint is taken
/// with respect to the pairing sum_i f_i g_i w_i.
class GridOperator {
 public:
  explicit GridOperator(std::vector<double> weights) : w_(std::move(weights)) {}
  virtual ~GridOperator() = default;
  std::size_t size() const noexcept { return w_.size(); }
  const std::vector<double>& weights() const noexcept { return w_; }
  virtual Eigen::VectorXd apply(const Eigen::VectorXd& f) const = 0;
  virtual Eigen::VectorXd applyAdjoint(const Eigen::VectorXd& g) const = 0;

 protected:
  std::vector<double> w_;
};

/// Explicit kernel matrix T.
class DenseGridOperator : public GridOperator {
 public:
  DenseGridOperator(Eigen::MatrixXd T, std::vector<double> weights);
  const Eigen::MatrixXd& kernel() const noexcept { return T_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const override;
  Eigen::VectorXd applyAdjoint(const Eigen::VectorXd& g) const override;
  /// The operator with kernel T(y, x) (weighted transpose).
  DenseGridOperator transposed() const;

 private:
  Eigen::MatrixXd T_;
};

/// T(x_i, y_j) = sum_m U_im V_jm (alpha_m + beta_m s_i s_j), s_i = +-1 the side
/// of x_i.
class LowRankGridOperator : public GridOperator {
 public:
  LowRankGridOperator(Eigen::MatrixXd U, Eigen::MatrixXd V, Eigen::VectorXd alpha,
                      Eigen::VectorXd beta, Eigen::VectorXd side, std::vector<double> weights);
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const override;
  Eigen::VectorXd applyAdjoint(const Eigen::VectorXd& g) const override;
  /// Adds gamma * P_i Q_j to the kernel.
  void addRankOne(Eigen::VectorXd P, Eigen::VectorXd Q, double gamma);
  Eigen::MatrixXd dense() const;

 private:
  Eigen::MatrixXd U_, V_;
  Eigen::VectorXd alpha_, beta_, side_;
  Eigen::VectorXd P_, Q_;
  double gamma_ = 0.0;
};

struct NormEstimate {
  double value = 0.0;
  std::string method;  // "probe:<name>", "power" or "svd"
  int iterations = 0;
  bool converged = true;
};

struct NormOptions {
  int maxIterations = 100;
  double tolerance = 1e-10;
  bool powerIteration = true;
  /// Extra probes in addition to the built-in family.
  std::vector<ProbeFunction> probes;
};

/// ||A f||_p / ||f||_p for one sampled function.
double probeRatio(const GridOperator& A, const WeightedGrid& grid, const std::vector<double>& f,
                  double p);

/// Best of the probe family (power laws around the critical decay d/p, the
/// (y log y)^{-1} probe, dyadic indicator blocks) and the p-norm power
/// iteration started from the best probe. A lower bound by construction.
NormEstimate opNormEstimate(const GridOperator& A, const WeightedGrid& grid, double p,
                            const NormOptions& opt = {});
/// Same, with `opt.probes` as the only probes (weights taken from A).
NormEstimate opNormEstimate(const GridOperator& A, double p, const NormOptions& opt);

/// Largest singular value of W^{1/2} T W^{1/2}: the exact p = 2 norm.
double spectralNorm(const DenseGridOperator& A);

}  // namespace radial
