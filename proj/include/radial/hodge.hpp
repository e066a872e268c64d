#pragma once

// Hodge projectors of d/dx a(x) d/dx on the line.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radial/opnorm.hpp"
#include "radial/scan.hpp"

namespace radial::hodge {

/// Positive coefficient a(x) with power-law tails a(x) ~ |x|^e as x -> +-inf.
/// The tail exponents decide integrability exactly; samples cannot.
class CoefficientFunction {
 public:
  /// a_delta(x) = (1 + |x|)^{2 delta}.
  static CoefficientFunction powerWeight(double delta);
  static CoefficientFunction constant(double value = 1.0);
  /// Piecewise linear through (x_i, a_i), continued beyond the ends by
  /// a_end (|x| / |x_end|)^e. Needs x_0 < 0 < x_n and a_i > 0.
  static CoefficientFunction sampled(std::vector<double> x, std::vector<double> a,
                                     double leftExponent, double rightExponent);

  double operator()(double x) const { return f_(x); }
  double leftExponent() const noexcept { return left_; }
  double rightExponent() const noexcept { return right_; }
  const std::string& name() const noexcept { return name_; }
  /// Points where a may fail to be smooth (always includes 0).
  const std::vector<double>& kinks() const noexcept { return kinks_; }

 private:
  CoefficientFunction(std::function<double(double)> f, double left, double right,
                      std::string name, std::vector<double> kinks);
  std::function<double(double)> f_;
  double left_;
  double right_;
  std::string name_;
  std::vector<double> kinks_;
};

struct MassA {
  double A = 0.0;  // +inf when not finite
  bool finite = false;
  int doublings = 0;
};

/// A = int 1/a over the line. Tails are integrated over doubling intervals
/// [X, 2X]; three consecutive ratios >= 0.9 mean divergence, otherwise the
/// geometric tail is extrapolated once the ratios settle.
MassA massA(const CoefficientFunction& a);

/// K(x, y) = a(x)^{-1/2} a(y)^{-1/2} / A, or nullopt when A is infinite (the
/// projector is the identity).
std::optional<double> hodgeKernel(const CoefficientFunction& a, double x, double y);

/// Whether a^{-q/2} is integrable at both ends, i.e. a^{-1/2} in L^q.
bool invSqrtInLq(const CoefficientFunction& a, double q);

/// Bounded iff A is infinite or a^{-1/2} lies in L^p and L^{p'}.
Verdict hodgeLpBounded(const CoefficientFunction& a, double p);

/// Cells of [-R, R] with edges sinh(t), t uniform; `perUnit` cells per unit t.
struct LineGrid {
  std::vector<double> edges;
  std::vector<double> mid;
  std::vector<double> h;
  static LineGrid symmetric(double R, int perUnit = 100);
};

struct ProjectorReport {
  std::size_t cells = 0;
  double gridMass = 0.0;     // A_h = sum h_j / a_j
  bool identity = false;     // A infinite
  double idempotence = 0.0;  // ||P^2 - P||
  double rankOneResidual = 0.0;
  double oracleDiff = 0.0;   // ||P - grad L^{-1} grad^*|| with Dirichlet ends
  double conditionEstimate = 0.0;
};

/// Builds P = Id - R_h on the cells of `grid` (R_h projects onto a^{-1/2} in
/// the grid inner product sum h_j f_j g_j) and checks it against the
/// projector computed from the discretized operator L = -d/dx a d/dx. Norms
/// are L^2 operator norms in the grid inner product. `seed` drives the random
/// vectors of the rank-one check.
ProjectorReport verifyProjector(const CoefficientFunction& a, const LineGrid& grid,
                                unsigned seed = 1);

/// Id - g g^T H / (g^T H g) on a weighted grid.
class RankOneProjector : public GridOperator {
 public:
  RankOneProjector(Eigen::VectorXd g, std::vector<double> weights);
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const override;
  Eigen::VectorXd applyAdjoint(const Eigen::VectorXd& f) const override { return apply(f); }
  const Eigen::VectorXd& direction() const noexcept { return g_; }

 private:
  Eigen::VectorXd g_;
  double mass_ = 0.0;
};

/// Probe and power-iteration estimate of ||P||_{p -> p} in L^p(dx) on the
/// cells of `grid` (P = Id when A is infinite).
NormEstimate projectorNorm(const CoefficientFunction& a, const LineGrid& grid, double p);

struct IsometryReport {
  double weighted = 0.0;  // L^p(|r|^{d-1} dr) on the broken line |r| in [1, R]
  double flat = 0.0;      // L^p(dx) on |x| in [1, R^d] with a = |x|^{2 delta}
  double relativeGap = 0.0;
};

/// Norms of the Hodge projector of the radial operator in dimension d, in
/// the weighted picture and, through x = r^d (delta = 1 - 1/d), in the flat
/// picture, each on its own log-spaced grid.
IsometryReport isometryCheck(double d, double p, double R, int perDecade = 256);

}  // namespace radial::hodge
