#pragma once

// Log-spaced weighted grids and sampled functions on them.

#include <string>
#include <vector>

#include "radial/operators.hpp"

namespace radial {

struct GridOptions {
  int perDecade = 256;
  /// Inner truncation for half and full lines.
  double innerCut = 1e-3;
  /// Upper bound on the absolute node spacing (the grid turns uniform once
  /// the log spacing would exceed it).
  double maxStep = 0.0;  // 0: no bound
  /// Add a node at r = 0 (needed to discretize the full line and the
  /// Dirichlet half line).
  bool origin = false;
};

/// Nodes on one of the four domains with lumped weights m_i = half the
/// |r|^{d-1} dr volume of the adjacent cells. On the broken line the
/// junction +-1 is a single node stored as x = 1.
class WeightedGrid {
 public:
  WeightedGrid(DomainKind domain, Dimension d, double R, const GridOptions& opt = {});
  /// Grid suited to an operator: origin node for HalfLineDirichlet and
  /// FullLineDirichlet, inner cut otherwise.
  static WeightedGrid forOperator(const OperatorSpec& op, double R, GridOptions opt = {});

  DomainKind domain() const noexcept { return domain_; }
  double d() const noexcept { return d_; }
  double R() const noexcept { return R_; }
  double innerCut() const noexcept { return rmin_; }
  const GridOptions& options() const noexcept { return opt_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Positive radii r_0 < r_1 < ... used on each side.
  const std::vector<double>& radii() const noexcept { return radii_; }
  /// Exact measure of the truncated domain.
  double exactMass() const noexcept;

 private:
  DomainKind domain_;
  double d_;
  double R_;
  double rmin_;
  GridOptions opt_;
  std::vector<double> radii_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// int_a^b r^{d-1} dr for 0 <= a <= b.
double shellVolume(double d, double a, double b);

struct ProbeFunction {
  std::string name;
  std::vector<double> values;

  static ProbeFunction constant(const WeightedGrid& g, double c = 1.0);
  /// |x|^{-sigma}.
  static ProbeFunction powerLaw(const WeightedGrid& g, double sigma);
  /// (|x| log |x|)^{-1} for |x| >= 2, zero otherwise.
  static ProbeFunction yLogY(const WeightedGrid& g);
  /// Indicator of lo <= |x| <= hi (one side only when side != 0).
  static ProbeFunction indicator(const WeightedGrid& g, double lo, double hi, int side = 0);
};

/// (sum |f_i|^p w_i)^{1/p}; throws ParameterError for p <= 1.
double lpNorm(const std::vector<double>& f, double p, const WeightedGrid& g);
inline double lpNorm(const ProbeFunction& f, double p, const WeightedGrid& g) {
  return lpNorm(f.values, p, g);
}

}  // namespace radial
