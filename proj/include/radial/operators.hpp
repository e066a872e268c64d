#pragma once

// Self-adjoint operators on weighted lines and their exact resolvent kernels
// K_{(L + lambda^2)^{-1}}(x, y) with respect to the measure |y|^{d-1} dy.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "radial/specfun.hpp"

namespace radial {

enum class Family {
  HalfLineNeumann,
  HalfLineDirichlet,
  RayDirichlet,
  RayNeumann,
  BrokenLine,
  FullLineDirichlet,
  HalfLineNeumannISQ,
  BrokenLineISQ,
  BrokenLineDelta,
};

std::string_view familyName(Family f) noexcept;
/// Throws ParameterError on an unknown name.
Family parseFamily(std::string_view name);

enum class DomainKind { HalfLine, Ray, BrokenLine, FullLine };

class OperatorSpec {
 public:
  /// `param` is the inverse-square coefficient c for the ISQ families and the
  /// junction strength a for BrokenLineDelta; ignored otherwise.
  /// Throws ParameterError for disallowed (family, d, param) combinations.
  OperatorSpec(Family family, Dimension d, double param = 0.0);

  Family family() const noexcept { return family_; }
  Dimension dimension() const noexcept { return d_; }
  double d() const noexcept { return d_.value(); }
  double c() const noexcept { return pot_.c; }
  double a() const noexcept { return a_; }
  const PotentialParams& potential() const noexcept { return pot_; }
  bool hasPotential() const noexcept;

  DomainKind domain() const noexcept;
  /// 0 for half/full lines, 1 for rays and broken lines.
  double innerRadius() const noexcept;
  bool twoSided() const noexcept;
  bool contains(double x) const noexcept;
  std::string name() const;

  const specfun::RadialBasis& basis() const noexcept { return basis_; }
  /// -nu, the sign in front of every resolvent kernel formula.
  double sigma() const noexcept { return sigma_; }

 private:
  Family family_;
  Dimension d_;
  PotentialParams pot_{};
  double a_ = 0.0;
  specfun::RadialBasis basis_;
  double sigma_ = 1.0;
};

enum class Branch { Inner, Outer, Opposite };
std::string_view branchName(Branch b) noexcept;

/// A point checked against an operator's domain.
class DomainPoint {
 public:
  DomainPoint(const OperatorSpec& op, double x);
  double x() const noexcept { return x_; }

 private:
  double x_;
};

struct ResolventEval {
  double value = 0.0;
  double lambda = 0.0;
  Branch branch = Branch::Inner;
};

namespace ops {

/// The kernel prefactor sigma = -nu, nu the Wronskian constant of the basis.
double kernelSign(const OperatorSpec& op);

/// Coupling coefficients of the shared kernel template
///   same side:  sigma lambda^{d-2} [k(l rho_>) l(l rho_<) - G k(l rho_x) k(l rho_y)]
///   across:     sigma lambda^{d-2} H k(l rho_x) k(l rho_y)
/// both multiplied by e^{-2 lambda r0}, r0 the inner radius.
struct Coupling {
  double sameScaled = 0.0;
  double crossScaled = 0.0;
};
Coupling coupling(const OperatorSpec& op, double lambda);

ResolventEval resolventKernel(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y);
double dxResolventKernel(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y);
/// K_op - K_baseline, the "kk" part; zero for HalfLineNeumann.
double rankOneCorrection(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y);
double dxRankOneCorrection(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y);

/// Kernel values K(points_i, points_j) at one lambda (points need not be
/// distinct from each other; the kernel is continuous on the diagonal).
Eigen::MatrixXd resolventMatrix(const OperatorSpec& op, double lambda,
                                const std::vector<double>& points);

/// D_a(lambda) = lambda^{2-d} / (k(lambda) (-lambda k'(lambda) + a k(lambda)/2)).
/// Throws PoleError when the denominator vanishes at lambda.
FunValue deltaPotentialD(Dimension d, double a, double lambda);
/// True when a = -2(d-2) up to rounding: D_a then blows up like lambda^{d-4}
/// at 0 and, for d > 4, the operator has the L^2 zero mode |x|^{2-d}.
bool deltaZeroMode(Dimension d, double a);
/// The unique lambda* > 0 where that denominator vanishes (a < -2(d-2)).
std::optional<double> deltaPole(Dimension d, double a);

}  // namespace ops
}  // namespace radial
