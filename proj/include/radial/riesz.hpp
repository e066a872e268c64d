#pragma once

// Riesz-transform kernels K_{grad L^{-1/2}}(x, y) obtained by integrating the
// x-derivative of the resolvent kernel over the spectral parameter.

#include <vector>

#include "radial/operators.hpp"
#include "radial/specfun.hpp"

namespace radial {

/// Panel layout for integrals over lambda in (0, inf). The integral is split
/// at 1 / min(|x|, |y|); below the split, panels shrink geometrically toward
/// 0, above it they grow until they reach `tailWidth / rate` (rate being the
/// exponential decay rate of the integrand) and continue at that width until
/// `truncation / rate` past the split.
struct QuadratureScheme {
  int smallPanels = 40;
  double ratio = 2.0;
  double tailWidth = 2.0;
  double truncation = 60.0;
  double cNorm = 2.0;

  /// Twice as many panels in both regions.
  QuadratureScheme refined() const;
};

struct KernelEval {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  Branch branch = Branch::Inner;
};

namespace riesz {

/// (cNorm / pi) int_0^inf d/dx K_{(L + lambda^2)^{-1}}(x, y) d lambda.
/// Throws DiagonalError when |x - y| < 1e-6 (|x| + |y|) on the same side and
/// PoleError for a delta strength with a negative eigenvalue.
KernelEval rieszKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s = {});

/// Only the rank-one ("kk") part of the resolvent.
KernelEval kkRieszKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s = {});

/// The remaining k(l rho_>) l(l rho_<) part, i.e. rieszKernel - kkRieszKernel.
KernelEval baselineRieszKernel(const OperatorSpec& op, double x, double y,
                               const QuadratureScheme& s = {});

/// b = lim lambda^{d-1} l(lambda) k(lambda), so that the Riesz kernel behaves
/// like -(cNorm / pi) b y^{1-d} / (x - y) near the diagonal.
struct DiagonalConstant {
  double b = 0.0;
  double atLow = 0.0;   // lambda = 200, extrapolated
  double atHigh = 0.0;  // lambda = 400, extrapolated
};
DiagonalConstant diagonalConstant(Dimension d);

/// u(s) = x^{d/p} K(x, y) y^{d - d/p} at x / y = e^s, for homogeneous
/// half-line operators (the kernel is then y^{-d} Phi(x / y)).
struct ConvolutionProfile {
  double d = 0.0;
  double p = 0.0;
  std::vector<double> s;
  std::vector<double> u;
};
/// Throws ParameterError for families without homogeneity and DiagonalError
/// for s == 0.
ConvolutionProfile convolutionProfile(const OperatorSpec& op, double p,
                                      const std::vector<double>& sGrid,
                                      const QuadratureScheme& scheme = {});

/// Open p-interval on which a kernel bounded by x^{-alpha} y^{-beta} (x <= y)
/// and x^{-alphaP} y^{-betaP} (x > y) is asserted to act boundedly on
/// L^p([1, inf), r^{d-1} dr): (d / min(d, alpha), d / max(0, d - beta)).
struct PInterval {
  double lo = 1.0;
  double hi = 0.0;  // +inf when unbounded above
  bool contains(double p) const noexcept { return p > lo && p < hi; }
};
/// Throws ParameterError unless alpha + beta > d and alphaP + betaP > d.
PInterval kernelBoundPredictor(double alpha, double beta, double alphaP, double betaP, double d);

/// Delta family at the zero-mode strength a = -2(d-2), d > 4: the coefficient
/// c with lambda-integrand ~ c lambda^{-2} sgn(x) |x|^{1-d} |y|^{2-d} as
/// lambda -> 0, measured at (x, y) by extrapolation.
double projectedPoleCoefficient(Dimension d, double x, double y);

/// Riesz kernel of the delta-family operator composed with the projection
/// onto the complement of its zero mode |x|^{2-d} (kk part only). Throws
/// PropertyViolation if the measured pole coefficients at (x, y) and a
/// reference point disagree by more than 1e-6 relative.
KernelEval projectedRieszKernel(Dimension d, double x, double y, const QuadratureScheme& s = {});

/// The kernel whose decay decides L^p boundedness: the full kernel for the
/// Neumann half-line families, the projected kernel for the delta family at
/// its zero-mode strength, the kk part otherwise.
KernelEval decisiveKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s = {});

/// Power-law envelope exponents of decisiveKernel in x and in y, in the
/// regimes x << y and x >> y, set against the stated envelopes. Each slope is
/// fitted over one decade with 10 samples (x in [10, 100] at y = 1e5 and so
/// on). For the broken line at d = 2 the x << y fit in y is of
/// K(x, y) log(2y), matching the stated y^{-1} (log 2y)^{-1}. Empty for
/// families without a stated envelope (the Neumann ray).
std::vector<specfun::EnvelopeFit> kernelEnvelopeFits(const OperatorSpec& op,
                                                     const QuadratureScheme& s = {});

}  // namespace riesz
}  // namespace radial
