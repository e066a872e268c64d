#pragma once

// Modified Bessel functions of real order and the radial solutions
// k_d, l_d of f'' + ((d-1)/r) f' = f built from them.

#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace radial {

/// Real "dimension" d > 1 of the weight |r|^{d-1} dr.
class Dimension {
 public:
  explicit Dimension(double d);
  double value() const noexcept { return d_; }
  /// Bessel order |d/2 - 1| of k_d.
  double besselOrder() const noexcept { return std::abs(d_ / 2.0 - 1.0); }

 private:
  double d_;
};

/// Coefficient c of an inverse-square potential c/r^2 and the shifted
/// dimension d' = 2 + 2 sqrt((d/2-1)^2 + c).
struct PotentialParams {
  double c = 0.0;
  double dPrime = 0.0;

  /// Throws DomainError unless c > -(d-2)^2/4.
  static PotentialParams make(Dimension d, double c);
};

/// A real value that may be carried as (log|f|, sign) when f would overflow.
class FunValue {
 public:
  FunValue() = default;
  static FunValue plain(double v) noexcept;
  static FunValue fromLog(double logAbs, int sign) noexcept;
  /// value * exp(exponent), stored in log form when the result leaves
  /// double range or when forceLog is set.
  static FunValue scaled(double v, double exponent, bool forceLog) noexcept;

  bool logScaled() const noexcept { return log_; }
  int sign() const noexcept { return sign_; }
  /// Linear value; +-inf or 0 when it does not fit in a double.
  double value() const noexcept;
  double logAbs() const noexcept;

 private:
  double v_ = 0.0;  // linear value, or log|f| when log_
  int sign_ = 0;
  bool log_ = false;
};

namespace specfun {

/// Exponentially scaled I_nu, I_{nu+1}, K_nu, K_{nu+1} at x:
/// i = I e^{-x}, k = K e^{x}. Valid for nu >= -1/2, x > 0.
struct ScaledBessel {
  double i = 0, i1 = 0, k = 0, k1 = 0;
};
ScaledBessel besselScaled(double nu, double x);

struct BesselIK {
  FunValue I, K, Iprime, Kprime;
};
/// I_nu, K_nu and derivatives for nu >= 0, x > 0. Values for x > 30 are
/// returned log-scaled.
BesselIK besselIK(double nu, double x);

/// k, k', l, l' with k, k' multiplied by e^{r} and l, l' by e^{-r}.
struct RadialValues {
  double k = 0, kp = 0, l = 0, lp = 0;
};

/// A, B, C, D multiplied by e^{-2r}.
struct ScaledRatios {
  double A = 0, B = 0, C = 0, D = 0;
};

/// The pair (k, l) for a dimension and an optional inverse-square potential.
/// Without potential, l = r^{1-d/2} I_{d/2-1}(r) and k = r^{1-d/2} K_{|d/2-1|}(r);
/// with potential the order becomes d'/2 - 1.
class RadialBasis {
 public:
  explicit RadialBasis(Dimension d);
  RadialBasis(Dimension d, PotentialParams pot);

  double d() const noexcept { return d_; }
  double dPrime() const noexcept { return dPrime_; }
  bool hasPotential() const noexcept { return potential_; }

  RadialValues scaled(double r) const;
  ScaledRatios scaledRatios(double r) const;

 private:
  double d_;
  double dPrime_;
  double order_;  // Bessel order passed to besselScaled
  bool potential_;
};

struct KL {
  FunValue k, l, kprime, lprime;
};
KL littleKL(Dimension d, double r);
KL littleKLPotential(Dimension d, PotentialParams pot, double r);

struct Ratios {
  FunValue A, B, C, D;
};
Ratios ratios(Dimension d, double r);

/// nu with l k' - k l' = 1 / (nu r^{d-1}); evaluated once at r = 1.
double wronskianConstant(Dimension d);

/// lim_{r->0} A(r) for 1 < d < 2 (zero for d >= 2).
double ratioAtZero(Dimension d);

/// Sign profile of the quantities that keep a fixed sign on (0, inf).
struct SignReport {
  static constexpr std::array<const char*, 8> kNames = {
      "k", "l", "k'", "l'", "A", "B", "D", "r k' + (d-2) k"};
  std::array<int, 8> signs{};
  std::size_t samples = 0;
};
/// Throws PropertyViolation when any quantity changes sign on the grid.
SignReport signProfile(Dimension d);

/// Least-squares slope of log|f| against log r over [r0, r1].
double fitLogLogSlope(const std::vector<double>& r, const std::vector<double>& f);

/// One regime of the small/large-r envelopes: the fitted exponent of a
/// quantity against the predicted one. Large-r fits use the exponentially
/// rescaled quantity (k e^r, l e^{-r}, A e^{-2r}, ...). For d = 2 the
/// logarithmic regimes fit the slope of k and 1/A against log r instead.
struct EnvelopeFit {
  std::string quantity;
  std::string regime;  // "small" or "large"
  double predicted = 0.0;
  double fitted = 0.0;
  double tolerance = 0.02;
  bool pass() const noexcept { return std::abs(fitted - predicted) <= tolerance; }
};
std::vector<EnvelopeFit> envelopeTable(Dimension d);
/// Small-r exponents of k and l with an inverse-square potential.
std::vector<EnvelopeFit> envelopeTablePotential(Dimension d, PotentialParams pot);

}  // namespace specfun
}  // namespace radial
