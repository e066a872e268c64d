#include "radial/riesz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "radial/errors.hpp"
#include "radial/quadrature.hpp"

namespace radial {

QuadratureScheme QuadratureScheme::refined() const {
  QuadratureScheme s = *this;
  s.smallPanels = 2 * smallPanels;
  s.ratio = std::sqrt(ratio);
  s.tailWidth = tailWidth / 2.0;
  return s;
}

namespace riesz {

namespace {

enum class Part { Full, KK, Baseline };

// Panel breakpoints for (lambdaMin, split] and [split, split + truncation / rate].
std::vector<double> lambdaBreaks(double split, double rate, const QuadratureScheme& s,
                                 double lambdaMin = 0.0) {
  std::vector<double> b;
  for (int j = s.smallPanels; j >= 1; --j) {
    const double v = split * std::pow(s.ratio, -j);
    if (v > lambdaMin) b.push_back(v);
  }
  if (lambdaMin > 0.0 && (b.empty() || b.front() > lambdaMin)) b.insert(b.begin(), lambdaMin);
  b.push_back(split);
  const double maxWidth = s.tailWidth / rate;
  const double end = s.truncation / rate;
  double w = std::min(split * (s.ratio - 1.0), maxWidth);
  double t = 0.0;
  while (t < end) {
    t += w;
    b.push_back(split + t);
    w = std::min(w * s.ratio, maxWidth);
  }
  return b;
}

void checkPoints(const OperatorSpec& op, double x, double y) {
  DomainPoint(op, x);
  DomainPoint(op, y);
  if (op.family() == Family::BrokenLineDelta) {
    if (ops::deltaZeroMode(op.dimension(), op.a())) {
      throw ParameterError("delta strength a = -2(d-2): the lambda integral diverges at 0; "
                           "use the projected kernel");
    }
    if (auto pole = ops::deltaPole(op.dimension(), op.a())) {
      throw PoleError("delta-potential operator has a negative eigenvalue; resolvent pole at "
                      "lambda = " + std::to_string(*pole),
                      *pole);
    }
  }
}

struct Setup {
  double split;
  double rate;
  Branch branch;
};

Setup setup(const OperatorSpec& op, double x, double y, Part part) {
  const double rx = std::abs(x), ry = std::abs(y);
  const bool same = (x >= 0.0) == (y >= 0.0);
  const double r0 = op.innerRadius();
  Setup s;
  s.split = 1.0 / std::max(std::min(rx, ry), 1e-300);
  s.branch = !same ? Branch::Opposite : (rx <= ry ? Branch::Inner : Branch::Outer);
  const double kkRate = rx + ry - 2.0 * r0;
  const double baseRate = std::abs(rx - ry);
  const bool hasKK = op.family() != Family::HalfLineNeumann &&
                     op.family() != Family::HalfLineNeumannISQ;
  const bool hasBase = same && part != Part::KK;
  if (hasBase && baseRate < 1e-6 * (rx + ry)) {
    throw DiagonalError("Riesz kernel requested too close to the diagonal");
  }
  double rate = std::numeric_limits<double>::infinity();
  if (hasBase) rate = baseRate;
  if (hasKK && part != Part::Baseline) rate = std::min(rate, kkRate);
  if (!(rate > 1e-9 * (rx + ry))) {
    throw DiagonalError("kernel integrand does not decay in lambda at this point");
  }
  s.rate = rate;
  return s;
}

KernelEval integrate(const OperatorSpec& op, double x, double y, const QuadratureScheme& scheme,
                     Part part) {
  checkPoints(op, x, y);
  const auto st = setup(op, x, y, part);
  const DomainPoint px(op, x), py(op, y);
  auto f = [&](double lam) -> double {
    switch (part) {
      case Part::Full:
        return ops::dxResolventKernel(op, lam, px, py);
      case Part::KK:
        return ops::dxRankOneCorrection(op, lam, px, py);
      case Part::Baseline:
        return ops::dxResolventKernel(op, lam, px, py) - ops::dxRankOneCorrection(op, lam, px, py);
    }
    return 0.0;
  };
  const auto breaks = lambdaBreaks(st.split, st.rate, scheme);
  const auto est = quad::panels(f, breaks);
  const double tail = std::abs(quad::gk15(f, breaks[breaks.size() - 2], breaks.back()).value);
  if (std::isfinite(est.value) && tail > 1e-8 * std::abs(est.value) && tail > 1e-300) {
    throw ConvergenceError("lambda integrand has not decayed at the truncation point");
  }
  if (!std::isfinite(est.value)) throw ConvergenceError("non-finite Riesz kernel quadrature");
  const double pre = scheme.cNorm / std::numbers::pi;
  KernelEval out;
  out.value = pre * est.value;
  out.error = pre * est.error;
  out.evaluations = est.evaluations;
  out.branch = st.branch;
  return out;
}

}  // namespace

KernelEval rieszKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s) {
  return integrate(op, x, y, s, Part::Full);
}

KernelEval kkRieszKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s) {
  return integrate(op, x, y, s, Part::KK);
}

KernelEval baselineRieszKernel(const OperatorSpec& op, double x, double y,
                               const QuadratureScheme& s) {
  return integrate(op, x, y, s, Part::Baseline);
}

DiagonalConstant diagonalConstant(Dimension d) {
  const specfun::RadialBasis basis(d);
  auto f = [&](double lam) {
    const auto v = basis.scaled(lam);
    return std::pow(lam, d.value() - 1.0) * v.l * v.k;
  };
  // f = b + c / lambda^2 + ...
  auto richardson = [&](double lam) { return (4.0 * f(2.0 * lam) - f(lam)) / 3.0; };
  DiagonalConstant out;
  out.atLow = richardson(200.0);
  out.atHigh = richardson(400.0);
  out.b = out.atHigh;
  return out;
}

ConvolutionProfile convolutionProfile(const OperatorSpec& op, double p,
                                      const std::vector<double>& sGrid,
                                      const QuadratureScheme& scheme) {
  const auto f = op.family();
  if (f != Family::HalfLineNeumann && f != Family::HalfLineDirichlet &&
      f != Family::HalfLineNeumannISQ) {
    throw ParameterError(op.name() + " has no convolution profile (not homogeneous)");
  }
  if (!(p > 1.0)) throw ParameterError("profile exponent p must exceed 1");
  ConvolutionProfile out;
  out.d = op.d();
  out.p = p;
  out.s = sGrid;
  out.u.reserve(sGrid.size());
  for (double s : sGrid) {
    if (s == 0.0) throw DiagonalError("convolution profile is singular at s = 0");
    out.u.push_back(std::exp(s * op.d() / p) * rieszKernel(op, std::exp(s), 1.0, scheme).value);
  }
  return out;
}

PInterval kernelBoundPredictor(double alpha, double beta, double alphaP, double betaP, double d) {
  if (!(d > 0.0) || !(alpha + beta > d) || !(alphaP + betaP > d)) {
    throw ParameterError("kernel bound predictor needs alpha + beta > d and alpha' + beta' > d");
  }
  PInterval out;
  out.lo = d / std::min(d, alpha);
  const double den = std::max(0.0, d - beta);
  out.hi = den == 0.0 ? std::numeric_limits<double>::infinity() : d / den;
  return out;
}

namespace {

double scaledPoleIntegrand(const OperatorSpec& op, double lam, double x, double y) {
  const double d = op.d();
  const double v = ops::dxRankOneCorrection(op, lam, DomainPoint(op, x), DomainPoint(op, y));
  const double sgn = x >= 0.0 ? 1.0 : -1.0;
  return lam * lam * v * sgn * std::pow(std::abs(x), d - 1.0) * std::pow(std::abs(y), d - 2.0);
}

OperatorSpec zeroModeOperator(Dimension d) {
  if (!(d.value() > 4.0)) throw ParameterError("the delta zero mode needs d > 4");
  return OperatorSpec(Family::BrokenLineDelta, d, -2.0 * (d.value() - 2.0));
}

}  // namespace

double projectedPoleCoefficient(Dimension d, double x, double y) {
  const auto op = zeroModeOperator(d);
  const double lam = 1e-7 / std::max(std::abs(x), std::abs(y));
  // g(lambda) = c + O(lambda); linear extrapolation from lambda, lambda/2
  return 2.0 * scaledPoleIntegrand(op, lam / 2.0, x, y) - scaledPoleIntegrand(op, lam, x, y);
}

KernelEval projectedRieszKernel(Dimension d, double x, double y, const QuadratureScheme& scheme) {
  const auto op = zeroModeOperator(d);
  DomainPoint(op, x);
  DomainPoint(op, y);
  const double cRef = projectedPoleCoefficient(d, 2.0, 3.0);
  const double cHere = projectedPoleCoefficient(d, x, y);
  if (std::abs(cHere - cRef) > 1e-6 * std::abs(cRef)) {
    throw PropertyViolation("lambda^{-2} coefficients of the delta kernel do not match");
  }
  const double dv = d.value();
  const double rx = std::abs(x), ry = std::abs(y);
  const double sgn = x >= 0.0 ? 1.0 : -1.0;
  const double pole = cRef * sgn * std::pow(rx, 1.0 - dv) * std::pow(ry, 2.0 - dv);
  const DomainPoint px(op, x), py(op, y);
  auto f = [&](double lam) {
    return ops::dxRankOneCorrection(op, lam, px, py) - pole / (lam * lam);
  };
  const double split = 1.0 / std::min(rx, ry);
  const double rate = rx + ry - 2.0;
  if (!(rate > 0.0)) throw DiagonalError("projected kernel integrand does not decay at x = y = 1");
  // Below lambdaMin the remainder is O(1) in lambda; rounding in the
  // subtraction grows like lambda^{-2}, so stop there and add f(lambdaMin) lambdaMin.
  const double lambdaMin = 1e-4 * split;
  const auto breaks = lambdaBreaks(split, rate, scheme, lambdaMin);
  auto est = quad::panels(f, breaks);
  const double head = f(lambdaMin) * lambdaMin;
  est.value += head;
  est.error += std::abs(head) * 1e-2;
  // Tail beyond the truncation: only the subtracted pole term survives there.
  est.value -= pole / breaks.back();
  const double pre = scheme.cNorm / std::numbers::pi;
  KernelEval out;
  out.value = pre * est.value;
  out.error = pre * est.error;
  out.evaluations = est.evaluations + 1;
  out.branch = (x >= 0.0) == (y >= 0.0) ? (rx <= ry ? Branch::Inner : Branch::Outer)
                                        : Branch::Opposite;
  return out;
}

KernelEval decisiveKernel(const OperatorSpec& op, double x, double y, const QuadratureScheme& s) {
  const auto f = op.family();
  if (f == Family::HalfLineNeumann || f == Family::HalfLineNeumannISQ) {
    return rieszKernel(op, x, y, s);
  }
  if (f == Family::BrokenLineDelta && ops::deltaZeroMode(op.dimension(), op.a())) {
    return projectedRieszKernel(op.dimension(), x, y, s);
  }
  return kkRieszKernel(op, x, y, s);
}

std::vector<specfun::EnvelopeFit> kernelEnvelopeFits(const OperatorSpec& op,
                                                     const QuadratureScheme& s) {
  const double d = op.d();
  const auto f = op.family();
  // stated exponents: {x << y: in x, in y}, {x >> y: in x, in y}
  std::array<double, 4> e{};
  switch (f) {
    case Family::HalfLineNeumann:
      e = {1.0, -d - 1.0, -d, 0.0};
      break;
    case Family::HalfLineNeumannISQ: {
      const double sh = (op.potential().dPrime - d) / 2.0;
      e = {-1.0 + sh, 1.0 - d - sh, -d - sh, sh};
      break;
    }
    case Family::HalfLineDirichlet:
    case Family::FullLineDirichlet:
      e = {1.0 - d, -1.0, -d, 0.0};
      break;
    case Family::BrokenLine:
    case Family::RayDirichlet:
      if (d > 2.0) {
        e = {1.0 - d, 1.0 - d, -d, 2.0 - d};
      } else {
        e = {-1.0, -1.0, -2.0, 0.0};
      }
      break;
    case Family::BrokenLineISQ: {
      const double m = (d + op.potential().dPrime) / 2.0;
      e = {1.0 - m, 1.0 - m, -m, 2.0 - m};
      break;
    }
    case Family::BrokenLineDelta:
      if (ops::deltaZeroMode(op.dimension(), op.a())) {
        e = {2.0 - d, 2.0 - d, 1.0 - d, 3.0 - d};
      } else {
        e = {1.0 - d, 1.0 - d, -d, 2.0 - d};
      }
      break;
    case Family::RayNeumann:
      return {};
  }
  const bool logY = (f == Family::BrokenLine || f == Family::RayDirichlet) && d == 2.0;

  auto fit = [&](bool inX, double fixed, double lo, bool withLog) {
    std::vector<double> r, v;
    for (int j = 0; j < 10; ++j) {
      const double t = lo * std::pow(10.0, j / 9.0);
      const double x = inX ? t : fixed;
      const double y = inX ? fixed : t;
      double k = decisiveKernel(op, x, y, s).value;
      if (withLog) k *= std::log(2.0 * y);
      r.push_back(t);
      v.push_back(k);
    }
    return specfun::fitLogLogSlope(r, v);
  };
  std::vector<specfun::EnvelopeFit> out;
  out.push_back({"x-slope", "x<<y", e[0], fit(true, 1e5, 10.0, false), 0.05});
  out.push_back({"y-slope", "x<<y", e[1], fit(false, 10.0, 1e3, logY), 0.05});
  out.push_back({"x-slope", "x>>y", e[2], fit(true, 2.0, 1e3, false), 0.05});
  out.push_back({"y-slope", "x>>y", e[3], fit(false, 1e5, 10.0, false), 0.05});
  return out;
}

}  // namespace riesz
}  // namespace radial
