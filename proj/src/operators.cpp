#include "radial/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "radial/errors.hpp"

namespace radial {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames = {{
    {Family::HalfLineNeumann, "HalfLineNeumann"},
    {Family::HalfLineDirichlet, "HalfLineDirichlet"},
    {Family::RayDirichlet, "RayDirichlet"},
    {Family::RayNeumann, "RayNeumann"},
    {Family::BrokenLine, "BrokenLine"},
    {Family::FullLineDirichlet, "FullLineDirichlet"},
    {Family::HalfLineNeumannISQ, "HalfLineNeumannISQ"},
    {Family::BrokenLineISQ, "BrokenLineISQ"},
    {Family::BrokenLineDelta, "BrokenLineDelta"},
}};

bool isIsq(Family f) { return f == Family::HalfLineNeumannISQ || f == Family::BrokenLineISQ; }

PotentialParams checkedPotential(Family f, Dimension d, double c) {
  if (!isIsq(f)) return {};
  if (!(d.value() > 2.0)) throw ParameterError(std::string(familyName(f)) + " requires d > 2");
  try {
    return PotentialParams::make(d, c);
  } catch (const DomainError& e) {
    throw ParameterError(e.what());
  }
}

specfun::RadialBasis makeBasis(Family f, Dimension d, const PotentialParams& pot) {
  return isIsq(f) ? specfun::RadialBasis(d, pot) : specfun::RadialBasis(d);
}

// Smallest radius used in place of the origin on the full line.
constexpr double kOriginFloor = 1e-200;

}  // namespace

std::string_view familyName(Family f) noexcept {
  for (const auto& [fam, name] : kFamilyNames) {
    if (fam == f) return name;
  }
  return "?";
}

Family parseFamily(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames) {
    if (n == name) return fam;
  }
  throw ParameterError("unknown operator family '" + std::string(name) + "'");
}

OperatorSpec::OperatorSpec(Family family, Dimension d, double param)
    : family_(family),
      d_(d),
      pot_(checkedPotential(family, d, param)),
      a_(family == Family::BrokenLineDelta ? param : 0.0),
      basis_(makeBasis(family, d, pot_)) {
  const double dv = d.value();
  if ((family == Family::HalfLineDirichlet || family == Family::FullLineDirichlet) && !(dv < 2.0)) {
    throw ParameterError(std::string(familyName(family)) + " is only defined for 1 < d < 2");
  }
  if (family == Family::BrokenLineDelta) {
    if (!(dv > 2.0)) throw ParameterError("BrokenLineDelta requires d > 2");
    if (!std::isfinite(a_)) throw ParameterError("delta strength must be finite");
  }
  const auto v = basis_.scaled(1.0);
  sigma_ = -1.0 / (v.l * v.kp - v.k * v.lp);  // l k' - k l' = 1 / nu at r = 1
}

bool OperatorSpec::hasPotential() const noexcept { return isIsq(family_); }

DomainKind OperatorSpec::domain() const noexcept {
  switch (family_) {
    case Family::HalfLineNeumann:
    case Family::HalfLineDirichlet:
    case Family::HalfLineNeumannISQ:
      return DomainKind::HalfLine;
    case Family::RayDirichlet:
    case Family::RayNeumann:
      return DomainKind::Ray;
    case Family::FullLineDirichlet:
      return DomainKind::FullLine;
    default:
      return DomainKind::BrokenLine;
  }
}

double OperatorSpec::innerRadius() const noexcept {
  const auto k = domain();
  return (k == DomainKind::Ray || k == DomainKind::BrokenLine) ? 1.0 : 0.0;
}

bool OperatorSpec::twoSided() const noexcept {
  const auto k = domain();
  return k == DomainKind::BrokenLine || k == DomainKind::FullLine;
}

bool OperatorSpec::contains(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  switch (domain()) {
    case DomainKind::HalfLine:
      return x > 0.0;
    case DomainKind::Ray:
      return x >= 1.0;
    case DomainKind::BrokenLine:
      return std::abs(x) >= 1.0;
    case DomainKind::FullLine:
      return true;
  }
  return false;
}

std::string OperatorSpec::name() const {
  std::ostringstream os;
  os << familyName(family_) << "(d=" << d_.value();
  if (hasPotential()) os << ", c=" << pot_.c;
  if (family_ == Family::BrokenLineDelta) os << ", a=" << a_;
  os << ")";
  return os.str();
}

std::string_view branchName(Branch b) noexcept {
  switch (b) {
    case Branch::Inner:
      return "inner";
    case Branch::Outer:
      return "outer";
    case Branch::Opposite:
      return "opposite";
  }
  return "?";
}

DomainPoint::DomainPoint(const OperatorSpec& op, double x) : x_(x) {
  if (!op.contains(x)) {
    throw DomainError("point " + std::to_string(x) + " is outside the domain of " + op.name());
  }
}

namespace ops {

namespace {

struct Geometry {
  double rx, ry;
  bool same;
  double sgn;  // d|x|/dx
};

Geometry geometry(double x, double y) {
  Geometry g;
  g.rx = std::max(std::abs(x), kOriginFloor);
  g.ry = std::max(std::abs(y), kOriginFloor);
  g.same = (x >= 0.0) == (y >= 0.0);
  g.sgn = x >= 0.0 ? 1.0 : -1.0;
  return g;
}

void checkLambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DomainError("spectral parameter must be positive, got " + std::to_string(lambda));
  }
}

// Denominator -lambda k' + a k / 2 scaled by e^{lambda}, from
// lambda k' + (d-2) k = -lambda^{2-d/2} K_{|d/2-2|}(lambda).
// a/2 + d - 2, snapped to zero at the zero-mode strength a = -2(d-2) so the
// exact cancellation survives rounding in a.
double deltaShift(double d, double a) {
  const double shift = a / 2.0 + d - 2.0;
  return std::abs(shift) <= 8.0 * 2.2e-16 * (std::abs(a) / 2.0 + d) ? 0.0 : shift;
}

double deltaDenominatorScaled(double d, double a, double lambda, double kS) {
  const double kk = specfun::besselScaled(std::abs(d / 2.0 - 2.0), lambda).k;
  return std::pow(lambda, 2.0 - d / 2.0) * kk + deltaShift(d, a) * kS;
}

double deltaDScaled(double d, double a, double lambda) {
  const auto v = specfun::RadialBasis(Dimension(d)).scaled(lambda);
  const double den = deltaDenominatorScaled(d, a, lambda, v.k);
  const double ref = std::pow(lambda, 2.0 - d / 2.0) *
                         specfun::besselScaled(std::abs(d / 2.0 - 2.0), lambda).k +
                     std::abs(deltaShift(d, a)) * v.k;
  if (!(std::abs(den) > 1e-13 * ref)) {
    throw PoleError("delta-potential denominator vanishes at lambda = " + std::to_string(lambda),
                    lambda);
  }
  return std::pow(lambda, 2.0 - d) / (v.k * den);
}

}  // namespace

double kernelSign(const OperatorSpec& op) { return op.sigma(); }

Coupling coupling(const OperatorSpec& op, double lambda) {
  checkLambda(lambda);
  const double d = op.d();
  Coupling c;
  switch (op.family()) {
    case Family::HalfLineNeumann:
    case Family::HalfLineNeumannISQ:
      break;
    case Family::HalfLineDirichlet:
      c.sameScaled = specfun::ratioAtZero(op.dimension());
      break;
    case Family::FullLineDirichlet:
      c.sameScaled = c.crossScaled = specfun::ratioAtZero(op.dimension()) / 2.0;
      break;
    case Family::RayDirichlet:
      c.sameScaled = op.basis().scaledRatios(lambda).A;
      break;
    case Family::RayNeumann:
      c.sameScaled = op.basis().scaledRatios(lambda).B;
      break;
    case Family::BrokenLine:
    case Family::BrokenLineISQ: {
      const auto q = op.basis().scaledRatios(lambda);
      c.sameScaled = q.C / 2.0;
      c.crossScaled = q.D / 2.0;
      break;
    }
    case Family::BrokenLineDelta: {
      const auto q = op.basis().scaledRatios(lambda);
      const double da = deltaDScaled(d, op.a(), lambda);
      c.sameScaled = q.A - da / 2.0;
      c.crossScaled = da / 2.0;
      break;
    }
  }
  return c;
}

ResolventEval resolventKernel(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y) {
  checkLambda(lambda);
  const auto g = geometry(x.x(), y.x());
  const auto& basis = op.basis();
  const auto vx = basis.scaled(lambda * g.rx);
  const auto vy = basis.scaled(lambda * g.ry);
  const auto cp = coupling(op, lambda);
  const double r0 = op.innerRadius();
  const double pre = kernelSign(op) * std::pow(lambda, op.d() - 2.0);
  const double kk = vx.k * vy.k * std::exp(-lambda * (g.rx + g.ry - 2.0 * r0));

  ResolventEval out;
  out.lambda = lambda;
  if (!g.same) {
    out.branch = Branch::Opposite;
    out.value = pre * cp.crossScaled * kk;
    return out;
  }
  double base;
  if (g.rx <= g.ry) {
    out.branch = Branch::Inner;
    base = vy.k * vx.l * std::exp(-lambda * (g.ry - g.rx));
  } else {
    out.branch = Branch::Outer;
    base = vx.k * vy.l * std::exp(-lambda * (g.rx - g.ry));
  }
  out.value = pre * (base - cp.sameScaled * kk);
  return out;
}

Eigen::MatrixXd resolventMatrix(const OperatorSpec& op, double lambda,
                                const std::vector<double>& points) {
  checkLambda(lambda);
  const std::size_t n = points.size();
  std::vector<specfun::RadialValues> v(n);
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    DomainPoint(op, points[i]);
    rho[i] = std::max(std::abs(points[i]), kOriginFloor);
    v[i] = op.basis().scaled(lambda * rho[i]);
  }
  const auto cp = coupling(op, lambda);
  const double r0 = op.innerRadius();
  const double pre = kernelSign(op) * std::pow(lambda, op.d() - 2.0);
  Eigen::MatrixXd K(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const double kk = v[i].k * v[j].k * std::exp(-lambda * (rho[i] + rho[j] - 2.0 * r0));
      double val;
      if ((points[i] >= 0.0) != (points[j] >= 0.0)) {
        val = pre * cp.crossScaled * kk;
      } else {
        const auto& in = rho[i] <= rho[j] ? v[i] : v[j];
        const auto& out = rho[i] <= rho[j] ? v[j] : v[i];
        val = pre * (out.k * in.l * std::exp(-lambda * std::abs(rho[i] - rho[j])) -
                     cp.sameScaled * kk);
      }
      K(i, j) = K(j, i) = val;
    }
  }
  return K;
}

double dxResolventKernel(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y) {
  checkLambda(lambda);
  const auto g = geometry(x.x(), y.x());
  if (g.same && std::abs(g.rx - g.ry) <= 1e-12 * (g.rx + g.ry)) {
    throw DiagonalError("x-derivative of the resolvent kernel jumps on the diagonal");
  }
  const auto& basis = op.basis();
  const auto vx = basis.scaled(lambda * g.rx);
  const auto vy = basis.scaled(lambda * g.ry);
  const auto cp = coupling(op, lambda);
  const double r0 = op.innerRadius();
  const double pre = g.sgn * kernelSign(op) * std::pow(lambda, op.d() - 1.0);
  const double kk = vx.kp * vy.k * std::exp(-lambda * (g.rx + g.ry - 2.0 * r0));
  if (!g.same) return pre * cp.crossScaled * kk;
  const double base = g.rx < g.ry ? vy.k * vx.lp * std::exp(-lambda * (g.ry - g.rx))
                                  : vx.kp * vy.l * std::exp(-lambda * (g.rx - g.ry));
  return pre * (base - cp.sameScaled * kk);
}

double rankOneCorrection(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y) {
  checkLambda(lambda);
  const auto g = geometry(x.x(), y.x());
  const auto cp = coupling(op, lambda);
  const double coef = g.same ? -cp.sameScaled : cp.crossScaled;
  if (coef == 0.0) return 0.0;
  const auto vx = op.basis().scaled(lambda * g.rx);
  const auto vy = op.basis().scaled(lambda * g.ry);
  const double kk = vx.k * vy.k * std::exp(-lambda * (g.rx + g.ry - 2.0 * op.innerRadius()));
  return kernelSign(op) * std::pow(lambda, op.d() - 2.0) * coef * kk;
}

double dxRankOneCorrection(const OperatorSpec& op, double lambda, DomainPoint x, DomainPoint y) {
  checkLambda(lambda);
  const auto g = geometry(x.x(), y.x());
  const auto cp = coupling(op, lambda);
  const double coef = g.same ? -cp.sameScaled : cp.crossScaled;
  if (coef == 0.0) return 0.0;
  const auto vx = op.basis().scaled(lambda * g.rx);
  const auto vy = op.basis().scaled(lambda * g.ry);
  const double kk = vx.kp * vy.k * std::exp(-lambda * (g.rx + g.ry - 2.0 * op.innerRadius()));
  return g.sgn * kernelSign(op) * std::pow(lambda, op.d() - 1.0) * coef * kk;
}

FunValue deltaPotentialD(Dimension d, double a, double lambda) {
  checkLambda(lambda);
  const double ds = deltaDScaled(d.value(), a, lambda);
  return FunValue::scaled(ds, 2.0 * lambda, lambda >= 1.0);
}

bool deltaZeroMode(Dimension d, double a) { return deltaShift(d.value(), a) == 0.0; }

std::optional<double> deltaPole(Dimension d, double a) {
  const double dv = d.value();
  if (!(a / 2.0 < -std::max(dv - 2.0, 0.0))) return std::nullopt;
  const specfun::RadialBasis basis(d);
  // q(lambda) = den / k increases from a/2 + max(d-2, 0) to +inf.
  auto q = [&](double lam) {
    const double kS = basis.scaled(lam).k;
    return deltaDenominatorScaled(dv, a, lam, kS) / kS;
  };
  double lo = 1e-12, hi = 1.0;
  while (q(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  if (q(lo) > 0.0) {
    lo = 1e-300;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = lo < 1e-100 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    (q(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ops
}  // namespace radial
