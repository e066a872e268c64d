#include "radial/scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "radial/discretize.hpp"
#include "radial/errors.hpp"

namespace radial {

std::string_view verdictName(Verdict v) noexcept {
  switch (v) {
    case Verdict::Bounded:
      return "bounded";
    case Verdict::Divergent:
      return "divergent";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

Verdict parseVerdict(std::string_view s) {
  if (s == "bounded") return Verdict::Bounded;
  if (s == "divergent") return Verdict::Divergent;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw ParameterError("unknown verdict '" + std::string(s) + "'");
}

double diagonalCutoff(double s) {
  const double a = std::abs(s);
  if (a <= 0.5) return 1.0;
  if (a >= 1.0) return 0.0;
  // smooth step built from exp(-1/t)
  auto g = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double t = (1.0 - a) / 0.5;
  return g(t) / (g(t) + g(1.0 - t));
}

ScanKernelBuilder::ScanKernelBuilder(OperatorSpec op, ScanSettings settings)
    : op_(std::move(op)), settings_(std::move(settings)) {
  if (settings_.projected) {
    if (op_.family() != Family::BrokenLineDelta || !ops::deltaZeroMode(op_.dimension(), op_.a()) ||
        !(op_.d() > 4.0)) {
      throw ParameterError("projected scans need the delta family with a = -2(d-2), d > 4");
    }
  } else if (op_.family() == Family::BrokenLineDelta) {
    if (ops::deltaZeroMode(op_.dimension(), op_.a())) {
      throw ParameterError("delta strength a = -2(d-2) needs a projected scan");
    }
    if (auto pole = ops::deltaPole(op_.dimension(), op_.a())) {
      throw PoleError("delta-potential operator has a negative eigenvalue", *pole);
    }
  }
}

WeightedGrid ScanKernelBuilder::grid(double R) const {
  GridOptions o;
  o.perDecade = settings_.perDecade;
  o.innerCut = settings_.innerCut;
  o.origin = false;
  return WeightedGrid(op_.domain(), op_.dimension(), R, o);
}

std::unique_ptr<GridOperator> ScanKernelBuilder::build(const WeightedGrid& grid) {
  if (grid.domain() != op_.domain()) throw ParameterError("grid does not match " + op_.name());
  const auto f = op_.family();
  if (f == Family::HalfLineNeumann || f == Family::HalfLineNeumannISQ) return buildToeplitz(grid);
  return buildLowRank(grid);
}

double ScanKernelBuilder::remainderProfile(int k) {
  if (k == 0) return 0.0;
  if (auto it = profile_.find(k); it != profile_.end()) return it->second;
  const double h = std::log(10.0) / settings_.perDecade;
  QuadratureScheme scheme;
  scheme.cNorm = settings_.cNorm;
  const double s = k * h;
  const double phi = riesz::rieszKernel(op_, std::exp(s), 1.0, scheme).value;
  const double b = riesz::diagonalConstant(op_.dimension()).b;
  const double v = phi + settings_.cNorm / std::numbers::pi * b * diagonalCutoff(s) / std::expm1(s);
  profile_.emplace(k, v);
  return v;
}

std::unique_ptr<GridOperator> ScanKernelBuilder::buildToeplitz(const WeightedGrid& grid) {
  const auto& r = grid.radii();
  const int n = static_cast<int>(r.size());
  const double h = std::log(10.0) / settings_.perDecade;
  if (std::abs(std::log(r[1] / r[0]) - h) > 1e-9 * h) {
    throw ParameterError("Toeplitz scan kernels need R / innerCut to be a power of 10");
  }
  std::vector<double> psi(2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k) psi[k + n - 1] = remainderProfile(k);
  Eigen::MatrixXd T(n, n);
  const double d = op_.d();
  for (int j = 0; j < n; ++j) {
    const double yd = std::pow(r[j], -d);
    for (int i = 0; i < n; ++i) T(i, j) = yd * psi[i - j + n - 1];
  }
  return std::make_unique<DenseGridOperator>(std::move(T), grid.weights());
}

std::unique_ptr<GridOperator> ScanKernelBuilder::buildLowRank(const WeightedGrid& grid) {
  const auto& x = grid.nodes();
  const auto& radii = grid.radii();
  const auto n = static_cast<Eigen::Index>(x.size());
  const double d = op_.d();
  const double r0 = op_.innerRadius();
  const double R = grid.R();
  const double lamMin = (settings_.projected ? 1e-4 : 1e-6) / R;
  const double lamMax = 30.0 / (radii[1] - r0);
  const double ht = settings_.logLambdaStep;
  const int M = static_cast<int>(std::ceil(std::log(lamMax / lamMin) / ht)) + 1;
  const double pre = settings_.cNorm / std::numbers::pi * op_.sigma();

  Eigen::MatrixXd U(n, M), V(n, M);
  Eigen::VectorXd alpha(M), beta(M), side(n);
  for (Eigen::Index i = 0; i < n; ++i) side[i] = x[i] >= 0.0 ? 1.0 : -1.0;
  // dual cell of each node in |x|, used to cell-average the exponential factor
  Eigen::VectorXd lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double rho = std::abs(x[i]);
    const auto it = std::lower_bound(radii.begin(), radii.end(), rho * (1.0 - 1e-12));
    const auto j = static_cast<std::size_t>(it - radii.begin());
    lo[i] = j == 0 ? radii[0] : 0.5 * (radii[j - 1] + radii[j]);
    hi[i] = j + 1 == radii.size() ? radii[j] : 0.5 * (radii[j] + radii[j + 1]);
  }
  double poleSum = 0.0;
  for (int m = 0; m < M; ++m) {
    const double lam = lamMin * std::exp(m * ht);
    // trapezoid weights in t = log(lambda), halved at both ends
    const double wt = (m == 0 || m == M - 1 ? 0.5 : 1.0) * ht * lam;
    const auto cp = ops::coupling(op_, lam);
    const double a = pre * wt * std::pow(lam, d - 1.0);
    alpha[m] = a * (cp.crossScaled - cp.sameScaled) / 2.0;
    beta[m] = a * (-cp.sameScaled - cp.crossScaled) / 2.0;
    poleSum += wt / (lam * lam);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double rho = std::abs(x[i]);
      const auto v = op_.basis().scaled(lam * rho);
      const double t = lam * (hi[i] - lo[i]);
      const double e = t > 1e-6 ? std::exp(-lam * (lo[i] - r0)) * -std::expm1(-t) / t
                                : std::exp(-lam * (rho - r0));
      U(i, m) = side[i] * v.kp * e;
      V(i, m) = v.k * e;
    }
  }
  auto out = std::make_unique<LowRankGridOperator>(std::move(U), std::move(V), std::move(alpha),
                                                   std::move(beta), side, grid.weights());
  if (settings_.projected) {
    const double c = riesz::projectedPoleCoefficient(op_.dimension(), 2.0, 3.0);
    Eigen::VectorXd P(n), Q(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      P[i] = side[i] * std::pow(std::abs(x[i]), 1.0 - d);
      Q[i] = std::pow(std::abs(x[i]), 2.0 - d);
    }
    const double lamTop = lamMin * std::exp((M - 1) * ht);
    out->addRankOne(std::move(P), std::move(Q),
                    -settings_.cNorm / std::numbers::pi * c * (poleSum + 1.0 / lamTop));
  }
  return out;
}

namespace {

constexpr std::size_t kElasticityWindow = 4;

double lsSlope(const std::vector<double>& x, const std::vector<double>& y, std::size_t from) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size() - from);
  for (std::size_t i = from; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

GrowthFit classifyGrowth(const std::vector<double>& R, const std::vector<double>& est,
                         double innerScale, const GrowthRule& rule) {
  const std::size_t n = R.size();
  if (n < 2 || est.size() != n) throw ParameterError("growth fit needs at least two truncations");
  std::vector<double> lr(n), le(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(R[i] > innerScale) || !(est[i] > 0.0)) {
      throw ParameterError("growth fit needs R > inner scale and positive estimates");
    }
    lr[i] = std::log10(R[i]);
    le[i] = std::log(est[i]);
  }
  GrowthFit g;
  g.slope = lsSlope(lr, le, 0);
  g.tailSlope = lsSlope(lr, le, n >= 3 ? n - 3 : 0);
  g.monotone = true;
  for (std::size_t i = 1; i < n; ++i) g.monotone = g.monotone && est[i] > est[i - 1];

  g.elasticity = std::numeric_limits<double>::quiet_NaN();
  if (g.monotone && n >= 3) {
    std::vector<double> lx, ly;
    for (std::size_t i = 1; i < n; ++i) {
      const double l0 = std::log(std::log(R[i - 1] / innerScale));
      const double l1 = std::log(std::log(R[i] / innerScale));
      lx.push_back(0.5 * (l0 + l1));
      ly.push_back(std::log((le[i] - le[i - 1]) / (l1 - l0)));
    }
    g.elasticity = lsSlope(lx, ly, lx.size() > kElasticityWindow ? lx.size() - kElasticityWindow : 0);
  }

  const bool persistent = !(g.elasticity <= rule.divergentElasticity);
  const bool decaying = g.elasticity < rule.boundedElasticity;
  if (g.monotone && n >= 4 && g.slope > rule.divergentSlope && persistent) {
    g.verdict = Verdict::Divergent;
  } else if (std::abs(g.tailSlope) < rule.boundedSlope || (n >= 4 && decaying)) {
    g.verdict = Verdict::Bounded;
  }
  return g;
}

std::vector<double> defaultRadii(const OperatorSpec& op) {
  const auto f = op.family();
  int top = f == Family::HalfLineNeumann || f == Family::HalfLineNeumannISQ ? 6 : 16;
  // the pole subtraction of projected kernels loses digits like R^2
  if (f == Family::BrokenLineDelta && ops::deltaZeroMode(op.dimension(), op.a())) top = 7;
  std::vector<double> out;
  for (int e = 2; e <= top; ++e) out.push_back(std::pow(10.0, e));
  return out;
}

double resolventGate(const OperatorSpec& op) {
  GridOptions o;
  o.perDecade = 512;
  o.maxStep = 0.05;
  return resolventDiscrepancy(op, WeightedGrid::forOperator(op, 70.0, o), 1.0);
}

std::vector<ScanReport> thresholdScan(const OperatorSpec& op, const std::vector<double>& pList,
                                      const std::vector<double>& RList,
                                      const ScanSettings& settings) {
  for (double p : pList) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("scan exponents must lie in (1, inf)");
  }
  if (RList.empty() || !std::is_sorted(RList.begin(), RList.end()) ||
      std::adjacent_find(RList.begin(), RList.end()) != RList.end()) {
    throw ParameterError("truncation radii must be strictly increasing");
  }
  if (settings.gate) {
    const double gap = resolventGate(op);
    if (!(gap <= settings.gateTolerance)) {
      throw PropertyViolation("resolvent gate failed for " + op.name() + ": discrepancy " +
                              std::to_string(gap));
    }
  }
  ScanKernelBuilder builder(op, settings);
  std::vector<ScanReport> out(pList.size());
  for (std::size_t k = 0; k < pList.size(); ++k) {
    out[k].family = std::string(familyName(op.family()));
    out[k].d = op.d();
    out[k].param = op.hasPotential() ? op.c() : op.a();
    out[k].p = pList[k];
  }
  for (double R : RList) {
    const auto g = builder.grid(R);
    const auto A = builder.build(g);
    for (std::size_t k = 0; k < pList.size(); ++k) {
      const auto e = opNormEstimate(*A, g, pList[k], settings.norm);
      out[k].points.push_back({R, e.value, e.method});
    }
  }
  for (auto& rep : out) {
    std::vector<double> Rs, es;
    for (const auto& pt : rep.points) {
      Rs.push_back(pt.R);
      es.push_back(pt.estimate);
    }
    const auto fit = classifyGrowth(Rs, es, builder.grid(RList.front()).innerCut(),
                                    settings.rule);
    rep.slope = fit.slope;
    rep.elasticity = fit.elasticity;
    rep.verdict = fit.verdict;
  }
  return out;
}

}  // namespace radial
