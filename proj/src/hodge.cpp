#include "radial/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Sparse>

#include "radial/discretize.hpp"
#include "radial/errors.hpp"
#include "radial/grid.hpp"
#include "radial/quadrature.hpp"

namespace radial::hodge {

CoefficientFunction::CoefficientFunction(std::function<double(double)> f, double left,
                                         double right, std::string name,
                                         std::vector<double> kinks)
    : f_(std::move(f)), left_(left), right_(right), name_(std::move(name)),
      kinks_(std::move(kinks)) {}

CoefficientFunction CoefficientFunction::powerWeight(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw ParameterError("power weight needs delta >= 0");
  }
  return CoefficientFunction([delta](double x) { return std::pow(1.0 + std::abs(x), 2.0 * delta); },
                             2.0 * delta, 2.0 * delta, "a_delta(" + std::to_string(delta) + ")",
                             {0.0});
}

CoefficientFunction CoefficientFunction::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw ParameterError("coefficient must be positive");
  return CoefficientFunction([value](double) { return value; }, 0.0, 0.0,
                             "const(" + std::to_string(value) + ")", {0.0});
}

CoefficientFunction CoefficientFunction::sampled(std::vector<double> x, std::vector<double> a,
                                                 double leftExponent, double rightExponent) {
  const std::size_t n = x.size();
  if (n < 2 || a.size() != n) throw ParameterError("sampled coefficient needs matching samples");
  if (!(x.front() < 0.0) || !(x.back() > 0.0)) {
    throw ParameterError("samples must straddle x = 0");
  }
  if (!std::isfinite(leftExponent) || !std::isfinite(rightExponent)) {
    throw ParameterError("tail exponents must be finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i])) throw ParameterError("coefficient must be positive");
    if (i > 0 && !(x[i] > x[i - 1])) throw ParameterError("sample points must increase");
  }
  std::vector<double> kinks = x;
  kinks.push_back(0.0);
  std::sort(kinks.begin(), kinks.end());
  kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
  auto f = [x = std::move(x), a = std::move(a), leftExponent, rightExponent](double t) {
    if (t <= x.front()) return a.front() * std::pow(t / x.front(), leftExponent);
    if (t >= x.back()) return a.back() * std::pow(t / x.back(), rightExponent);
    const auto it = std::upper_bound(x.begin(), x.end(), t);
    const auto j = static_cast<std::size_t>(it - x.begin());
    const double s = (t - x[j - 1]) / (x[j] - x[j - 1]);
    return (1.0 - s) * a[j - 1] + s * a[j];
  };
  return CoefficientFunction(std::move(f), leftExponent, rightExponent, "sampled",
                             std::move(kinks));
}

namespace {

constexpr double kDivergentRatio = 0.9;
constexpr int kDivergentRun = 3;

double inverse(const CoefficientFunction& a, double x) { return 1.0 / a(x); }

double interval(const CoefficientFunction& a, double lo, double hi, int pieces) {
  std::vector<double> b(pieces + 1);
  for (int k = 0; k <= pieces; ++k) b[k] = lo + (hi - lo) * k / pieces;
  return quad::panels([&](double t) { return inverse(a, t); }, b).value;
}

}  // namespace

MassA massA(const CoefficientFunction& a) {
  const auto& kinks = a.kinks();
  const double X0 = std::max({1.0, 2.0 * std::abs(kinks.front()), 2.0 * std::abs(kinks.back())});
  std::vector<double> breaks{-X0};
  for (double k : kinks) breaks.push_back(k);
  breaks.push_back(X0);
  double core = 0.0;
  for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
    core += interval(a, breaks[j], breaks[j + 1], 8);
  }

  MassA out;
  double total = core;
  for (int side : {-1, 1}) {
    double X = X0;
    double prev = 0.0;
    double prevRatio = -1.0;
    int run = 0;
    bool done = false;
    for (int k = 0; !done; ++k, X *= 2.0) {
      const double Ik = side > 0 ? interval(a, X, 2.0 * X, 4) : interval(a, -2.0 * X, -X, 4);
      ++out.doublings;
      total += Ik;
      if (Ik <= 1e-17 * total) break;
      if (k > 0) {
        const double r = Ik / prev;
        run = r >= kDivergentRatio ? run + 1 : 0;
        if (run >= kDivergentRun) {
          out.A = std::numeric_limits<double>::infinity();
          out.finite = false;
          return out;
        }
        const bool settled = k >= 10 && std::abs(r - prevRatio) <= 1e-9 * r;
        if (r < kDivergentRatio && (settled || X > 1e300)) {
          total += Ik * r / (1.0 - r);
          done = true;
        }
        prevRatio = r;
      }
      if (X > 1e300 && !done) {
        out.A = std::numeric_limits<double>::infinity();
        out.finite = false;
        return out;
      }
      prev = Ik;
    }
  }
  out.A = total;
  out.finite = true;
  return out;
}

std::optional<double> hodgeKernel(const CoefficientFunction& a, double x, double y) {
  const auto m = massA(a);
  if (!m.finite) return std::nullopt;
  return 1.0 / (m.A * std::sqrt(a(x) * a(y)));
}

bool invSqrtInLq(const CoefficientFunction& a, double q) {
  if (!(q > 0.0)) throw ParameterError("L^q membership needs q > 0");
  return a.leftExponent() * q / 2.0 > 1.0 && a.rightExponent() * q / 2.0 > 1.0;
}

Verdict hodgeLpBounded(const CoefficientFunction& a, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ParameterError("Hodge verdicts need 1 < p < inf");
  if (!massA(a).finite) return Verdict::Bounded;
  const double q = p / (p - 1.0);
  return invSqrtInLq(a, p) && invSqrtInLq(a, q) ? Verdict::Bounded : Verdict::Divergent;
}

LineGrid LineGrid::symmetric(double R, int perUnit) {
  if (!(R > 0.0) || perUnit < 1) throw ParameterError("line grid needs R > 0 and perUnit >= 1");
  const double T = std::asinh(R);
  const int N = 2 * static_cast<int>(std::ceil(perUnit * T));
  LineGrid g;
  g.edges.resize(N + 1);
  for (int j = 0; j <= N; ++j) g.edges[j] = std::sinh(-T + 2.0 * T * j / N);
  g.edges.front() = -R;
  g.edges.back() = R;
  for (int j = 0; j < N; ++j) {
    g.mid.push_back(0.5 * (g.edges[j] + g.edges[j + 1]));
    g.h.push_back(g.edges[j + 1] - g.edges[j]);
  }
  return g;
}

namespace {

/// Cell values of a^{-1/2} from the harmonic mean of a over each cell, so
/// that sum h_j g_j^2 is the exact integral of 1/a.
Eigen::VectorXd cellInvSqrt(const CoefficientFunction& a, const LineGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.h.size());
  Eigen::VectorXd g(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = grid.edges[j], hi = grid.edges[j + 1];
    double inv = 0.0;
    if (lo < 0.0 && hi > 0.0) {
      inv = interval(a, lo, 0.0, 1) + interval(a, 0.0, hi, 1);
    } else {
      inv = interval(a, lo, hi, 1);
    }
    g[j] = std::sqrt(inv / grid.h[j]);
  }
  return g;
}

std::vector<ProbeFunction> projectorProbes(const Eigen::VectorXd& g, const std::vector<double>& x,
                                           double p) {
  const double q = p / (p - 1.0);
  std::vector<ProbeFunction> out;
  for (double s : {1.0, p - 1.0, q - 1.0, 0.5, 2.0}) {
    ProbeFunction f{"a^(-" + std::to_string(s / 2.0) + ")", {}};
    for (Eigen::Index i = 0; i < g.size(); ++i) f.values.push_back(std::pow(g[i], s));
    out.push_back(std::move(f));
  }
  double top = 0.0;
  for (double v : x) top = std::max(top, std::abs(v));
  for (double X = 1.0; X <= 2.0 * top; X *= 10.0) {
    ProbeFunction f{"block(" + std::to_string(X) + ")", {}};
    for (double v : x) f.values.push_back(std::abs(v) <= X ? 1.0 : 0.0);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

RankOneProjector::RankOneProjector(Eigen::VectorXd g, std::vector<double> weights)
    : GridOperator(std::move(weights)), g_(std::move(g)) {
  if (static_cast<std::size_t>(g_.size()) != w_.size()) {
    throw ParameterError("projector direction does not match grid weights");
  }
  for (Eigen::Index i = 0; i < g_.size(); ++i) mass_ += w_[i] * g_[i] * g_[i];
  if (!(mass_ > 0.0)) throw ParameterError("projector direction must be nonzero");
}

Eigen::VectorXd RankOneProjector::apply(const Eigen::VectorXd& f) const {
  double c = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) c += w_[i] * g_[i] * f[i];
  return f - (c / mass_) * g_;
}

ProjectorReport verifyProjector(const CoefficientFunction& a, const LineGrid& grid,
                                unsigned seed) {
  const auto n = static_cast<Eigen::Index>(grid.h.size());
  if (n < 3) throw ParameterError("projector check needs at least three cells");
  ProjectorReport rep;
  rep.cells = static_cast<std::size_t>(n);
  rep.identity = !massA(a).finite;

  const Eigen::VectorXd g = cellInvSqrt(a, grid);
  const Eigen::Map<const Eigen::VectorXd> h(grid.h.data(), n);
  rep.gridMass = (h.array() * g.array().square()).sum();

  const Eigen::VectorXd sh = h.array().sqrt();
  const Eigen::VectorXd ish = sh.cwiseInverse();
  // R_h and P in the symmetric frame H^{1/2} (.) H^{-1/2}
  const Eigen::VectorXd u = sh.cwiseProduct(g) / std::sqrt(rep.gridMass);
  const Eigen::MatrixXd Rs = u * u.transpose();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd Ps = rep.identity ? I : Eigen::MatrixXd(I - Rs);
  rep.idempotence = symmetricSpectralNorm(Ps * Ps - Ps);

  // kernel matrix K(x_i, y_j) h_j against the direct projection
  Eigen::MatrixXd Rk(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) Rk(i, j) = g[i] * g[j] * h[j] / rep.gridMass;
  }
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd f(n);
    for (Eigen::Index i = 0; i < n; ++i) f[i] = normal(rng);
    const double c = (h.array() * g.array() * f.array()).sum() / rep.gridMass;
    const Eigen::VectorXd diff = Rk * f - c * g;
    const double num = std::sqrt((h.array() * diff.array().square()).sum());
    const double den = std::sqrt((h.array() * f.array().square()).sum());
    rep.rankOneResidual = std::max(rep.rankOneResidual, num / den);
  }

  // grad L^{-1} grad^* with u = 0 at both ends: grad u = sqrt(a) u' on cells
  const Eigen::Index m = n - 1;  // interior nodes
  const Eigen::VectorXd sa = g.cwiseInverse();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, m);
  std::vector<Eigen::Triplet<double>> trip;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double c = sa[j] / h[j];
    if (j < m) G(j, j) = c;
    if (j > 0) G(j, j - 1) = -c;
    const double s = sa[j] * sa[j] / h[j];
    if (j < m) trip.emplace_back(j, j, s);
    if (j > 0) trip.emplace_back(j - 1, j - 1, s);
    if (j > 0 && j < m) {
      trip.emplace_back(j, j - 1, -s);
      trip.emplace_back(j - 1, j, -s);
    }
  }
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
  if (ldlt.info() != Eigen::Success) throw ConvergenceError("discrete operator is not invertible");
  const Eigen::MatrixXd GtH = G.transpose() * h.asDiagonal();
  const Eigen::MatrixXd Por = G * ldlt.solve(GtH);
  const Eigen::MatrixXd PorS = sh.asDiagonal() * Por * ish.asDiagonal();
  const Eigen::MatrixXd PhS = I - Rs;
  rep.oracleDiff = symmetricSpectralNorm(0.5 * (PorS + PorS.transpose()) - PhS);

  // condition number of L by power and inverse power iteration
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m), w = v;
  double big = 0.0, small = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::VectorXd Lv = L * v;
    big = Lv.norm() / v.norm();
    v = Lv / Lv.norm();
    const Eigen::VectorXd Mw = ldlt.solve(w);
    small = Mw.norm() / w.norm();
    w = Mw / Mw.norm();
  }
  rep.conditionEstimate = big * small;
  return rep;
}

NormEstimate projectorNorm(const CoefficientFunction& a, const LineGrid& grid, double p) {
  if (!massA(a).finite) return {1.0, "identity", 0, true};
  RankOneProjector P(cellInvSqrt(a, grid), grid.h);
  NormOptions opt;
  opt.probes = projectorProbes(P.direction(), grid.mid, p);
  return opNormEstimate(P, p, opt);
}

IsometryReport isometryCheck(double d, double p, double R, int perDecade) {
  if (!(d > 2.0)) throw ParameterError("the isometry check needs d > 2");
  if (!(R > 1.0)) throw ParameterError("the isometry check needs R > 1");
  const double delta = 1.0 - 1.0 / d;

  // one side of a broken line; both sides carry the same values
  auto side = [&](double top, double weightDim, double gExp) {
    const int K = std::max(1, static_cast<int>(std::lround(perDecade * std::log10(top))));
    std::vector<double> x, w;
    Eigen::VectorXd g(2 * K);
    for (int s : {1, -1}) {
      for (int j = 0; j < K; ++j) {
        const double lo = std::pow(top, static_cast<double>(j) / K);
        const double hi = std::pow(top, static_cast<double>(j + 1) / K);
        const double mid = std::sqrt(lo * hi);
        x.push_back(s * mid);
        w.push_back(shellVolume(weightDim, lo, hi));
        g[static_cast<Eigen::Index>(x.size() - 1)] = std::pow(mid, -gExp);
      }
    }
    RankOneProjector P(g, w);
    NormOptions opt;
    opt.probes = projectorProbes(g, x, p);
    return opNormEstimate(P, p, opt).value;
  };

  IsometryReport rep;
  rep.weighted = side(R, d, d - 1.0);
  rep.flat = side(std::pow(R, d), 1.0, delta);
  rep.relativeGap = std::abs(rep.weighted - rep.flat) / rep.flat;
  return rep;
}

}  // namespace radial::hodge
