#include <cmath>
#include <vector>

#include "doctest.h"
#include "radial/errors.hpp"
#include "radial/grid.hpp"
#include "radial/opnorm.hpp"
#include "radial/scan.hpp"

using namespace radial;

namespace {

std::vector<double> decades(int lo, int hi) {
  std::vector<double> R;
  for (int e = lo; e <= hi; ++e) R.push_back(std::pow(10.0, e));
  return R;
}

double normOf(const Eigen::VectorXd& v, double p, const WeightedGrid& g) {
  return lpNorm(std::vector<double>(v.data(), v.data() + v.size()), p, g);
}

}  // namespace

TEST_CASE("weighted grids") {
  for (auto kind : {DomainKind::HalfLine, DomainKind::Ray, DomainKind::BrokenLine,
                    DomainKind::FullLine}) {
    for (double d : {1.5, 3.0}) {
      GridOptions o;
      o.origin = kind == DomainKind::FullLine;
      const WeightedGrid g(kind, Dimension(d), 1e4, o);
      CAPTURE(static_cast<int>(kind));
      CAPTURE(d);
      double sum = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(g.weights()[i] > 0.0);
        if (i > 0) CHECK(g.nodes()[i] > g.nodes()[i - 1]);
        sum += g.weights()[i];
      }
      CHECK(sum == doctest::Approx(g.exactMass()).epsilon(1e-6));
    }
  }
  CHECK(shellVolume(3, 1, 2) == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("lpNorm") {
  const Dimension d(3);
  const double R = 1e3;
  const WeightedGrid g(DomainKind::Ray, d, R);
  const auto one = ProbeFunction::constant(g);
  CHECK(lpNorm(one, 3, g) == doctest::Approx(std::cbrt((R * R * R - 1) / 3)).epsilon(1e-6));
  const auto f = ProbeFunction::powerLaw(g, 1.7);
  std::vector<double> scaled = f.values;
  for (double& v : scaled) v *= -2.5;
  CHECK(lpNorm(scaled, 2.5, g) == doctest::Approx(2.5 * lpNorm(f, 2.5, g)).epsilon(1e-14));
  CHECK_THROWS_AS(lpNorm(one, 1.0, g), ParameterError);
  CHECK_THROWS_AS(lpNorm(one, 0.5, g), ParameterError);
}

TEST_CASE("the (y log y)^{-1} probe has a convergent L^3 norm at d = 3") {
  const WeightedGrid small(DomainKind::Ray, Dimension(3), 1e3);
  const WeightedGrid large(DomainKind::Ray, Dimension(3), 1e6);
  const double a = lpNorm(ProbeFunction::yLogY(small), 3, small);
  const double b = lpNorm(ProbeFunction::yLogY(large), 3, large);
  CHECK(b > a);
  CHECK(b / a < 1.05);
}

TEST_CASE("p = 2 estimate equals the spectral norm; duality") {
  const OperatorSpec op(Family::BrokenLine, Dimension(3));
  ScanSettings s;
  s.perDecade = 64;
  ScanKernelBuilder builder(op, s);
  const auto g = builder.grid(1e3);
  const auto A = builder.build(g);
  const auto* lr = dynamic_cast<const LowRankGridOperator*>(A.get());
  REQUIRE(lr != nullptr);
  const DenseGridOperator dense(lr->dense(), g.weights());
  const double exact = spectralNorm(dense);
  CHECK(opNormEstimate(dense, g, 2.0).value == doctest::Approx(exact).epsilon(1e-6));

  const auto T = dense.transposed();
  for (double p : {1.5, 2.5, 4.0}) {
    CAPTURE(p);
    const double q = p / (p - 1);
    const double direct = opNormEstimate(dense, g, p).value;
    const double dual = opNormEstimate(T, g, q).value;
    CHECK(std::abs(direct - dual) <= 0.05 * std::max(direct, dual));
  }
}

TEST_CASE("kk kernel of the broken line, d = 3: growth at p = 3, stabilization at p = 2.5") {
  const OperatorSpec op(Family::BrokenLine, Dimension(3));
  const auto reports = thresholdScan(op, {2.5, 3.0}, decades(2, 6));
  REQUIRE(reports.size() == 2);
  const auto& stable = reports[0].points;
  const auto& growing = reports[1].points;
  for (std::size_t k = 1; k < growing.size(); ++k) {
    CAPTURE(growing[k].R);
    CHECK(growing[k].estimate / growing[k - 1].estimate >= 1.1);
  }
  for (std::size_t k = 3; k < stable.size(); ++k) {
    CAPTURE(stable[k].R);
    CHECK(stable[k].estimate / stable[k - 1].estimate <= 1.02);
  }
  CHECK(reports[0].verdict == Verdict::Bounded);
  CHECK(reports[1].verdict == Verdict::Divergent);
  CHECK(reports[1].points.front().method == "power");
}

TEST_CASE("(y log y)^{-1} is not mapped boundedly at d = p = 3") {
  const OperatorSpec op(Family::BrokenLine, Dimension(3));
  ScanKernelBuilder builder(op, ScanSettings{});
  double prev = 0.0;
  for (double R : decades(3, 6)) {
    const auto g = builder.grid(R);
    const auto A = builder.build(g);
    // one end only: the kk part annihilates even functions
    auto f = ProbeFunction::yLogY(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (g.nodes()[i] < 0) f.values[i] = 0.0;
    }
    const Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(f.values.data(), f.values.size());
    const double n = normOf(A->apply(v), 3.0, g);
    CAPTURE(R);
    if (prev > 0.0) CHECK(n >= 1.05 * prev);
    prev = n;
  }
}

TEST_CASE("growth classification") {
  const auto R = decades(2, 8);
  const double inner = 1e-3;
  std::vector<double> logDiv, conv, flat;
  for (double r : R) {
    const double L = std::log(r / inner);
    logDiv.push_back(std::pow(L, 2.0 / 3.0));
    conv.push_back(2.0 - 3.0 / L);
    flat.push_back(1.0);
  }
  CHECK(classifyGrowth(R, logDiv, inner).verdict == Verdict::Divergent);
  CHECK(classifyGrowth(R, conv, inner).verdict == Verdict::Bounded);
  const auto f = classifyGrowth(R, flat, inner);
  CHECK(f.verdict == Verdict::Bounded);
  CHECK(std::isnan(f.elasticity));
  std::vector<double> power;
  for (double r : R) power.push_back(std::pow(r, 0.2));
  const auto p = classifyGrowth(R, power, inner);
  CHECK(p.verdict == Verdict::Divergent);
  CHECK(p.slope == doctest::Approx(0.2 * std::log(10.0)).epsilon(1e-9));
  // fewer than four truncations never give a divergent verdict
  const std::vector<double> R3(R.begin(), R.begin() + 3), P3(power.begin(), power.begin() + 3);
  CHECK(classifyGrowth(R3, P3, inner).verdict != Verdict::Divergent);
  // non-monotone growth is not divergent
  std::vector<double> zigzag = power;
  zigzag[3] = zigzag[1];
  CHECK(classifyGrowth(R, zigzag, inner).verdict != Verdict::Divergent);
}

TEST_CASE("verdict names") {
  for (auto v : {Verdict::Bounded, Verdict::Divergent, Verdict::Inconclusive}) {
    CHECK(parseVerdict(verdictName(v)) == v);
  }
  CHECK_THROWS_AS(parseVerdict("maybe"), ParameterError);
}

TEST_CASE("scan validation") {
  const OperatorSpec op(Family::RayNeumann, Dimension(2));
  CHECK_THROWS_AS(thresholdScan(op, {1.0}, {1e2, 1e3}), ParameterError);
  CHECK_THROWS_AS(thresholdScan(op, {2.0}, {1e3, 1e2}), ParameterError);
  CHECK_THROWS_AS(thresholdScan(op, {2.0}, {1e3, 1e3}), ParameterError);
  const OperatorSpec zero(Family::BrokenLineDelta, Dimension(5), -6.0);
  CHECK_THROWS_AS(ScanKernelBuilder(zero, ScanSettings{}), ParameterError);
  ScanSettings proj;
  proj.projected = true;
  CHECK_THROWS_AS(ScanKernelBuilder(OperatorSpec(Family::BrokenLine, Dimension(5)), proj),
                  ParameterError);
  CHECK_THROWS_AS(ScanKernelBuilder(OperatorSpec(Family::BrokenLineDelta, Dimension(3), -4.0),
                                    ScanSettings{}),
                  PoleError);
}

TEST_CASE("default truncation radii") {
  CHECK(defaultRadii(OperatorSpec(Family::HalfLineNeumann, Dimension(3))).back() == 1e6);
  CHECK(defaultRadii(OperatorSpec(Family::BrokenLine, Dimension(3))).back() == 1e16);
  CHECK(defaultRadii(OperatorSpec(Family::BrokenLineDelta, Dimension(6), -8.0)).back() == 1e7);
  CHECK(defaultRadii(OperatorSpec(Family::RayNeumann, Dimension(3))).front() == 1e2);
}

TEST_CASE("Neumann ray is bounded; projected delta window at d = 6") {
  const OperatorSpec ray(Family::RayNeumann, Dimension(2));
  for (const auto& r : thresholdScan(ray, {1.1, 4.0}, decades(2, 8))) {
    CHECK(r.verdict == Verdict::Bounded);
  }
  const OperatorSpec delta(Family::BrokenLineDelta, Dimension(6), -8.0);
  ScanSettings s;
  s.projected = true;
  const auto reps = thresholdScan(delta, {1.4, 1.75, 2.1}, defaultRadii(delta), s);
  CHECK(reps[0].verdict == Verdict::Divergent);
  CHECK(reps[1].verdict == Verdict::Bounded);
  CHECK(reps[2].verdict == Verdict::Divergent);
}

TEST_CASE("divergence persists above the threshold") {
  const OperatorSpec op(Family::RayDirichlet, Dimension(3));
  const auto reps = thresholdScan(op, {2.2, 2.6, 3.0, 3.5, 4.5}, defaultRadii(op));
  bool diverged = false;
  for (const auto& r : reps) {
    CAPTURE(r.p);
    if (diverged) CHECK(r.verdict == Verdict::Divergent);
    diverged = diverged || (r.p > 2.0 && r.verdict == Verdict::Divergent);
  }
  CHECK(diverged);
}
