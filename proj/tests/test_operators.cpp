#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "radial/discretize.hpp"
#include "radial/errors.hpp"
#include "radial/operators.hpp"
#include "radial/scan.hpp"

using namespace radial;

namespace {

struct Case {
  Family family;
  double d;
  double param;
};

const std::vector<Case> kCases = {
    {Family::HalfLineNeumann, 3, 0},         {Family::HalfLineNeumann, 1.5, 0},
    {Family::HalfLineDirichlet, 1.5, 0},     {Family::RayDirichlet, 3, 0},
    {Family::RayDirichlet, 1.5, 0},          {Family::RayNeumann, 2.5, 0},
    {Family::BrokenLine, 1.5, 0},            {Family::BrokenLine, 2, 0},
    {Family::BrokenLine, 3, 0},              {Family::FullLineDirichlet, 1.5, 0},
    {Family::HalfLineNeumannISQ, 4, -0.75},  {Family::HalfLineNeumannISQ, 3, 0.5},
    {Family::BrokenLineISQ, 3, 0.5},         {Family::BrokenLineISQ, 4, 1.25},
    {Family::BrokenLineDelta, 3, 2.0},       {Family::BrokenLineDelta, 5, -6.0},
};

double kernel(const OperatorSpec& op, double lam, double x, double y) {
  return ops::resolventKernel(op, lam, DomainPoint(op, x), DomainPoint(op, y)).value;
}

double dxKernel(const OperatorSpec& op, double lam, double x, double y) {
  return ops::dxResolventKernel(op, lam, DomainPoint(op, x), DomainPoint(op, y));
}

}  // namespace

TEST_CASE("resolvent kernels: symmetry, equation, jump and boundary conditions") {
  const double lam = 0.7;
  for (const auto& c : kCases) {
    const OperatorSpec op(c.family, Dimension(c.d), c.param);
    CAPTURE(op.name());
    const double y = 2.9;
    const double x = op.twoSided() ? -1.7 : 1.7;
    const double d = c.d;

    CHECK(std::abs(kernel(op, lam, x, y) - kernel(op, lam, y, x)) <=
          1e-9 * std::abs(kernel(op, lam, x, y)));

    // -u'' - (d-1)/r u' + c/r^2 u + lam^2 u = 0 away from y
    const double s = x > 0 ? 1.0 : -1.0;
    const double r = std::abs(x);
    const double h = 1e-3;
    auto u = [&](double rr) { return kernel(op, lam, s * rr, y); };
    const double upp = (u(r + h) - 2 * u(r) + u(r - h)) / (h * h);
    const double up = (u(r + h) - u(r - h)) / (2 * h);
    const double pot = op.hasPotential() ? op.c() / (r * r) : 0.0;
    const double res = -upp - (d - 1) / r * up + pot * u(r) + lam * lam * u(r);
    CHECK(std::abs(res) <= 1e-4 * (std::abs(upp) + lam * lam * std::abs(u(r))));

    const double fd = (kernel(op, lam, x + 1e-5, y) - kernel(op, lam, x - 1e-5, y)) / 2e-5;
    CHECK(fd == doctest::Approx(dxKernel(op, lam, x, y)).epsilon(1e-6));

    // d/dx K(y-, y) - d/dx K(y+, y) = y^{1-d}
    const double jump = dxKernel(op, lam, y - 1e-9, y) - dxKernel(op, lam, y + 1e-9, y);
    CHECK(jump == doctest::Approx(std::pow(y, 1 - d)).epsilon(1e-6));

    switch (c.family) {
      case Family::HalfLineDirichlet:
        CHECK(std::abs(kernel(op, lam, 1e-14, y)) < 1e-6 * kernel(op, lam, 1.0, y));
        break;
      case Family::RayDirichlet:
        CHECK(std::abs(kernel(op, lam, 1.0, y)) < 1e-14);
        break;
      case Family::RayNeumann:
        CHECK(std::abs(dxKernel(op, lam, 1.0, y)) < 1e-14);
        break;
      case Family::FullLineDirichlet:
        CHECK(kernel(op, lam, 1e-14, y) == doctest::Approx(kernel(op, lam, -1e-14, y)));
        break;
      case Family::BrokenLine:
      case Family::BrokenLineISQ:
        CHECK(kernel(op, lam, 1.0, y) == doctest::Approx(kernel(op, lam, -1.0, y)).epsilon(1e-12));
        CHECK(dxKernel(op, lam, 1.0, y) ==
              doctest::Approx(dxKernel(op, lam, -1.0, y)).epsilon(1e-12));
        break;
      case Family::BrokenLineDelta:
        CHECK(kernel(op, lam, 1.0, y) == doctest::Approx(kernel(op, lam, -1.0, y)).epsilon(1e-12));
        CHECK(dxKernel(op, lam, 1.0, y) - dxKernel(op, lam, -1.0, y) ==
              doctest::Approx(op.a() * kernel(op, lam, 1.0, y)).epsilon(1e-10));
        break;
      default:
        break;
    }
  }
}

TEST_CASE("kernel decays away from the diagonal") {
  const OperatorSpec op(Family::BrokenLine, Dimension(3));
  CHECK(std::abs(kernel(op, 1.0, 2.0, 40.0)) < 1e-14);
  CHECK(kernel(op, 1.0, 2.0, 3.0) > 0.0);
}

TEST_CASE("discretized resolvent matches the closed form") {
  for (const auto& c : {Case{Family::HalfLineNeumann, 3, 0}, Case{Family::RayDirichlet, 1.5, 0},
                        Case{Family::BrokenLine, 2, 0}}) {
    const OperatorSpec op(c.family, Dimension(c.d), c.param);
    CAPTURE(op.name());
    CHECK(resolventGate(op) < 1e-3);
  }
}

TEST_CASE("Dirichlet ray: the node at x = 1 carries no unknown") {
  const OperatorSpec op(Family::RayDirichlet, Dimension(3));
  GridOptions o;
  o.perDecade = 64;
  const auto g = WeightedGrid::forOperator(op, 20.0, o);
  const auto D = discretizeOperator(op, g);
  CHECK(g.nodes().front() == 1.0);
  CHECK(D.dofOfNode.front() == -1);
  CHECK(D.size() == g.size() - 2);
  CHECK(std::abs(kernel(op, 1.0, 1.0, 5.0)) < 1e-15);
}

TEST_CASE("delta family at a = -2(d-2): zero mode |x|^{2-d}") {
  const Dimension d(5);
  CHECK(ops::deltaZeroMode(d, -6.0));
  CHECK_FALSE(ops::deltaZeroMode(d, -5.9));
  const OperatorSpec op(Family::BrokenLineDelta, d, -6.0);
  GridOptions o;
  o.perDecade = 64;
  const auto g = WeightedGrid::forOperator(op, 1e3, o);
  const auto D = discretizeOperator(op, g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D.symmetricForm());
  const double lowest = es.eigenvalues()(0);
  CHECK(std::abs(lowest) < 1e-3 * es.eigenvalues()(1));
  Eigen::VectorXd mode(D.size());
  for (std::size_t i = 0; i < D.size(); ++i) {
    mode(i) = std::sqrt(D.mass[i]) * std::pow(std::abs(D.x[i]), -3.0);
  }
  const double cosine = std::abs(es.eigenvectors().col(0).dot(mode)) / mode.norm();
  CHECK(cosine > 0.999);
}

TEST_CASE("delta family poles") {
  const Dimension d(3);
  const auto pole = ops::deltaPole(d, -4.0);
  REQUIRE(pole.has_value());
  CHECK_THROWS_AS(ops::deltaPotentialD(d, -4.0, *pole), PoleError);
  CHECK_FALSE(ops::deltaPole(d, -1.0).has_value());
  CHECK_FALSE(ops::deltaPole(d, 3.0).has_value());
  const OperatorSpec op(Family::BrokenLineDelta, d, -4.0);
  CHECK_THROWS_AS(kernel(op, *pole, 2.0, 3.0), PoleError);
}

TEST_CASE("kernel sign is -nu") {
  for (double d : {1.5, 2.0, 3.0}) {
    const OperatorSpec op(Family::BrokenLine, Dimension(d));
    CHECK(ops::kernelSign(op) == doctest::Approx(1.0));
  }
}

TEST_CASE("admissibility") {
  CHECK_THROWS_AS(OperatorSpec(Family::HalfLineDirichlet, Dimension(2)), ParameterError);
  CHECK_THROWS_AS(OperatorSpec(Family::FullLineDirichlet, Dimension(3)), ParameterError);
  CHECK_THROWS_AS(OperatorSpec(Family::BrokenLineDelta, Dimension(2)), ParameterError);
  CHECK_THROWS_AS(OperatorSpec(Family::BrokenLineISQ, Dimension(2), 0.5), ParameterError);
  CHECK_THROWS_AS(OperatorSpec(Family::BrokenLineISQ, Dimension(4), -2.0), ParameterError);
  CHECK_THROWS_AS(parseFamily("broken"), ParameterError);
  CHECK(parseFamily("BrokenLine") == Family::BrokenLine);
  const OperatorSpec ray(Family::RayNeumann, Dimension(3));
  CHECK_THROWS_AS(DomainPoint(ray, 0.5), DomainError);
  CHECK_THROWS_AS(ops::resolventKernel(ray, 0.0, DomainPoint(ray, 2), DomainPoint(ray, 3)),
                  DomainError);
  CHECK_THROWS_AS(ops::dxResolventKernel(ray, 1.0, DomainPoint(ray, 2), DomainPoint(ray, 2)),
                  DiagonalError);
}
