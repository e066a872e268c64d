#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "doctest.h"
#include "radial/errors.hpp"
#include "radial/specfun.hpp"

using namespace radial;
using specfun::RadialBasis;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::vector<double> kDims = {1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0};

}  // namespace

TEST_CASE("Bessel I and K agree with Boost.Math") {
  for (double nu : {0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.5, 3.5}) {
    for (double x : {1e-4, 1e-2, 0.3, 1.0, 2.0, 7.5, 20.0, 29.0}) {
      CAPTURE(nu);
      CAPTURE(x);
      const auto b = specfun::besselIK(nu, x);
      CHECK(rel(b.I.value(), boost::math::cyl_bessel_i(nu, x)) < 1e-12);
      CHECK(rel(b.K.value(), boost::math::cyl_bessel_k(nu, x)) < 1e-12);
      CHECK(rel(b.Iprime.value(), boost::math::cyl_bessel_i_prime(nu, x)) < 1e-11);
      CHECK(rel(b.Kprime.value(), boost::math::cyl_bessel_k_prime(nu, x)) < 1e-11);
    }
  }
}

TEST_CASE("large arguments are returned log-scaled") {
  const auto b = specfun::besselIK(1.5, 900.0);
  CHECK(b.I.logScaled());
  CHECK(b.K.logScaled());
  const double logI = std::log(boost::math::cyl_bessel_i(1.5, 600.0));
  CHECK(rel(specfun::besselIK(1.5, 600.0).I.logAbs(), logI) < 1e-13);
  const auto kl = specfun::littleKL(Dimension(3), 2000.0);
  CHECK(kl.l.logScaled());
  CHECK(kl.k.sign() == 1);
  CHECK(kl.kprime.sign() == -1);
}

TEST_CASE("d = 3 closed forms") {
  const RadialBasis basis(Dimension(3));
  for (double r : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 25.0}) {
    CAPTURE(r);
    const auto v = basis.scaled(r);
    // k = sqrt(pi/2) e^{-r} / r, l = sqrt(2/pi) sinh(r) / r
    const double k = std::sqrt(std::numbers::pi / 2.0) / r;
    const double l = std::sqrt(2.0 / std::numbers::pi) * -std::expm1(-2.0 * r) / (2.0 * r);
    const double kp = -k * (1.0 + 1.0 / r);
    const double lp = std::sqrt(2.0 / std::numbers::pi) *
                      ((1.0 + std::exp(-2.0 * r)) / (2.0 * r) + std::expm1(-2.0 * r) / (2.0 * r * r));
    CHECK(rel(v.k, k) < 1e-12);
    CHECK(rel(v.l, l) < 1e-12);
    CHECK(rel(v.kp, kp) < 1e-12);
    if (r > 0.01) CHECK(rel(v.lp, lp) < 1e-12);
  }
}

TEST_CASE("Wronskian r^{d-1} (l k' - k l') is constant") {
  for (double d : kDims) {
    const double nu = specfun::wronskianConstant(Dimension(d));
    CHECK(nu == doctest::Approx(-1.0).epsilon(1e-12));
    const RadialBasis basis{Dimension(d)};
    for (double r : {1e-5, 1e-3, 0.1, 1.0, 5.0, 40.0, 300.0}) {
      CAPTURE(d);
      CAPTURE(r);
      const auto v = basis.scaled(r);
      const double w = (v.l * v.kp - v.k * v.lp) * std::pow(r, d - 1.0);
      CHECK(std::abs(w * nu - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("k and l solve f'' + (d-1)/r f' = f") {
  for (double d : kDims) {
    const RadialBasis basis{Dimension(d)};
    for (double r : {0.05, 0.4, 1.0, 3.0, 8.0}) {
      CAPTURE(d);
      CAPTURE(r);
      const double h = 1e-4 * r;
      const auto lo = basis.scaled(r - h);
      const auto mid = basis.scaled(r);
      const auto hi = basis.scaled(r + h);
      const double em = std::exp(-r), ep = std::exp(r);
      const double kpp = (hi.kp * std::exp(-(r + h)) - lo.kp * std::exp(-(r - h))) / (2 * h);
      const double lpp = (hi.lp * std::exp(r + h) - lo.lp * std::exp(r - h)) / (2 * h);
      const double kRes = kpp + (d - 1) / r * mid.kp * em - mid.k * em;
      const double lRes = lpp + (d - 1) / r * mid.lp * ep - mid.l * ep;
      CHECK(std::abs(kRes) / (std::abs(mid.k * em) + std::abs(kpp)) < 1e-6);
      CHECK(std::abs(lRes) / (std::abs(mid.l * ep) + std::abs(lpp)) < 1e-6);
    }
  }
}

TEST_CASE("sign profile is constant with the expected signs") {
  for (double d : kDims) {
    CAPTURE(d);
    const auto s = specfun::signProfile(Dimension(d));
    CHECK(s.samples == 600);
    // k, l, k', l', A, B, D, r k' + (d-2) k
    const std::array<int, 8> expected = {1, 1, -1, 1, 1, -1, 1, -1};
    CHECK(s.signs == expected);
  }
}

TEST_CASE("C = A + B and D = A - B") {
  const auto q = specfun::ratios(Dimension(2.5), 0.7);
  CHECK(q.C.value() == doctest::Approx(q.A.value() + q.B.value()).epsilon(1e-14));
  CHECK(q.D.value() == doctest::Approx(q.A.value() - q.B.value()).epsilon(1e-14));
  CHECK(specfun::ratios(Dimension(3), 50.0).A.logScaled());
}

TEST_CASE("A(0) for d < 2") {
  for (double d : {1.2, 1.5, 1.8}) {
    const double a0 = specfun::ratioAtZero(Dimension(d));
    // A(r) - A(0) = O(r^{2-d})
    const double r = std::pow(10.0, -10.0 / (2.0 - d));
    const double small = specfun::ratios(Dimension(d), r).A.value();
    CHECK(small == doctest::Approx(a0).epsilon(1e-8));
  }
  CHECK(specfun::ratioAtZero(Dimension(3)) == 0.0);
}

TEST_CASE("envelope exponents of the asymptotic tables") {
  for (double d : kDims) {
    for (const auto& e : specfun::envelopeTable(Dimension(d))) {
      CAPTURE(d);
      CAPTURE(e.quantity);
      CAPTURE(e.regime);
      CHECK(std::abs(e.fitted - e.predicted) <= 0.02);
    }
  }
}

TEST_CASE("inverse-square potential shifts the small-r exponents") {
  for (auto [d, c] : {std::pair{4.0, 1.25}, {4.0, -0.75}, {3.0, 0.5}}) {
    const auto pot = PotentialParams::make(Dimension(d), c);
    for (const auto& e : specfun::envelopeTablePotential(Dimension(d), pot)) {
      CAPTURE(e.quantity);
      CHECK(e.pass());
    }
  }
  CHECK(PotentialParams::make(Dimension(4), 1.25).dPrime == doctest::Approx(5.0));
  CHECK(PotentialParams::make(Dimension(4), -0.75).dPrime == doctest::Approx(3.0));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(Dimension(1.0), DomainError);
  CHECK_THROWS_AS(Dimension(std::nan("")), DomainError);
  CHECK_THROWS_AS(PotentialParams::make(Dimension(4), -1.0), DomainError);
  CHECK_THROWS_AS(RadialBasis(Dimension(2), PotentialParams::make(Dimension(2), 0.5)),
                  ParameterError);
  CHECK_THROWS_AS(RadialBasis(Dimension(3)).scaled(0.0), DomainError);
  CHECK_THROWS_AS(specfun::fitLogLogSlope({1.0}, {1.0}), ParameterError);
}
