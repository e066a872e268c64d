// Modified Bessel functions I_nu, K_nu of real order.
//
//   x < 2          Temme's series for K_mu, K_{mu+1}, |mu| <= 1/2
//   2 <= x < 25    Steed's continued fraction (CF2) for K_mu, K_{mu+1}
//   x >= 25        Hankel asymptotic expansion for I and K directly
//
// Below the Hankel switch, I is normalised through the Wronskian
// I_mu K_{mu+1} + I_{mu+1} K_mu = 1/x using the ratio I_{nu+1}/I_nu from a
// continued fraction and downward recurrence; K is recurred upwards.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "radial/errors.hpp"
#include "radial/specfun.hpp"

namespace radial::specfun {
namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;
constexpr double kPi = std::numbers::pi;
constexpr double kHankelSwitch = 25.0;
constexpr int kMaxIter = 100000;

// 1/Gamma(z) = sum_{k>=1} c_k z^k  (Abramowitz & Stegun 6.1.34).
constexpr std::array<double, 26> kRecipGamma = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
TemmeGammas temmeGammas(double mu) {
  TemmeGammas g{0.0, 0.0, 0.0, 0.0};
  const double m2 = mu * mu;
  double p = 1.0;
  for (std::size_t j = 0; j < kRecipGamma.size() / 2; ++j) {
    g.gam2 += kRecipGamma[2 * j] * p;
    g.gam1 -= kRecipGamma[2 * j + 1] * p;
    p *= m2;
  }
  g.gampl = g.gam2 - mu * g.gam1;
  g.gammi = g.gam2 + mu * g.gam1;
  return g;
}

struct KPair {
  double k, k1;  // scaled by e^{x}
};

KPair temmeK(double mu, double x) {
  const auto g = temmeGammas(mu);
  const double x2 = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(x2);
  double e = mu * d;
  const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
  double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / g.gampl;
  double q = 0.5 / (e * g.gammi);
  double c = 1.0;
  d = x2 * x2;
  double sum1 = p;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu * mu);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  if (i > kMaxIter) throw ConvergenceError("besselK: Temme series did not converge");
  const double ex = std::exp(x);
  return {sum * ex, sum1 * (2.0 / x) * ex};
}

KPair steedK(double mu, double x) {
  double b = 2.0 * (1.0 + x);
  double dd = 1.0 / b;
  double h = dd;
  double delh = dd;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    dd = 1.0 / (b + a * dd);
    delh = (b * dd - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) throw ConvergenceError("besselK: Steed continued fraction did not converge");
  h = a1 * h;
  const double k = std::sqrt(kPi / (2.0 * x)) / s;
  return {k, k * (mu + x + 0.5 - h) / x};
}

// I_{nu+1}/I_nu by the continued fraction 1/(2(nu+1)/x + 1/(2(nu+2)/x + ...)).
double besselIRatio(double nu, double x) {
  double f = 2.0 * (nu + 1.0) / x;
  if (f == 0.0) f = kTiny;
  double c = f;
  double d = 0.0;
  int j = 2;
  for (; j <= kMaxIter; ++j) {
    const double b = 2.0 * (nu + j) / x;
    d = b + d;
    if (d == 0.0) d = kTiny;
    d = 1.0 / d;
    c = b + 1.0 / c;
    if (c == 0.0) c = kTiny;
    const double del = c * d;
    f *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (j > kMaxIter) throw ConvergenceError("besselI: ratio continued fraction did not converge");
  return 1.0 / f;
}

// Hankel sums  sum a_k(nu) / x^k  (sK) and  sum (-1)^k a_k(nu) / x^k  (sI).
void hankelSums(double nu, double x, double& sK, double& sI) {
  const double mu4 = 4.0 * nu * nu;
  double term = 1.0;
  sK = 1.0;
  sI = 1.0;
  double prev = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu4 - odd * odd) / (k * 8.0 * x);
    const double at = std::abs(term);
    if (at > prev) break;  // asymptotic series starts to diverge
    sK += term;
    sI += (k % 2 == 0) ? term : -term;
    if (at < kEps * 1e-2) break;
    prev = at;
  }
}

}  // namespace

ScaledBessel besselScaled(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("besselScaled: x must be positive, got " + std::to_string(x));
  if (!(nu >= -0.5)) throw DomainError("besselScaled: order must be >= -1/2, got " + std::to_string(nu));

  ScaledBessel out;
  if (x >= kHankelSwitch) {
    double sK0, sI0, sK1, sI1;
    hankelSums(nu, x, sK0, sI0);
    hankelSums(nu + 1.0, x, sK1, sI1);
    const double kf = std::sqrt(kPi / (2.0 * x));
    const double inf = 1.0 / std::sqrt(2.0 * kPi * x);
    out.k = kf * sK0;
    out.k1 = kf * sK1;
    out.i = inf * sI0;
    out.i1 = inf * sI1;
    return out;
  }

  const int nl = static_cast<int>(std::floor(nu + 0.5));
  const double mu = nu - nl;

  // Downward recurrence I_{l-1} = I_{l+1} + (2l/x) I_l from (nu, nu+1) to (mu, mu+1).
  const double rho = besselIRatio(nu, x);
  double ihi = rho;
  double ilo = 1.0;
  double logRescale = 0.0;
  for (int j = 0; j < nl; ++j) {
    const double l = nu - j;
    const double inew = ihi + (2.0 * l / x) * ilo;
    ihi = ilo;
    ilo = inew;
    if (ilo > 1e250) {
      ihi /= ilo;
      logRescale += std::log(ilo);
      ilo = 1.0;
    }
  }
  const double qmu = ihi / ilo;

  KPair kp = (x < 2.0) ? temmeK(mu, x) : steedK(mu, x);
  const double imu = (1.0 / x) / (kp.k1 + qmu * kp.k);

  double k0 = kp.k;
  double k1 = kp.k1;
  for (int j = 1; j <= nl; ++j) {
    const double l = mu + j;
    const double knew = k0 + (2.0 * l / x) * k1;
    k0 = k1;
    k1 = knew;
  }
  out.k = k0;
  out.k1 = k1;
  out.i = imu / ilo * std::exp(-logRescale);
  out.i1 = out.i * rho;
  return out;
}

BesselIK besselIK(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("besselIK: x must be positive, got " + std::to_string(x));
  if (!(nu >= 0.0)) throw DomainError("besselIK: order must be non-negative, got " + std::to_string(nu));
  const auto s = besselScaled(nu, x);
  const bool logForm = x > 30.0;
  const double ip = s.i1 + (nu / x) * s.i;
  const double kprime = -s.k1 + (nu / x) * s.k;
  return {FunValue::scaled(s.i, x, logForm), FunValue::scaled(s.k, -x, logForm),
          FunValue::scaled(ip, x, logForm), FunValue::scaled(kprime, -x, logForm)};
}

}  // namespace radial::specfun
