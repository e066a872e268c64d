#include "radial/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "radial/errors.hpp"

namespace radial {

Dimension::Dimension(double d) : d_(d) {
  if (!(d > 1.0) || !std::isfinite(d)) {
    throw DomainError("dimension must satisfy d > 1, got " + std::to_string(d));
  }
}

PotentialParams PotentialParams::make(Dimension d, double c) {
  const double half = d.value() / 2.0 - 1.0;
  const double disc = half * half + c;
  if (!(disc > 0.0)) {
    throw DomainError("inverse-square coefficient must satisfy c > -(d-2)^2/4, got c = " +
                      std::to_string(c));
  }
  return {c, 2.0 + 2.0 * std::sqrt(disc)};
}

FunValue FunValue::plain(double v) noexcept {
  FunValue f;
  f.v_ = v;
  f.sign_ = (v > 0) - (v < 0);
  f.log_ = false;
  return f;
}

FunValue FunValue::fromLog(double logAbs, int sign) noexcept {
  FunValue f;
  f.v_ = logAbs;
  f.sign_ = sign;
  f.log_ = true;
  return f;
}

FunValue FunValue::scaled(double v, double exponent, bool forceLog) noexcept {
  if (v == 0.0) return plain(0.0);
  const int s = (v > 0) - (v < 0);
  const double la = std::log(std::abs(v)) + exponent;
  if (!forceLog && la < 690.0 && la > -690.0) return plain(v * std::exp(exponent));
  return fromLog(la, s);
}

double FunValue::value() const noexcept {
  if (!log_) return v_;
  return sign_ * std::exp(v_);
}

double FunValue::logAbs() const noexcept {
  if (log_) return v_;
  return v_ == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(v_));
}

namespace specfun {

RadialBasis::RadialBasis(Dimension d)
    : d_(d.value()), dPrime_(d.value()), order_(d.value() / 2.0 - 1.0), potential_(false) {}

RadialBasis::RadialBasis(Dimension d, PotentialParams pot)
    : d_(d.value()), dPrime_(pot.dPrime), order_(pot.dPrime / 2.0 - 1.0), potential_(true) {
  if (!(d.value() > 2.0)) {
    throw ParameterError("inverse-square potential requires d > 2");
  }
}

RadialValues RadialBasis::scaled(double r) const {
  if (!(r > 0.0)) throw DomainError("radial functions need r > 0, got " + std::to_string(r));
  const auto b = besselScaled(order_, r);
  const double pre = std::pow(r, 1.0 - d_ / 2.0);
  RadialValues v;
  v.k = pre * b.k;
  v.l = pre * b.i;
  if (!potential_) {
    // l' = r^{1-d/2} I_{d/2},  k' = -r^{1-d/2} K_{d/2}
    v.lp = pre * b.i1;
    v.kp = -pre * b.k1;
  } else {
    const double s = (dPrime_ - d_) / (2.0 * r);
    v.lp = pre * (b.i1 + s * b.i);
    v.kp = pre * (-b.k1 + s * b.k);
  }
  return v;
}

ScaledRatios RadialBasis::scaledRatios(double r) const {
  const auto v = scaled(r);
  ScaledRatios q;
  q.A = v.l / v.k;
  q.B = v.lp / v.kp;
  q.C = q.A + q.B;
  q.D = q.A - q.B;
  return q;
}

namespace {

KL toKL(const RadialValues& v, double r) {
  const bool logForm = r > 30.0;
  return {FunValue::scaled(v.k, -r, logForm), FunValue::scaled(v.l, r, logForm),
          FunValue::scaled(v.kp, -r, logForm), FunValue::scaled(v.lp, r, logForm)};
}

}  // namespace

KL littleKL(Dimension d, double r) { return toKL(RadialBasis(d).scaled(r), r); }

KL littleKLPotential(Dimension d, PotentialParams pot, double r) {
  return toKL(RadialBasis(d, pot).scaled(r), r);
}

Ratios ratios(Dimension d, double r) {
  const auto q = RadialBasis(d).scaledRatios(r);
  const bool logForm = r >= 1.0;
  const double e = 2.0 * r;
  return {FunValue::scaled(q.A, e, logForm), FunValue::scaled(q.B, e, logForm),
          FunValue::scaled(q.C, e, logForm), FunValue::scaled(q.D, e, logForm)};
}

double wronskianConstant(Dimension d) {
  const auto v = RadialBasis(d).scaled(1.0);
  const double w = v.l * v.kp - v.k * v.lp;  // scale factors cancel
  return 1.0 / w;
}

double ratioAtZero(Dimension d) {
  if (d.value() >= 2.0) return 0.0;
  // l(0) / k(0) with l ~ 2^mu / Gamma(1-mu), k ~ 2^{mu-1} Gamma(mu), mu = 1 - d/2
  return 2.0 * std::sin(std::numbers::pi * d.value() / 2.0) / std::numbers::pi;
}

SignReport signProfile(Dimension d) {
  const RadialBasis basis(d);
  const double dv = d.value();
  // r k' + (d-2) k = -r^{2-d/2} K_{|d/2-2|}(r)
  const double shiftedOrder = std::abs(dv / 2.0 - 2.0);
  constexpr int kSamples = 600;
  const double lo = std::log(1e-4);
  const double hi = std::log(50.0);

  SignReport rep;
  for (int n = 0; n < kSamples; ++n) {
    const double r = std::exp(lo + (hi - lo) * n / (kSamples - 1));
    const auto v = basis.scaled(r);
    const auto q = basis.scaledRatios(r);
    const double w = -std::pow(r, 2.0 - dv / 2.0) * besselScaled(shiftedOrder, r).k;
    const std::array<double, 8> vals = {v.k, v.l, v.kp, v.lp, q.A, q.B, q.D, w};
    for (std::size_t j = 0; j < vals.size(); ++j) {
      const int s = (vals[j] > 0) - (vals[j] < 0);
      if (n == 0) {
        rep.signs[j] = s;
      } else if (s != rep.signs[j]) {
        throw PropertyViolation(std::string("sign change of ") + SignReport::kNames[j] +
                                " at r = " + std::to_string(r) + " for d = " + std::to_string(dv));
      }
    }
    ++rep.samples;
  }
  return rep;
}

double fitLogLogSlope(const std::vector<double>& r, const std::vector<double>& f) {
  const std::size_t n = r.size();
  if (n < 2 || f.size() != n) throw ParameterError("fitLogLogSlope: need >= 2 matching samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(r[i]);
    const double y = std::log(std::abs(f[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

std::vector<double> logSamples(double lo, double hi, int n) {
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = lo * std::pow(hi / lo, static_cast<double>(j) / (n - 1));
  return r;
}

double fitAgainstLog(const std::vector<double>& r, const std::vector<double>& f) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double x = std::log(r[i]);
    sx += x;
    sy += f[i];
    sxx += x * x;
    sxy += x * f[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

std::vector<EnvelopeFit> envelopeTable(Dimension d) {
  const RadialBasis basis(d);
  const double dv = d.value();
  const bool two = std::abs(dv - 2.0) < 1e-12;
  const auto small = logSamples(1e-5, 1e-4, 12);
  const auto large = logSamples(1e3, 1e4, 12);

  // columns: k, k', l, l', A, B, D
  auto sample = [&](const std::vector<double>& rs, bool unscale) {
    std::array<std::vector<double>, 7> cols;
    for (double r : rs) {
      const auto v = basis.scaled(r);
      const auto q = basis.scaledRatios(r);
      const double em = unscale ? std::exp(-r) : 1.0;
      const double ep = unscale ? std::exp(r) : 1.0;
      const std::array<double, 7> row = {v.k * em,  v.kp * em,        v.l * ep,        v.lp * ep,
                                         q.A * ep * ep, q.B * ep * ep, q.D * ep * ep};
      for (std::size_t j = 0; j < row.size(); ++j) cols[j].push_back(row[j]);
    }
    return cols;
  };
  static constexpr std::array<const char*, 7> names = {"k", "k'", "l", "l'", "A", "B", "D"};

  std::vector<EnvelopeFit> out;
  const auto s = sample(small, true);
  const double lowK = dv > 2.0 ? 2.0 - dv : 0.0;
  const double lowA = dv > 2.0 ? dv - 2.0 : 0.0;
  const std::array<double, 7> predSmall = {lowK, 1.0 - dv, 0.0, 1.0, lowA, dv, lowA};
  for (std::size_t j = 0; j < names.size(); ++j) {
    EnvelopeFit e{names[j], "small", predSmall[j], 0.0};
    if (two && (j == 0 || j == 4 || j == 6)) {
      // k ~ -log r and A, D ~ -1/log r: slope of k, 1/A, 1/D against log r
      std::vector<double> f = s[j];
      if (j != 0) {
        for (double& v : f) v = 1.0 / v;
      }
      e.quantity = j == 0 ? "k" : std::string("1/") + names[j];
      e.regime = "small-log";
      e.predicted = -1.0;
      e.fitted = fitAgainstLog(small, f);
    } else {
      e.fitted = fitLogLogSlope(small, s[j]);
    }
    out.push_back(e);
  }
  const auto l = sample(large, false);
  const double half = (1.0 - dv) / 2.0;
  const std::array<double, 7> predLarge = {half, half, half, half, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < names.size(); ++j) {
    out.push_back({names[j], "large", predLarge[j], fitLogLogSlope(large, l[j])});
  }
  return out;
}

std::vector<EnvelopeFit> envelopeTablePotential(Dimension d, PotentialParams pot) {
  const RadialBasis basis(d, pot);
  const double dv = d.value();
  const auto small = logSamples(1e-5, 1e-4, 12);
  std::vector<double> k, l;
  for (double r : small) {
    const auto v = basis.scaled(r);
    k.push_back(v.k * std::exp(-r));
    l.push_back(v.l * std::exp(r));
  }
  return {{"k", "small", 2.0 - (dv + pot.dPrime) / 2.0, fitLogLogSlope(small, k)},
          {"l", "small", (pot.dPrime - dv) / 2.0, fitLogLogSlope(small, l)}};
}

}  // namespace specfun
}  // namespace radial
