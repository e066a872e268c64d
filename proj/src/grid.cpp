#include "radial/grid.hpp"

#include <algorithm>
#include <cmath>

#include "radial/errors.hpp"

namespace radial {

double shellVolume(double d, double a, double b) {
  if (a <= 0.0) return std::pow(b, d) / d;
  return std::pow(a, d) * std::expm1(d * std::log(b / a)) / d;
}

WeightedGrid::WeightedGrid(DomainKind domain, Dimension d, double R, const GridOptions& opt)
    : domain_(domain), d_(d.value()), R_(R), opt_(opt) {
  const bool halfOrFull = domain == DomainKind::HalfLine || domain == DomainKind::FullLine;
  rmin_ = halfOrFull ? opt.innerCut : 1.0;
  if (!halfOrFull) opt_.origin = false;
  if (!(rmin_ > 0.0) || !(R > rmin_)) throw ParameterError("grid needs 0 < inner cut < R");
  if (opt.perDecade < 1) throw ParameterError("grid needs at least one node per decade");

  const int K = std::max(1, static_cast<int>(std::lround(opt.perDecade * std::log10(R / rmin_))));
  const double h = std::log(R / rmin_) / K;
  if (opt.maxStep <= 0.0) {
    radii_.resize(K + 1);
    for (int j = 0; j <= K; ++j) radii_[j] = rmin_ * std::exp(j * h);
    radii_.back() = R;
  } else {
    radii_.push_back(rmin_);
    for (;;) {
      const double r = radii_.back();
      const double step = std::min(r * std::expm1(h), opt.maxStep);
      if (r + 1.5 * step >= R) break;
      radii_.push_back(r + step);
    }
    radii_.push_back(R);
  }

  const std::size_t n = radii_.size();
  std::vector<double> vol(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) vol[j] = shellVolume(d_, radii_[j], radii_[j + 1]);
  const double vOrigin = opt_.origin ? shellVolume(d_, 0.0, radii_[0]) : 0.0;
  std::vector<double> side(n);
  for (std::size_t j = 0; j < n; ++j) {
    side[j] = 0.5 * ((j > 0 ? vol[j - 1] : vOrigin) + (j + 1 < n ? vol[j] : 0.0));
  }

  switch (domain) {
    case DomainKind::HalfLine:
    case DomainKind::Ray:
      if (opt_.origin) {
        nodes_.push_back(0.0);
        weights_.push_back(0.5 * vOrigin);
      }
      nodes_.insert(nodes_.end(), radii_.begin(), radii_.end());
      weights_.insert(weights_.end(), side.begin(), side.end());
      break;
    case DomainKind::FullLine:
      for (std::size_t j = n; j-- > 0;) {
        nodes_.push_back(-radii_[j]);
        weights_.push_back(side[j]);
      }
      if (opt_.origin) {
        nodes_.push_back(0.0);
        weights_.push_back(vOrigin);
      }
      nodes_.insert(nodes_.end(), radii_.begin(), radii_.end());
      weights_.insert(weights_.end(), side.begin(), side.end());
      break;
    case DomainKind::BrokenLine:
      for (std::size_t j = n; j-- > 1;) {
        nodes_.push_back(-radii_[j]);
        weights_.push_back(side[j]);
      }
      nodes_.push_back(1.0);
      weights_.push_back(2.0 * side[0]);
      nodes_.insert(nodes_.end(), radii_.begin() + 1, radii_.end());
      weights_.insert(weights_.end(), side.begin() + 1, side.end());
      break;
  }
}

WeightedGrid WeightedGrid::forOperator(const OperatorSpec& op, double R, GridOptions opt) {
  opt.origin = op.family() == Family::HalfLineDirichlet || op.family() == Family::FullLineDirichlet;
  return WeightedGrid(op.domain(), op.dimension(), R, opt);
}

double WeightedGrid::exactMass() const noexcept {
  const double inner = opt_.origin ? 0.0 : rmin_;
  const double one = shellVolume(d_, inner, R_);
  return (domain_ == DomainKind::FullLine || domain_ == DomainKind::BrokenLine) ? 2.0 * one : one;
}

namespace {

ProbeFunction sample(const WeightedGrid& g, std::string name, auto f) {
  ProbeFunction p{std::move(name), {}};
  p.values.reserve(g.size());
  for (double x : g.nodes()) p.values.push_back(f(x));
  return p;
}

}  // namespace

ProbeFunction ProbeFunction::constant(const WeightedGrid& g, double c) {
  return sample(g, "constant", [c](double) { return c; });
}

ProbeFunction ProbeFunction::powerLaw(const WeightedGrid& g, double sigma) {
  return sample(g, "power(" + std::to_string(sigma) + ")", [sigma](double x) {
    const double r = std::abs(x);
    return r > 0.0 ? std::pow(r, -sigma) : 0.0;
  });
}

ProbeFunction ProbeFunction::yLogY(const WeightedGrid& g) {
  return sample(g, "ylogy", [](double x) {
    const double r = std::abs(x);
    return r >= 2.0 ? 1.0 / (r * std::log(r)) : 0.0;
  });
}

ProbeFunction ProbeFunction::indicator(const WeightedGrid& g, double lo, double hi, int side) {
  return sample(g, "indicator", [=](double x) {
    if (side > 0 && x < 0.0) return 0.0;
    if (side < 0 && x > 0.0) return 0.0;
    const double r = std::abs(x);
    return (r >= lo && r <= hi) ? 1.0 : 0.0;
  });
}

double lpNorm(const std::vector<double>& f, double p, const WeightedGrid& g) {
  if (!(p > 1.0)) throw ParameterError("L^p norm needs p > 1");
  if (f.size() != g.size()) throw ParameterError("sampled function does not match grid");
  double s = 0.0;
  const auto& w = g.weights();
  for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]), p) * w[i];
  return std::pow(s, 1.0 / p);
}

}  // namespace radial
