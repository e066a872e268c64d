#include "radial/opnorm.hpp"

#include <algorithm>
#include <cmath>

#include "radial/errors.hpp"

namespace radial {

namespace {

Eigen::VectorXd weighted(const Eigen::VectorXd& f, const std::vector<double>& w) {
  Eigen::VectorXd g(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) g[i] = f[i] * w[i];
  return g;
}

double norm(const Eigen::VectorXd& f, double p, const std::vector<double>& w) {
  double mx = f.cwiseAbs().maxCoeff();
  if (mx == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) s += std::pow(std::abs(f[i]) / mx, p) * w[i];
  return mx * std::pow(s, 1.0 / p);
}

// sign(g)|g|^{p-1} / ||g||_p^{p-1}: unit vector in L^{p'} norming g.
Eigen::VectorXd dual(const Eigen::VectorXd& g, double p, const std::vector<double>& w) {
  const double n = norm(g, p, w);
  Eigen::VectorXd h(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double t = g[i] / n;
    h[i] = std::copysign(std::pow(std::abs(t), p - 1.0), t);
  }
  return h;
}

Eigen::VectorXd toEigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<ProbeFunction> probeFamily(const WeightedGrid& g, double p) {
  std::vector<ProbeFunction> out;
  const double crit = g.d() / p;
  const bool twoSided = g.domain() == DomainKind::BrokenLine || g.domain() == DomainKind::FullLine;
  auto addSides = [&](ProbeFunction f) {
    if (twoSided) {
      ProbeFunction odd = f, pos = f;
      odd.name += ",odd";
      pos.name += ",positive";
      const auto& x = g.nodes();
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) {
          odd.values[i] = -odd.values[i];
          pos.values[i] = 0.0;
        }
      }
      out.push_back(std::move(odd));
      out.push_back(std::move(pos));
    }
    out.push_back(std::move(f));
  };
  for (double shift : {-1.0, -0.3, -0.1, -0.03, 0.0, 0.03, 0.1, 0.3, 1.0}) {
    addSides(ProbeFunction::powerLaw(g, crit + shift));
  }
  addSides(ProbeFunction::yLogY(g));
  const double lo = g.innerCut();
  for (double a = lo; a < g.R(); a *= 4.0) {
    addSides(ProbeFunction::indicator(g, a, std::min(2.0 * a, g.R())));
  }
  for (double a = lo; a < g.R(); a *= 10.0) addSides(ProbeFunction::indicator(g, lo, 10.0 * a));
  return out;
}

}  // namespace

DenseGridOperator::DenseGridOperator(Eigen::MatrixXd T, std::vector<double> weights)
    : GridOperator(std::move(weights)), T_(std::move(T)) {
  if (T_.rows() != T_.cols() || static_cast<std::size_t>(T_.rows()) != w_.size()) {
    throw ParameterError("kernel matrix does not match grid weights");
  }
}

Eigen::VectorXd DenseGridOperator::apply(const Eigen::VectorXd& f) const {
  return T_ * weighted(f, w_);
}

Eigen::VectorXd DenseGridOperator::applyAdjoint(const Eigen::VectorXd& g) const {
  return T_.transpose() * weighted(g, w_);
}

DenseGridOperator DenseGridOperator::transposed() const {
  return DenseGridOperator(T_.transpose(), w_);
}

LowRankGridOperator::LowRankGridOperator(Eigen::MatrixXd U, Eigen::MatrixXd V,
                                         Eigen::VectorXd alpha, Eigen::VectorXd beta,
                                         Eigen::VectorXd side, std::vector<double> weights)
    : GridOperator(std::move(weights)),
      U_(std::move(U)),
      V_(std::move(V)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      side_(std::move(side)) {
  const auto n = static_cast<Eigen::Index>(w_.size());
  if (U_.rows() != n || V_.rows() != n || U_.cols() != V_.cols() || alpha_.size() != U_.cols() ||
      beta_.size() != U_.cols() || side_.size() != n) {
    throw ParameterError("inconsistent low-rank kernel factors");
  }
}

void LowRankGridOperator::addRankOne(Eigen::VectorXd P, Eigen::VectorXd Q, double gamma) {
  P_ = std::move(P);
  Q_ = std::move(Q);
  gamma_ = gamma;
}

Eigen::VectorXd LowRankGridOperator::apply(const Eigen::VectorXd& f) const {
  const Eigen::VectorXd wf = weighted(f, w_);
  const Eigen::VectorXd swf = side_.cwiseProduct(wf);
  Eigen::VectorXd out = U_ * alpha_.cwiseProduct(V_.transpose() * wf);
  out += side_.cwiseProduct(U_ * beta_.cwiseProduct(V_.transpose() * swf));
  if (gamma_ != 0.0) out += (gamma_ * Q_.dot(wf)) * P_;
  return out;
}

Eigen::VectorXd LowRankGridOperator::applyAdjoint(const Eigen::VectorXd& g) const {
  const Eigen::VectorXd wg = weighted(g, w_);
  const Eigen::VectorXd swg = side_.cwiseProduct(wg);
  Eigen::VectorXd out = V_ * alpha_.cwiseProduct(U_.transpose() * wg);
  out += side_.cwiseProduct(V_ * beta_.cwiseProduct(U_.transpose() * swg));
  if (gamma_ != 0.0) out += (gamma_ * P_.dot(wg)) * Q_;
  return out;
}

Eigen::MatrixXd LowRankGridOperator::dense() const {
  Eigen::MatrixXd T = U_ * alpha_.asDiagonal() * V_.transpose();
  T += side_.asDiagonal() * (U_ * beta_.asDiagonal() * V_.transpose()) * side_.asDiagonal();
  if (gamma_ != 0.0) T += gamma_ * P_ * Q_.transpose();
  return T;
}

double probeRatio(const GridOperator& A, const WeightedGrid& grid, const std::vector<double>& f,
                  double p) {
  if (!(p > 1.0)) throw ParameterError("operator norms need p > 1");
  if (f.size() != A.size() || grid.size() != A.size()) {
    throw ParameterError("probe does not match operator size");
  }
  const Eigen::VectorXd v = toEigen(f);
  const double nf = norm(v, p, A.weights());
  if (nf == 0.0) return 0.0;
  return norm(A.apply(v), p, A.weights()) / nf;
}

NormEstimate opNormEstimate(const GridOperator& A, const WeightedGrid& grid, double p,
                            const NormOptions& opt) {
  if (!(p > 1.0)) throw ParameterError("operator norms need p > 1");
  if (grid.size() != A.size()) throw ParameterError("grid does not match operator size");
  auto probes = probeFamily(grid, p);
  probes.insert(probes.end(), opt.probes.begin(), opt.probes.end());
  NormOptions o = opt;
  o.probes = std::move(probes);
  return opNormEstimate(A, p, o);
}

NormEstimate opNormEstimate(const GridOperator& A, double p, const NormOptions& opt) {
  if (!(p > 1.0)) throw ParameterError("operator norms need p > 1");
  const auto& w = A.weights();
  const auto& probes = opt.probes;

  NormEstimate best;
  const ProbeFunction* start = nullptr;
  for (const auto& pr : probes) {
    if (pr.values.size() != A.size()) throw ParameterError("probe does not match operator size");
    const Eigen::VectorXd v = toEigen(pr.values);
    const double nf = norm(v, p, w);
    const double r = nf > 0.0 ? norm(A.apply(v), p, w) / nf : 0.0;
    if (r > best.value) {
      best.value = r;
      best.method = "probe:" + pr.name;
      start = &pr;
    }
  }
  if (!opt.powerIteration || start == nullptr) return best;

  const double q = p / (p - 1.0);
  Eigen::VectorXd f = toEigen(start->values);
  f /= norm(f, p, w);
  int it = 0;
  bool converged = false;
  double last = 0.0;
  for (; it < opt.maxIterations; ++it) {
    const Eigen::VectorXd g = A.apply(f);
    const double est = norm(g, p, w);
    if (!std::isfinite(est)) break;
    if (est > best.value) {
      best.value = est;
      best.method = "power";
    }
    const Eigen::VectorXd z = A.applyAdjoint(dual(g, p, w));
    const double zn = norm(z, q, w);
    double zf = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) zf += z[i] * f[i] * w[i];
    if (zn <= zf * (1.0 + opt.tolerance) || std::abs(est - last) <= opt.tolerance * est) {
      converged = true;
      ++it;
      break;
    }
    last = est;
    f = dual(z, q, w);
  }
  best.iterations = it;
  best.converged = converged;
  return best;
}

double spectralNorm(const DenseGridOperator& A) {
  const auto& w = A.weights();
  Eigen::VectorXd s(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) s[i] = std::sqrt(w[i]);
  const Eigen::MatrixXd B = s.asDiagonal() * A.kernel() * s.asDiagonal();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(B);
  return svd.singularValues()[0];
}

}  // namespace radial
