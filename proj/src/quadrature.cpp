#include "radial/quadrature.hpp"

#include <array>
#include <cmath>

namespace radial::quad {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights at the odd-indexed Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {k * h, std::abs((k - g) * h), 15};
}

Estimate panels(const std::function<double(double)>& f, const std::vector<double>& breaks) {
  Estimate total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const auto e = gk15(f, breaks[i], breaks[i + 1]);
    total.value += e.value;
    total.error += e.error;
    total.evaluations += e.evaluations;
  }
  return total;
}

}  // namespace radial::quad
