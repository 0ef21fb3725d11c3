#include "sturmet/contour.hpp"

#include <cmath>

namespace sturmet {

void ContourSpec::validate() const {
  if (kind == ContourKind::ComplexParabola) {
    if (alpha == 0.0) throw Error("ContourSpec: parabola requires alpha != 0");
    if (beta < 0.0) throw Error("ContourSpec: parabola requires beta >= 0");
  }
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(gamma))
    throw Error("ContourSpec: non-finite shape parameter");
}

ContourSpec ContourSpec::real_half_line() {
  ContourSpec s;
  s.kind = ContourKind::RealHalfLine;
  s.alpha = 1.0;
  s.beta = 0.0;
  s.gamma = 0.0;
  return s;
}

ContourSpec ContourSpec::parabola(double alpha, double beta, double gamma) {
  ContourSpec s;
  s.kind = ContourKind::ComplexParabola;
  s.alpha = alpha;
  s.beta = beta;
  s.gamma = gamma;
  return s;
}

Complex contour_point(const ContourSpec& spec, double x) {
  if (spec.kind == ContourKind::RealHalfLine) return Complex{x, 0.0};
  return Complex{spec.alpha * x, spec.beta * x * x - spec.gamma};
}

Complex contour_derivative(const ContourSpec& spec, double x) {
  if (spec.kind == ContourKind::RealHalfLine) return Complex{1.0, 0.0};
  return Complex{spec.alpha, 2.0 * spec.beta * x};
}

Grid make_grid(double x_min, double x_max, int n_interior) {
  if (!(x_max > x_min)) throw InvalidGrid("make_grid: need x_max > x_min");
  if (n_interior < 3) throw InvalidGrid("make_grid: need n_interior >= 3");
  if (!std::isfinite(x_min) || !std::isfinite(x_max))
    throw InvalidGrid("make_grid: non-finite endpoint");

  Grid g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n_interior = n_interior;
  const double m = static_cast<double>(n_interior + 1);
  g.h = (x_max - x_min) / m;
  g.nodes.resize(n_interior);
  // Blend form keeps the node set exactly reflection-symmetric when
  // x_min = -x_max, which the discrete PT checks rely on.
  for (int j = 1; j <= n_interior; ++j)
    g.nodes[j - 1] = (x_min * (m - j) + x_max * j) / m;
  return g;
}

}  // namespace sturmet
