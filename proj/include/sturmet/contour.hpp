#pragma once

#include "sturmet/types.hpp"

namespace sturmet {

enum class ContourKind { RealHalfLine, ComplexParabola };

/// Integration path for the radial coordinate.  The parabola
///   r(x) = alpha*x + i*(beta*x^2 - gamma)
/// is left-right symmetric: Re r(-x) = -Re r(x), Im r(-x) = Im r(x).
/// With gamma > 0 it passes below the origin and never touches r = 0.
struct ContourSpec {
  ContourKind kind = ContourKind::ComplexParabola;
  double alpha = 2.0;
  double beta = 1.0;
  double gamma = 1.0;

  void validate() const;

  static ContourSpec real_half_line();
  static ContourSpec parabola(double alpha = 2.0, double beta = 1.0, double gamma = 1.0);
};

/// Uniform interior grid on (x_min, x_max); both endpoints are excluded
/// (Dirichlet closure lives there).
struct Grid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_interior = 0;
  double h = 0.0;
  RealVector nodes;
};

Complex contour_point(const ContourSpec& spec, double x);
Complex contour_derivative(const ContourSpec& spec, double x);

/// Throws InvalidGrid unless x_max > x_min and n_interior >= 3.
Grid make_grid(double x_min, double x_max, int n_interior);

}  // namespace sturmet
