#include "talentplan/piecewise.hpp"

#include <algorithm>

namespace talentplan::lin {

namespace {

// Linear interpolation of s^2 over the segment [x0, x1].
double chord(double s, double x0, double x1) {
  const double t = (s - x0) / (x1 - x0);
  return (1.0 - t) * x0 * x0 + t * x1 * x1;
}

}  // namespace

double square_chord_unit(double s) {
  s = std::clamp(s, 0.0, 1.0);
  return s <= 0.5 ? chord(s, 0.0, 0.5) : chord(s, 0.5, 1.0);
}

double square_chord_half(double s) {
  s = std::clamp(s, -0.5, 0.5);
  return s <= 0.0 ? chord(s, -0.5, 0.0) : chord(s, 0.0, 0.5);
}

double piecewise_product_value(double x, double y) {
  return square_chord_unit(0.5 * (x + y)) - square_chord_half(0.5 * (x - y));
}

}  // namespace talentplan::lin
