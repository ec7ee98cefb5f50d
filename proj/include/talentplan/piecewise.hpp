#pragma once

namespace talentplan::lin {

/// Chord interpolation of s^2 over breakpoints {0, 1/2, 1}; exact at the
/// breakpoints, overestimates by at most 1/16 in between.
double square_chord_unit(double s);

/// Chord interpolation of s^2 over breakpoints {-1/2, 0, 1/2}.
double square_chord_half(double s);

/// Value the three-breakpoint product approximation assigns to x*y for
/// x, y in [0,1]: chord((x+y)/2)^2 - chord((x-y)/2)^2 in the separable form.
/// The absolute error against the true product is at most 1/8.
double piecewise_product_value(double x, double y);

}  // namespace talentplan::lin
