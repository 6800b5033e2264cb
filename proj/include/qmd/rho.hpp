#pragma once

#include <stdexcept>

namespace qmd {

/// Cutoff profile for the flattening perturbation: rho(x) = 0 for x <= delta/2,
/// rho(x) = x for x >= delta, and 0 < rho' < 3 in between.
///
/// With t = (x - delta/2)/(delta/2) the derivative ramps from 0 up to a plateau
/// of height 2.5 over t in [0, 1/4], holds it, and comes down to 1 over
/// [3/4, 1]. Both ramps use the quintic smoothstep, so rho is C^3 and the
/// plateau height is fixed by requiring rho(delta) = delta.
class Rho {
public:
  explicit Rho(double delta);

  double delta() const { return delta_; }
  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  static constexpr double kPlateau = 2.5;
  static constexpr double kRamp = 0.25;

private:
  double delta_;
};

}  // namespace qmd
