#include "qmd/rho.hpp"

namespace qmd {

namespace {

double smoothstep(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double smoothstep_slope(double u) { return 30.0 * u * u * (1.0 - u) * (1.0 - u); }
// Antiderivative of smoothstep vanishing at 0.
double smoothstep_integral(double u) { return u * u * u * u * (2.5 + u * (-3.0 + u)); }

constexpr double P = Rho::kPlateau;
constexpr double A = Rho::kRamp;

// Derivative profile and its antiderivative in the rescaled variable t in [0,1].
double r(double t) {
  if (t <= A) return P * smoothstep(t / A);
  if (t <= 1.0 - A) return P;
  return P - (P - 1.0) * smoothstep((t - (1.0 - A)) / A);
}

double r_slope(double t) {
  if (t <= A) return P * smoothstep_slope(t / A) / A;
  if (t <= 1.0 - A) return 0.0;
  return -(P - 1.0) * smoothstep_slope((t - (1.0 - A)) / A) / A;
}

double R(double t) {
  if (t <= A) return P * A * smoothstep_integral(t / A);
  const double up = P * A * 0.5;
  if (t <= 1.0 - A) return up + P * (t - A);
  const double s = t - (1.0 - A);
  return up + P * (1.0 - 2.0 * A) + P * s - (P - 1.0) * A * smoothstep_integral(s / A);
}

}  // namespace

Rho::Rho(double delta) : delta_(delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("rho: delta must be positive");
}

double Rho::operator()(double x) const {
  const double half = 0.5 * delta_;
  if (x <= half) return 0.0;
  if (x >= delta_) return x;
  return half * R((x - half) / half);
}

double Rho::derivative(double x) const {
  const double half = 0.5 * delta_;
  if (x <= half) return 0.0;
  if (x >= delta_) return 1.0;
  return r((x - half) / half);
}

double Rho::second_derivative(double x) const {
  const double half = 0.5 * delta_;
  if (x <= half || x >= delta_) return 0.0;
  return r_slope((x - half) / half) / half;
}

}  // namespace qmd
