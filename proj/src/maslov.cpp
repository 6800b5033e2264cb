#include "qmd/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmd {

namespace {

constexpr double kPi = std::numbers::pi;
// Angles closer than this to a multiple of pi are treated as crossings.
constexpr double kSnap = 1e-9;

double nearest_rep(double angle, double previous) {
  return angle + kPi * std::round((previous - angle) / kPi);
}

bool at_multiple(double phi) { return std::abs(phi - kPi * std::round(phi / kPi)) <= kSnap; }

int sign_of(double v) { return v > 0 ? 1 : -1; }

}  // namespace

std::string HalfInteger::str() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

void LagrangianLinePath::validate() const {
  if (times.size() != angles.size()) throw PathError("path: times and angles differ in length");
  if (times.size() < 2) throw PathError("path: need at least two samples");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(angles[i])) throw PathError("path: non-finite sample");
    if (i > 0 && !(times[i] > times[i - 1])) throw PathError("path: times must increase strictly");
  }
  if (std::abs(times.front()) > 1e-12 || std::abs(times.back() - 1.0) > 1e-12)
    throw PathError("path: times must run from 0 to 1");
  // A step of exactly a quarter turn has two nearest lifts.
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double step = std::abs(nearest_rep(angles[i], angles[i - 1]) - angles[i - 1]);
    if (std::abs(step - kPi / 2) <= kSnap) throw PathError("path: consecutive samples a quarter turn apart are ambiguous");
  }
}

std::vector<double> LagrangianLinePath::lifted() const {
  std::vector<double> out(angles.size());
  out[0] = angles[0] - kPi * std::floor(angles[0] / kPi);
  for (std::size_t i = 1; i < angles.size(); ++i) out[i] = nearest_rep(angles[i], out[i - 1]);
  return out;
}

double LagrangianLinePath::lift_at(double t) const {
  const auto lift = lifted();
  if (t <= times.front()) return lift.front();
  if (t >= times.back()) return lift.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  const double u = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return lift[j - 1] + u * (lift[j] - lift[j - 1]);
}

namespace {

double interp(const std::vector<double>& times, const std::vector<double>& lift, double t) {
  if (t <= times.front()) return lift.front();
  if (t >= times.back()) return lift.back();
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - times.begin());
  const double u = (t - times[j - 1]) / (times[j] - times[j - 1]);
  return lift[j - 1] + u * (lift[j] - lift[j - 1]);
}

}  // namespace

MaslovResult maslov_crossings(const LagrangianLinePath& g, const LagrangianLinePath& g2, double tol) {
  g.validate();
  g2.validate();
  const auto la = g.lifted();
  const auto lb = g2.lifted();
  std::vector<double> ts = g.times;
  ts.insert(ts.end(), g2.times.begin(), g2.times.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(), [](double a, double b) { return std::abs(a - b) <= 1e-15; }), ts.end());

  const std::size_t m = ts.size();
  std::vector<double> phi(m);
  for (std::size_t j = 0; j < m; ++j) phi[j] = interp(g.times, la, ts[j]) - interp(g2.times, lb, ts[j]);

  MaslovResult r;
  const bool all_on = std::all_of(phi.begin(), phi.end(), at_multiple) &&
                      std::all_of(phi.begin(), phi.end(), [&](double v) {
                        return std::round(v / kPi) == std::round(phi.front() / kPi);
                      });
  if (all_on) {
    r.identically_crossing = true;
    return r;
  }

  std::vector<double> slope(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) slope[j] = (phi[j + 1] - phi[j]) / (ts[j + 1] - ts[j]);

  long twice = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (!at_multiple(phi[j])) continue;
    CrossingRecord c;
    c.time = ts[j];
    if (j == 0 || j == m - 1) {
      const double v = j == 0 ? slope.front() : slope.back();
      if (std::abs(v) <= tol) throw NonRegularCrossingError("tangential crossing at t = " + std::to_string(ts[j]));
      c.endpoint = true;
      c.sign = sign_of(v);
      c.half_units = c.sign;
    } else {
      const double vl = slope[j - 1], vr = slope[j];
      if (std::abs(vl) <= tol || std::abs(vr) <= tol)
        throw NonRegularCrossingError("tangential crossing at t = " + std::to_string(ts[j]));
      c.sign = sign_of(vr);
      c.half_units = sign_of(vl) + sign_of(vr);
    }
    twice += c.half_units;
    r.crossings.push_back(c);
  }
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double lo = std::min(phi[j], phi[j + 1]);
    const double hi = std::max(phi[j], phi[j + 1]);
    for (double k = std::ceil(lo / kPi); k * kPi <= hi; k += 1.0) {
      const double target = k * kPi;
      if (std::abs(target - phi[j]) <= kSnap || std::abs(target - phi[j + 1]) <= kSnap) continue;
      CrossingRecord c;
      c.time = ts[j] + (target - phi[j]) / slope[j];
      c.sign = sign_of(slope[j]);
      c.half_units = 2 * c.sign;
      twice += c.half_units;
      r.crossings.push_back(c);
    }
  }
  std::sort(r.crossings.begin(), r.crossings.end(),
            [](const CrossingRecord& a, const CrossingRecord& b) { return a.time < b.time; });
  r.index.twice = twice;
  return r;
}

HalfInteger maslov(const LagrangianLinePath& g, const LagrangianLinePath& g2, double tol) {
  return maslov_crossings(g, g2, tol).index;
}

LagrangianLinePath concat(const LagrangianLinePath& g1, const LagrangianLinePath& g2) {
  g1.validate();
  g2.validate();
  const auto a = g1.lifted();
  auto b = g2.lifted();
  const double shift = a.back() - b.front();
  if (!at_multiple(shift)) throw PathError("concat: first path does not end where the second begins");
  const double k = kPi * std::round(shift / kPi);
  LagrangianLinePath out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.times.push_back(0.5 * g1.times[i]);
    out.angles.push_back(a[i]);
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    out.times.push_back(0.5 + 0.5 * g2.times[i]);
    out.angles.push_back(b[i] + k);
  }
  out.times.back() = 1.0;
  return out;
}

LagrangianLinePath reverse(const LagrangianLinePath& g) {
  g.validate();
  const auto lift = g.lifted();
  LagrangianLinePath out;
  for (std::size_t i = g.times.size(); i-- > 0;) {
    out.times.push_back(1.0 - g.times[i]);
    out.angles.push_back(lift[i]);
  }
  out.times.front() = 0.0;
  out.times.back() = 1.0;
  return out;
}

LagrangianLinePath conjugate(const LagrangianLinePath& g, const Matrix2& m, int subdivisions) {
  g.validate();
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (std::abs(det - 1.0) > 1e-12) throw std::invalid_argument("conjugate: matrix is not symplectic (det != 1)");
  if (subdivisions < 1) throw std::invalid_argument("conjugate: subdivisions must be positive");
  const auto lift = g.lifted();
  auto image = [&](double theta) {
    const double x = std::cos(theta), y = std::sin(theta);
    return std::atan2(m[1][0] * x + m[1][1] * y, m[0][0] * x + m[0][1] * y);
  };
  LagrangianLinePath out;
  double prev = 0.0;
  for (std::size_t j = 0; j + 1 < g.times.size(); ++j) {
    for (int s = 0; s < subdivisions; ++s) {
      const double u = static_cast<double>(s) / subdivisions;
      const double theta = lift[j] + u * (lift[j + 1] - lift[j]);
      const double a = image(theta);
      const double rep = out.angles.empty() ? a - kPi * std::floor(a / kPi) : nearest_rep(a, prev);
      out.times.push_back(g.times[j] + u * (g.times[j + 1] - g.times[j]));
      out.angles.push_back(rep);
      prev = rep;
    }
  }
  out.times.push_back(1.0);
  out.angles.push_back(nearest_rep(image(lift.back()), prev));
  return out;
}

long index_shift(HalfInteger i_c, long dim_c) {
  if (dim_c < 0) throw CoherenceError("index_shift: negative dimension");
  const long diff = i_c.twice - dim_c;
  if (diff % 2 != 0) throw CoherenceError("index_shift: 2i and dim C have different parity");
  return diff / 2;
}

int intersection_dim(const LagrangianLinePath& g, const LagrangianLinePath& g2, double t, double tol) {
  const double phi = g.lift_at(t) - g2.lift_at(t);
  return std::abs(phi - kPi * std::round(phi / kPi)) <= tol ? 1 : 0;
}

}  // namespace qmd
