#include "pslab/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "pslab/errors.hpp"

namespace pslab {

double FourMomentum::invariant_mass_squared() const {
  return (E - p[0]) * (E + p[0]) - p[1] * p[1] - p[2] * p[2];
}

double FourMomentum::shell_residual(double m) const { return invariant_mass_squared() - m * m; }

double mass_shell_energy(const std::array<double, 3>& p, double m, Sheet sheet) {
  if (m < 0.0) throw DomainError("rest mass must be non-negative");
  const double e = std::hypot(m, std::hypot(p[0], p[1], p[2]));
  return sheet == Sheet::Particle ? e : -e;
}

FourMomentum on_shell(const std::array<double, 3>& p, double m, Sheet sheet) {
  return {mass_shell_energy(p, m, sheet), p};
}

double celerity(double v) {
  if (!(std::abs(v) < 1.0)) {
    std::ostringstream os;
    os << "speed " << v << " is not below the speed of light";
    throw SpeedLimitError(os.str());
  }
  return std::atanh(v);
}

double speed_from_celerity(double chi) { return std::tanh(chi); }

double lorentz_factor(double v) { return std::cosh(celerity(v)); }

double add_velocities(double v1, double v2, double alpha) {
  const double c1 = celerity(v1);
  const double c2 = celerity(v2);
  const double ca = std::cos(alpha);
  if (ca == 1.0) return std::tanh(c1 + c2);
  if (ca == -1.0) return std::tanh(c1 - c2);
  // Signed speeds fold into the celerities; the result is a speed.
  const double ch = std::cosh(c1) * std::cosh(c2) + std::sinh(c1) * std::sinh(c2) * ca;
  return std::tanh(std::acosh(std::max(1.0, ch)));
}

FourMomentum boost(const FourMomentum& P, double chi, int axis) {
  if (axis < 0 || axis > 2) throw DimensionError("boost axis must be 0, 1 or 2");
  const double c = std::cosh(chi), s = std::sinh(chi);
  FourMomentum out = P;
  out.E = c * P.E + s * P.p[axis];
  out.p[axis] = s * P.E + c * P.p[axis];
  return out;
}

}  // namespace pslab
