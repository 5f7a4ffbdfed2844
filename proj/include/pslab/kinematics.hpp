#pragma once

// Special-relativistic kinematics in units with c = 1, routed through
// celerities (rapidities).

#include <array>

namespace pslab {

enum class Sheet { Particle, Antiparticle };

struct FourMomentum {
  double E = 0.0;
  std::array<double, 3> p{};

  // E^2 - |p|^2 - m^2
  double shell_residual(double m) const;
  double invariant_mass_squared() const;
  Sheet sheet() const { return E < 0.0 ? Sheet::Antiparticle : Sheet::Particle; }
};

double mass_shell_energy(const std::array<double, 3>& p, double m, Sheet sheet = Sheet::Particle);
FourMomentum on_shell(const std::array<double, 3>& p, double m, Sheet sheet = Sheet::Particle);

// chi = atanh v; throws SpeedLimitError for |v| >= 1.
double celerity(double v);
double speed_from_celerity(double chi);
// cosh chi = (1 - v^2)^(-1/2)
double lorentz_factor(double v);

// Relative speed from cosh chi = cosh chi1 cosh chi2 + sinh chi1 sinh chi2 cos(alpha).
double add_velocities(double v1, double v2, double alpha);

// Hyperbolic rotation in the (E, p_axis) plane, axis in {0, 1, 2}.
FourMomentum boost(const FourMomentum& P, double chi, int axis);

}  // namespace pslab
