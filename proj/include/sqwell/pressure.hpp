#pragma once

#include "sqwell/well.hpp"

namespace sqwell {

// Internal, transition and ionization pressures of l=0 levels in reduced
// units. The canonical unit is m*V0/(pi*hbar^2): the conjugate "volume" of
// the well is pi*a^2*V0 (surface times energy), so these pressures carry
// the physical dimension of inverse area.

/// Unit tag for every reduced pressure produced here.
inline constexpr const char* kReducedPressureUnit = "mV0/(pi*hbar^2)";

/// Unit tag after restoring the dimensional prefactor.
inline constexpr const char* kPhysicalPressureUnit = "1/m^2";

/// A dimensionless pressure coefficient in multiples of m*V0/(pi*hbar^2).
struct ReducedPressure {
  double value = 0.0;
};

/// A pressure with the prefactor restored, in inverse square metres.
struct PhysicalPressure {
  double value = 0.0;
  const char* unit = kPhysicalPressureUnit;
};

/// Both transition-pressure formulations for one ordered pair of levels.
struct TransitionReport {
  BoundState from;
  BoundState to;
  bool allowed = false;
  ReducedPressure pressureXiForm;      // from the xi ratios
  ReducedPressure pressureEnergyForm;  // from the binding-energy fractions
  double crossCheckResidual = 0.0;     // relative gap between the two forms
};

/// Internal pressure of a bound l=0 level: 2*xi^2/n^2 in reduced units.
/// Throws DomainError for l != 0, xi^2 >= n, or marginal states.
ReducedPressure internalPressure(const BoundState& state);

/// Positivity condition for a transition from s1 to s2:
/// (xi2/xi1 * n1/n2)^2 <= 1.
bool transitionAllowed(const BoundState& s1, const BoundState& s2);

/// Transition pressure in the xi form:
/// 2*(xi1^2/n1^2) * [1 - (n1/n2)^2 (xi2/xi1)^2], identically equal to
/// internalPressure(s1) - internalPressure(s2). Throws NotAllowedError
/// when the positivity condition fails.
ReducedPressure transitionPressureXi(const BoundState& s1, const BoundState& s2);

/// Transition pressure in the energy form:
/// (2/n1)(1-|E1|/V0) * [1 - (n1/n2) (V0-|E2|)/(V0-|E1|)], written with the
/// energyFraction fields. Agrees with the xi form to 1e-12 relative.
/// s2 may carry energyFraction == 1 (the well-top limit); throws
/// DomainError when |E1| = V0.
ReducedPressure transitionPressureEnergy(const BoundState& s1,
                                         const BoundState& s2);

/// Pressure needed to expel the particle: (2/n)(V0-|E|)/V0, identically
/// equal to internalPressure(state).
ReducedPressure ionizationPressure(const BoundState& state);

/// Builds the full report for an allowed ordered pair; throws
/// NotAllowedError otherwise.
TransitionReport transitionReport(const BoundState& s1, const BoundState& s2);

/// Restores the dimensional prefactor m*V0/(pi*hbar^2), yielding an
/// inverse-area pressure. mass in kg, depth in J.
PhysicalPressure toPhysical(ReducedPressure p, double mass, double depth);

}  // namespace sqwell
