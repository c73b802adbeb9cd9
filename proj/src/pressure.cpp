#include "sqwell/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sqwell/constants.hpp"

namespace sqwell {

namespace {

constexpr double kResidualFloor = 1e-30;  // denominator floor for s1 == s2

// A source level must be strictly bound and non-marginal; the formulas
// divide by its binding quantities.
void requireSourceState(const BoundState& s) {
  if (s.l != 0) throw DomainError("pressure formulas apply to l=0 levels only");
  if (s.n < 1) throw DomainError("state has invalid well strength");
  if (!(s.xi > 0.0)) throw DomainError("state has non-positive xi");
  const double eta2 = static_cast<double>(s.n) - s.xi * s.xi;
  if (!(eta2 > 0.0)) throw DomainError("xi^2 >= n: state is not bound");
  if (eta2 < kMarginalThreshold || s.marginal)
    throw DomainError("marginal state excluded from pressure computations");
}

// A target level may additionally sit at the well-top limit (xi = 0,
// energyFraction = 1).
void requireTargetState(const BoundState& s) {
  if (s.l != 0) throw DomainError("pressure formulas apply to l=0 levels only");
  if (s.n < 1) throw DomainError("state has invalid well strength");
  if (!(s.xi >= 0.0)) throw DomainError("state has negative xi");
  const double eta2 = static_cast<double>(s.n) - s.xi * s.xi;
  if (!(eta2 > 0.0)) throw DomainError("xi^2 >= n: state is not bound");
  if (s.xi > 0.0 && (eta2 < kMarginalThreshold || s.marginal))
    throw DomainError("marginal state excluded from pressure computations");
}

double internalValue(const BoundState& s) {
  const double n = static_cast<double>(s.n);
  return 2.0 * s.xi * s.xi / (n * n);
}

}  // namespace

ReducedPressure internalPressure(const BoundState& state) {
  requireSourceState(state);
  return {internalValue(state)};
}

bool transitionAllowed(const BoundState& s1, const BoundState& s2) {
  requireSourceState(s1);
  requireTargetState(s2);
  const double ratio =
      (s2.xi / s1.xi) * (static_cast<double>(s1.n) / static_cast<double>(s2.n));
  return ratio * ratio <= 1.0;
}

ReducedPressure transitionPressureXi(const BoundState& s1,
                                     const BoundState& s2) {
  if (!transitionAllowed(s1, s2))
    throw NotAllowedError("transition " + std::to_string(s1.n) + "->" +
                          std::to_string(s2.n) +
                          " requires negative pressure");
  const double n1 = static_cast<double>(s1.n);
  const double n2 = static_cast<double>(s2.n);
  const double ratio = (n1 / n2) * (s2.xi / s1.xi);
  return {2.0 * (s1.xi * s1.xi) / (n1 * n1) * (1.0 - ratio * ratio)};
}

ReducedPressure transitionPressureEnergy(const BoundState& s1,
                                         const BoundState& s2) {
  if (!transitionAllowed(s1, s2))
    throw NotAllowedError("transition " + std::to_string(s1.n) + "->" +
                          std::to_string(s2.n) +
                          " requires negative pressure");
  const double n1 = static_cast<double>(s1.n);
  const double n2 = static_cast<double>(s2.n);
  const double bind1 = 1.0 - s1.energyFraction;  // (V0 - |E1|) / V0
  const double bind2 = 1.0 - s2.energyFraction;
  if (!(bind1 > 0.0)) throw DomainError("|E1| = V0: energy form degenerates");
  return {(2.0 / n1) * bind1 * (1.0 - (n1 / n2) * (bind2 / bind1))};
}

ReducedPressure ionizationPressure(const BoundState& state) {
  requireSourceState(state);
  const double n = static_cast<double>(state.n);
  return {(2.0 / n) * (1.0 - state.energyFraction)};
}

TransitionReport transitionReport(const BoundState& s1, const BoundState& s2) {
  TransitionReport report;
  report.from = s1;
  report.to = s2;
  report.allowed = transitionAllowed(s1, s2);
  if (!report.allowed)
    throw NotAllowedError("transition " + std::to_string(s1.n) + "->" +
                          std::to_string(s2.n) +
                          " requires negative pressure");
  report.pressureXiForm = transitionPressureXi(s1, s2);
  report.pressureEnergyForm = transitionPressureEnergy(s1, s2);
  report.crossCheckResidual =
      std::abs(report.pressureXiForm.value - report.pressureEnergyForm.value) /
      std::max(report.pressureXiForm.value, kResidualFloor);
  return report;
}

PhysicalPressure toPhysical(ReducedPressure p, double mass, double depth) {
  if (!(mass > 0.0) || !(depth > 0.0))
    throw DomainError("mass and depth must be positive");
  const double hbar = constants::kHbar;
  const double prefactor = mass * depth / (std::numbers::pi * hbar * hbar);
  return {p.value * prefactor, kPhysicalPressureUnit};
}

}  // namespace sqwell
