#pragma once

#include <optional>
#include <vector>

#include "sqwell/errors.hpp"

namespace sqwell {

// Bound states of the 3D finite spherical square well (depth V0, radius a,
// particle mass m) in dimensionless form. With the interior/exterior wave
// numbers scaled by the radius,
//
//   xi = a * sqrt(2m(V0-|E|))/hbar,   eta = a * sqrt(2m|E|)/hbar,
//
// every bound level lies on the circle xi^2 + eta^2 = 2 m V0 a^2 / hbar^2.
// The squared circle radius is the well-strength integer n, which doubles
// as the level's main quantum number. For l = 0 the quantization condition
// reads sqrt(n - xi^2) + xi*cot(xi) = 0; for l = 1 it is
// cot(xi)/xi - 1/xi^2 = 1/eta + 1/eta^2 on the same circle.

/// Physical parameters of a well, SI units.
struct PhysicalWell {
  double mass;    // kg
  double depth;   // J
  double radius;  // m
};

/// A well identified by its integer strength n = 2*m*V0*a^2/hbar^2.
struct WellSpec {
  int n = 0;
  /// The real-valued strength before rounding; equals n when the spec was
  /// built from the integer directly.
  double strengthExact = 0.0;
  std::optional<PhysicalWell> physical;

  /// Builds a spec from the integer strength alone. Throws DomainError
  /// for n < 1.
  static WellSpec fromStrength(int n);
};

/// One solved level in dimensionless variables.
struct BoundState {
  int l = 0;       // angular momentum quantum number, 0 or 1
  int branch = 0;  // branch index k; for l=0, xi in ((2k+1)pi/2, (k+1)pi)
  int n = 0;       // well strength it was solved under
  double xi = 0.0;
  double eta = 0.0;
  double energyFraction = 0.0;  // |E|/V0 = 1 - xi^2/n, in (0,1)
  /// True when n - xi^2 < 1e-9. Marginal states have vanishing binding
  /// energy and are excluded from pressure computations.
  bool marginal = false;
};

/// Threshold on n - xi^2 below which a root counts as marginal.
inline constexpr double kMarginalThreshold = 1e-9;

/// Derives the integer well strength from a physical triple.
/// Records the exact real strength 2*m*V0*a^2/hbar^2 alongside the nearest
/// integer. Throws RoundingError when the exact value is farther than
/// roundingTol from that integer, DomainError for non-positive inputs or a
/// nearest integer below 1.
WellSpec wellStrengthFromPhysical(double mass, double depth, double radius,
                                  double roundingTol);

/// Solves the l=0 quantization condition on every admissible branch.
/// Returns roots sorted ascending in xi; empty when sqrt(n) <= pi/2.
/// tol bounds both the final bracket width (capped at 1e-13 from above)
/// and the residual |sqrt(n-xi^2) + xi*cot(xi)| of each root; throws
/// ToleranceNotReached when either cannot be met.
std::vector<BoundState> solveL0(const WellSpec& spec, double tol = 1e-10);

/// Solves the l=1 system by scanning xi in (0, sqrt(n)) for sign changes
/// of cot(xi)/xi - 1/xi^2 - 1/eta - 1/eta^2 with eta = sqrt(n - xi^2),
/// then bisecting each bracket. gridPerUnit sets the scan resolution.
std::vector<BoundState> solveL1(const WellSpec& spec, double tol = 1e-10,
                                double gridPerUnit = 1e4);

/// Binding-energy fraction |E|/V0 = 1 - xi^2/n for a root of the given
/// well. Throws DomainError unless 0 < xi^2 < n.
double energyFromXi(const WellSpec& spec, double xi);

/// Left-hand side of the l=0 quantization condition at the given xi.
double l0QuantizationResidual(int n, double xi);

/// Left-hand side of the l=1 quantization condition (single-variable form)
/// at the given xi.
double l1QuantizationResidual(int n, double xi);

/// Number of l=0 branches the strength n admits:
/// #{ k >= 0 : (2k+1)*pi/2 < sqrt(n) }.
int l0BranchCount(int n);

}  // namespace sqwell
