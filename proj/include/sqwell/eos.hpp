#pragma once

#include <string>
#include <vector>

#include "sqwell/errors.hpp"

namespace sqwell {

// Third-order Birch-Murnaghan equation of state,
//
//   P(x) = (3*B0/2) [1 + (3/4)(B0'-4)(x^{2/3}-1)] [x^{7/3} - x^{5/3}],
//
// with x = rho/rho0. Pressures are in the same unit as B0, densities in
// the same unit as rho0.

struct EosParams {
  double b0 = 0.0;       // bulk modulus
  double b0prime = 0.0;  // pressure derivative of B0, dimensionless
  double rho0 = 0.0;     // reference density
};

/// A density discontinuity with both pressure-difference evaluations.
struct DensityJump {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double delta = 0.0;       // rho2 - rho1
  double exactDiff = 0.0;   // P(rho2) - P(rho1) from the full EOS
  double approxDiff = 0.0;  // truncated expansion in delta/rho0
};

/// A named parameter set read from a material file.
struct Material {
  std::string name;
  EosParams params;
};

/// Forward EOS evaluation at density ratio x > 0.
double bmPressure(const EosParams& params, double x);

/// Exact pressure difference P(rho2) - P(rho1).
double bmDiffExact(const EosParams& params, double rho1, double rho2);

/// Truncated expansion of the pressure difference in delta = rho2 - rho1:
/// (B0'/4 - 1) [ (9*B0/2)(delta/rho0)^3 + (27*B0/2)(rho1/rho0)(delta/rho0)^2 ].
/// Kept verbatim at this order; its gap to bmDiffExact is reported by the
/// callers, never assumed small.
double bmDiffApprox(const EosParams& params, double rho1, double rho2);

/// Inverts the EOS on the compression branch: the x in [1, xMax] with
/// bmPressure(x) = p, to 1e-12 in x. Throws OutOfRangeError when p lies
/// outside [0, bmPressure(xMax)] and NonMonotoneError when a sampled check
/// finds bmPressure non-increasing on [1, xMax].
double bmInvert(const EosParams& params, double p, double xMax = 10.0);

/// Finds rho2 with bmDiffExact(rho1, rho2) = ptr and reports the jump
/// together with the truncated-expansion value. Propagates bmInvert errors.
DensityJump densityJumpForTransition(const EosParams& params, double rho1,
                                     double ptr, double xMax = 10.0);

/// Reads a material file: one record per line, whitespace-separated fields
/// name, B0, B0prime, rho0; '#' starts a comment. Unit choices are the
/// file author's and are expected to be documented in its header comments.
std::vector<Material> loadMaterialFile(const std::string& path);

/// Looks a material up by name; throws DomainError when absent.
const Material& findMaterial(const std::vector<Material>& materials,
                             const std::string& name);

}  // namespace sqwell
