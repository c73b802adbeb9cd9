#include "sqwell/eos.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace sqwell {

namespace {

constexpr double kInvertToleranceX = 1e-12;
constexpr int kInvertMaxIterations = 200;
constexpr int kMonotoneSamples = 512;

void validateParams(const EosParams& params) {
  if (!(params.b0 > 0.0)) throw DomainError("B0 must be positive");
  if (!(params.rho0 > 0.0)) throw DomainError("rho0 must be positive");
}

}  // namespace

double bmPressure(const EosParams& params, double x) {
  validateParams(params);
  if (!(x > 0.0)) throw DomainError("density ratio x must be positive");
  const double x23 = std::cbrt(x * x);
  const double correction =
      1.0 + 0.75 * (params.b0prime - 4.0) * (x23 - 1.0);
  const double compression = x * x23 * (x23 - 1.0);  // x^{7/3} - x^{5/3}
  return 1.5 * params.b0 * correction * compression;
}

double bmDiffExact(const EosParams& params, double rho1, double rho2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0))
    throw DomainError("densities must be positive");
  return bmPressure(params, rho2 / params.rho0) -
         bmPressure(params, rho1 / params.rho0);
}

double bmDiffApprox(const EosParams& params, double rho1, double rho2) {
  validateParams(params);
  if (!(rho1 > 0.0) || !(rho2 > 0.0))
    throw DomainError("densities must be positive");
  const double d = (rho2 - rho1) / params.rho0;
  const double r1 = rho1 / params.rho0;
  return (params.b0prime / 4.0 - 1.0) *
         (4.5 * params.b0 * d * d * d + 13.5 * params.b0 * r1 * d * d);
}

double bmInvert(const EosParams& params, double p, double xMax) {
  validateParams(params);
  if (!(xMax > 1.0)) throw DomainError("xMax must exceed 1");
  if (!(p >= 0.0)) throw OutOfRangeError("target pressure must be >= 0");

  double prev = 0.0;  // bmPressure at x = 1
  for (int i = 1; i <= kMonotoneSamples; ++i) {
    const double x = 1.0 + (xMax - 1.0) * static_cast<double>(i) / kMonotoneSamples;
    const double value = bmPressure(params, x);
    if (!(value > prev))
      throw NonMonotoneError("EOS is not strictly increasing on [1, " +
                             std::to_string(xMax) + "] near x = " +
                             std::to_string(x));
    prev = value;
  }

  if (p == 0.0) return 1.0;
  const double pMax = bmPressure(params, xMax);
  if (p > pMax)
    throw OutOfRangeError("target pressure " + std::to_string(p) +
                          " exceeds EOS value at xMax");

  double lo = 1.0;
  double hi = xMax;
  int iter = 0;
  while (hi - lo > kInvertToleranceX && iter < kInvertMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (bmPressure(params, mid) < p)
      lo = mid;
    else
      hi = mid;
    ++iter;
  }
  return 0.5 * (lo + hi);
}

DensityJump densityJumpForTransition(const EosParams& params, double rho1,
                                     double ptr, double xMax) {
  validateParams(params);
  if (!(rho1 > 0.0)) throw DomainError("rho1 must be positive");
  if (!(ptr >= 0.0)) throw DomainError("transition pressure must be >= 0");

  DensityJump jump;
  jump.rho1 = rho1;
  if (ptr == 0.0) {
    jump.rho2 = rho1;
    jump.delta = 0.0;
    jump.exactDiff = 0.0;
    jump.approxDiff = 0.0;
    return jump;
  }
  const double p1 = bmPressure(params, rho1 / params.rho0);
  const double x2 = bmInvert(params, p1 + ptr, xMax);
  jump.rho2 = x2 * params.rho0;
  jump.delta = jump.rho2 - jump.rho1;
  jump.exactDiff = bmDiffExact(params, jump.rho1, jump.rho2);
  jump.approxDiff = bmDiffApprox(params, jump.rho1, jump.rho2);
  return jump;
}

std::vector<Material> loadMaterialFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open material file: " + path);
  std::vector<Material> materials;
  std::string line;
  int lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Material m;
    if (!(fields >> m.name)) continue;  // blank or comment-only line
    if (!(fields >> m.params.b0 >> m.params.b0prime >> m.params.rho0))
      throw Error("material file " + path + " line " +
                  std::to_string(lineNumber) +
                  ": expected fields name B0 B0prime rho0");
    std::string extra;
    if (fields >> extra)
      throw Error("material file " + path + " line " +
                  std::to_string(lineNumber) + ": trailing field '" + extra +
                  "'");
    validateParams(m.params);
    materials.push_back(std::move(m));
  }
  return materials;
}

const Material& findMaterial(const std::vector<Material>& materials,
                             const std::string& name) {
  for (const auto& m : materials)
    if (m.name == name) return m;
  throw DomainError("material '" + name + "' not found");
}

}  // namespace sqwell
