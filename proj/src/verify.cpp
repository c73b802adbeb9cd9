#include "sqwell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqwell/pressure.hpp"
#include "sqwell/well.hpp"

namespace sqwell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOracleGridPoints = 100000;  // per branch / window
constexpr double kOracleShrink = 1e-9;
constexpr double kIdentityTolerance = 1e-12;

// Plain bisection, deliberately separate from the solver's implementation.
template <class F>
double bisect(const F& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <class F>
void scanWindow(const F& f, double lo, double hi, std::vector<double>& roots) {
  if (!(lo < hi)) return;
  for (const Bracket& b : gridScanRoots(f, lo, hi, kOracleGridPoints))
    roots.push_back(bisect(f, b.lo, b.hi));
}

Check makeCheck(std::string name, double expected, double computed,
                double residual, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.expected = expected;
  c.computed = computed;
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual < tolerance;
  return c;
}

std::string rangeTag(int nLo, int nHi) {
  return "[n=" + std::to_string(nLo) + ".." + std::to_string(nHi) + "]";
}

}  // namespace

std::vector<double> oracleL0Roots(int n) {
  if (n < 1) throw DomainError("well strength n must be >= 1");
  const double sqrtN = std::sqrt(static_cast<double>(n));
  auto f = [n](double xi) {
    return std::sqrt(n - xi * xi) + xi * std::cos(xi) / std::sin(xi);
  };
  std::vector<double> roots;
  for (int k = 0;; ++k) {
    const double branchLo = (2 * k + 1) * kPi / 2.0;
    if (branchLo >= sqrtN) break;
    const double lo = branchLo + kOracleShrink;
    const double hi = std::min((k + 1) * kPi, sqrtN) - kOracleShrink;
    scanWindow(f, lo, hi, roots);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> oracleL1Roots(int n) {
  if (n < 1) throw DomainError("well strength n must be >= 1");
  const double sqrtN = std::sqrt(static_cast<double>(n));
  auto f = [n](double xi) {
    const double eta = std::sqrt(n - xi * xi);
    const double cot = std::cos(xi) / std::sin(xi);
    return cot / xi - 1.0 / (xi * xi) - 1.0 / eta - 1.0 / (eta * eta);
  };
  std::vector<double> roots;
  for (int m = 0; m * kPi < sqrtN; ++m) {
    // The condition is finite as xi -> 0 but its floating evaluation
    // cancels catastrophically there; start above 1e-6, where it is still
    // bounded away from zero.
    const double lo = std::max(m * kPi + kOracleShrink, 1e-6);
    const double hi = std::min((m + 1) * kPi, sqrtN) - kOracleShrink;
    scanWindow(f, lo, hi, roots);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

VerificationReport runIdentitySuite(int nLo, int nHi) {
  VerificationReport report;
  if (nLo > nHi) return report;
  if (nLo < 3 || nHi > 200)
    throw DomainError("identity suite range must lie within [3, 200]");

  std::vector<BoundState> groundStates;
  double circleResidual = 0.0;
  double oracleRootGap = 0.0;
  int countMismatches = 0;

  for (int n = nLo; n <= nHi; ++n) {
    const auto states = solveL0(WellSpec::fromStrength(n));
    const auto oracle = oracleL0Roots(n);
    const int lawCount = l0BranchCount(n);
    if (static_cast<int>(states.size()) != lawCount ||
        oracle.size() != states.size())
      ++countMismatches;
    for (std::size_t i = 0; i < states.size() && i < oracle.size(); ++i)
      oracleRootGap = std::max(oracleRootGap, std::abs(states[i].xi - oracle[i]));
    for (const auto& s : states) {
      const double circle = std::abs(s.xi * s.xi + s.eta * s.eta - s.n) / s.n;
      circleResidual = std::max(circleResidual, circle);
    }
    if (!states.empty()) groundStates.push_back(states.front());
  }

  double identityA = 0.0;
  double identityB = 0.0;
  double identityC = 0.0;
  int signLawViolations = 0;
  long pairsChecked = 0;

  for (const auto& s : groundStates) {
    const double ion = ionizationPressure(s).value;
    const double internal = internalPressure(s).value;
    identityC = std::max(identityC, std::abs(ion - internal) /
                                        std::max(internal, 1e-30));
  }
  for (const auto& s1 : groundStates) {
    for (const auto& s2 : groundStates) {
      if (s1.n == s2.n) continue;
      ++pairsChecked;
      const bool allowed = transitionAllowed(s1, s2);
      const double rawDiff =
          internalPressure(s1).value - internalPressure(s2).value;
      if (allowed != (rawDiff >= 0.0)) ++signLawViolations;
      if (!allowed) continue;
      const double xiForm = transitionPressureXi(s1, s2).value;
      const double energyForm = transitionPressureEnergy(s1, s2).value;
      const double scale = std::max(std::abs(xiForm), 1e-30);
      identityA = std::max(identityA, std::abs(xiForm - rawDiff) / scale);
      identityB = std::max(identityB, std::abs(xiForm - energyForm) / scale);
    }
  }

  const std::string tag = rangeTag(nLo, nHi);
  report.checks.push_back(makeCheck("root_count_law" + tag, 0.0,
                                    countMismatches, countMismatches, 0.5));
  report.checks.push_back(makeCheck("oracle_root_agreement" + tag, 0.0,
                                    oracleRootGap, oracleRootGap, 1e-10));
  report.checks.push_back(makeCheck("circle_constraint" + tag, 0.0,
                                    circleResidual, circleResidual,
                                    kIdentityTolerance));
  report.checks.push_back(makeCheck("identity_xi_vs_internal_diff" + tag, 0.0,
                                    identityA, identityA, kIdentityTolerance));
  report.checks.push_back(makeCheck("identity_xi_vs_energy_form" + tag, 0.0,
                                    identityB, identityB, kIdentityTolerance));
  report.checks.push_back(makeCheck("identity_ionization_vs_internal" + tag,
                                    0.0, identityC, identityC,
                                    kIdentityTolerance));
  report.checks.push_back(makeCheck(
      "sign_law_violations" + tag + " (pairs=" + std::to_string(pairsChecked) +
          ")",
      0.0, signLawViolations, signLawViolations, 0.5));
  return report;
}

VerificationReport reproduceReferenceValues() {
  VerificationReport report;
  const auto state = [](int n) {
    return solveL0(WellSpec::fromStrength(n)).front();
  };
  const BoundState s3 = state(3);
  const BoundState s4 = state(4);
  const BoundState s5 = state(5);
  const BoundState s6 = state(6);

  const double p34 = transitionPressureXi(s3, s4).value;
  const double p45 = transitionPressureXi(s4, s5).value;
  const double ion3 = ionizationPressure(s3).value;
  const double ion6 = ionizationPressure(s6).value;

  const double tol = 1e-3;
  report.checks.push_back(
      makeCheck("P_tr(3->4)", 0.204, p34, std::abs(p34 - 0.204), tol));
  report.checks.push_back(
      makeCheck("P_tr(4->5)", 0.124, p45, std::abs(p45 - 0.124), tol));
  report.checks.push_back(
      makeCheck("P_ion(n=3)", 0.653, ion3, std::abs(ion3 - 0.653), tol));
  report.deviations.push_back({"P_ion(n=6)", 0.4931, ion6});
  return report;
}

}  // namespace sqwell
