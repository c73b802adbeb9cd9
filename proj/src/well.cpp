#include "sqwell/well.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sqwell/constants.hpp"

namespace sqwell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEndpointShrink = 1e-9;  // keep cot away from its poles
constexpr int kMaxBisectIterations = 200;
constexpr double kBracketWidthTarget = 1e-13;

double cotangent(double x) { return std::cos(x) / std::sin(x); }

// d/dxi of the l=0 condition; strictly negative on every branch.
double l0Derivative(int n, double xi) {
  const double eta2 = static_cast<double>(n) - xi * xi;
  const double c = cotangent(xi);
  return -xi / std::sqrt(eta2) + c - xi * (1.0 + c * c);
}

double l1Derivative(int n, double xi) {
  const double eta2 = static_cast<double>(n) - xi * xi;
  const double eta = std::sqrt(eta2);
  const double c = cotangent(xi);
  const double csc2 = 1.0 + c * c;
  return (-csc2 * xi - c) / (xi * xi) + 2.0 / (xi * xi * xi) -
         xi / (eta2 * eta) - 2.0 * xi / (eta2 * eta2);
}

struct RootResult {
  double x;
  double residual;
};

// Bisects f on [lo, hi] (f(lo) and f(hi) of opposite sign), then applies a
// single Newton polish. tol bounds the accepted residual; the bracket is
// shrunk to min(tol, kBracketWidthTarget) or to adjacent doubles.
template <class F, class DF>
RootResult bisectWithPolish(const F& f, const DF& df, double lo, double hi,
                            double tol, const std::string& what) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0};
  if (fhi == 0.0) return {hi, 0.0};
  if ((flo > 0.0) == (fhi > 0.0))
    throw ToleranceNotReached(what + ": bracket endpoints do not straddle zero");

  const double widthTarget = std::min(tol, kBracketWidthTarget);
  int iter = 0;
  while (hi - lo > widthTarget && iter < kMaxBisectIterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket reached adjacent doubles
    const double fmid = f(mid);
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    ++iter;
  }
  if (hi - lo > std::max(widthTarget, tol))
    throw ToleranceNotReached(what + ": bracket did not shrink to tolerance");

  double x = 0.5 * (lo + hi);
  double fx = f(x);
  const double d = df(x);
  if (d != 0.0 && std::isfinite(d)) {
    const double polished = x - fx / d;
    if (polished > lo && polished < hi) {
      const double fpolished = f(polished);
      if (std::abs(fpolished) < std::abs(fx)) {
        x = polished;
        fx = fpolished;
      }
    }
  }
  if (!(std::abs(fx) < tol))
    throw ToleranceNotReached(what + ": residual " + std::to_string(fx) +
                              " exceeds tolerance");
  return {x, fx};
}

BoundState makeState(int l, int branch, int n, double xi) {
  BoundState s;
  s.l = l;
  s.branch = branch;
  s.n = n;
  s.xi = xi;
  const double eta2 = static_cast<double>(n) - xi * xi;
  s.eta = std::sqrt(eta2);
  s.energyFraction = 1.0 - xi * xi / static_cast<double>(n);
  s.marginal = eta2 < kMarginalThreshold;
  return s;
}

void validateSpec(const WellSpec& spec) {
  if (spec.n < 1) throw DomainError("well strength n must be >= 1");
}

}  // namespace

WellSpec WellSpec::fromStrength(int n) {
  if (n < 1) throw DomainError("well strength n must be >= 1");
  WellSpec spec;
  spec.n = n;
  spec.strengthExact = static_cast<double>(n);
  return spec;
}

WellSpec wellStrengthFromPhysical(double mass, double depth, double radius,
                                  double roundingTol) {
  if (!(mass > 0.0) || !(depth > 0.0) || !(radius > 0.0))
    throw DomainError("mass, depth and radius must all be positive");
  const double hbar = constants::kHbar;
  const double strength = 2.0 * mass * depth * radius * radius / (hbar * hbar);
  const double rounded = std::round(strength);
  if (rounded < 1.0)
    throw DomainError("physical triple yields well strength below 1");
  if (std::abs(strength - rounded) > roundingTol)
    throw RoundingError("well strength " + std::to_string(strength) +
                        " is not an integer within tolerance " +
                        std::to_string(roundingTol));
  WellSpec spec;
  spec.n = static_cast<int>(rounded);
  spec.strengthExact = strength;
  spec.physical = PhysicalWell{mass, depth, radius};
  return spec;
}

double l0QuantizationResidual(int n, double xi) {
  return std::sqrt(static_cast<double>(n) - xi * xi) + xi * cotangent(xi);
}

double l1QuantizationResidual(int n, double xi) {
  const double eta = std::sqrt(static_cast<double>(n) - xi * xi);
  return cotangent(xi) / xi - 1.0 / (xi * xi) - 1.0 / eta - 1.0 / (eta * eta);
}

int l0BranchCount(int n) {
  const double sqrtN = std::sqrt(static_cast<double>(n));
  int count = 0;
  while ((2 * count + 1) * kPi / 2.0 < sqrtN) ++count;
  return count;
}

std::vector<BoundState> solveL0(const WellSpec& spec, double tol) {
  validateSpec(spec);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int n = spec.n;
  const double sqrtN = std::sqrt(static_cast<double>(n));
  std::vector<BoundState> states;

  for (int k = 0; k < l0BranchCount(n); ++k) {
    const double lo = (2 * k + 1) * kPi / 2.0 + kEndpointShrink;
    const double hi = std::min((k + 1) * kPi, sqrtN) - kEndpointShrink;
    if (lo >= hi) continue;
    auto f = [n](double xi) { return l0QuantizationResidual(n, xi); };
    auto df = [n](double xi) { return l0Derivative(n, xi); };
    // f decreases strictly across the branch: f(lo) = eta(lo) > 0 and
    // f(hi) < 0, so each admissible branch carries exactly one root.
    const RootResult root =
        bisectWithPolish(f, df, lo, hi, tol, "solveL0 n=" + std::to_string(n));
    states.push_back(makeState(0, k, n, root.x));
  }
  std::sort(states.begin(), states.end(),
            [](const BoundState& a, const BoundState& b) { return a.xi < b.xi; });
  return states;
}

std::vector<BoundState> solveL1(const WellSpec& spec, double tol,
                                double gridPerUnit) {
  validateSpec(spec);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!(gridPerUnit >= 2.0)) throw DomainError("gridPerUnit must be >= 2");
  const int n = spec.n;
  const double sqrtN = std::sqrt(static_cast<double>(n));
  std::vector<BoundState> states;

  // Scan each pole-free window (m*pi, (m+1)*pi) intersected with
  // (0, sqrt(n)). Below ~1e-6 the condition suffers catastrophic
  // cancellation in cot(xi)/xi - 1/xi^2, so the scan starts there; the
  // condition is bounded away from zero on all of (0, pi) regardless.
  auto f = [n](double xi) { return l1QuantizationResidual(n, xi); };
  auto df = [n](double xi) { return l1Derivative(n, xi); };

  for (int m = 0; m * kPi < sqrtN; ++m) {
    const double lo = std::max(m * kPi + kEndpointShrink, 1e-6);
    const double hi = std::min((m + 1) * kPi, sqrtN) - kEndpointShrink;
    if (lo >= hi) continue;
    const int cells = std::max(2, static_cast<int>(std::ceil((hi - lo) * gridPerUnit)));
    double xPrev = lo;
    double fPrev = f(xPrev);
    for (int i = 1; i <= cells; ++i) {
      const double x = lo + (hi - lo) * static_cast<double>(i) / cells;
      const double fx = f(x);
      if ((fPrev > 0.0) != (fx > 0.0)) {
        const RootResult root = bisectWithPolish(
            f, df, xPrev, x, tol, "solveL1 n=" + std::to_string(n));
        states.push_back(makeState(1, 0, n, root.x));
      }
      xPrev = x;
      fPrev = fx;
    }
  }
  std::sort(states.begin(), states.end(),
            [](const BoundState& a, const BoundState& b) { return a.xi < b.xi; });
  // Branch index counts roots from the bottom when windows hold several.
  for (std::size_t i = 0; i < states.size(); ++i)
    states[i].branch = static_cast<int>(i);
  return states;
}

double energyFromXi(const WellSpec& spec, double xi) {
  validateSpec(spec);
  if (!(xi > 0.0)) throw DomainError("xi must be positive");
  const double n = static_cast<double>(spec.n);
  if (!(xi * xi < n))
    throw DomainError("xi^2 >= n: state is not bound");
  return 1.0 - xi * xi / n;
}

}  // namespace sqwell
