#include "bjpa/steady_state.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "bjpa/errors.hpp"

namespace bjpa {

namespace {

// Relative imaginary-part tolerance for calling a companion eigenvalue real.
constexpr double kImagTol = 1e-8;

// Up to three Newton steps; companion eigenvalues are already close, the
// polish exists for accuracy near nearly-degenerate roots.
double polish_root(const PumpDrive& drive, double x) {
  for (int it = 0; it < 3; ++it) {
    const double f = cubic_lhs(drive, x);
    const double df = cubic_slope(drive, x);
    if (df == 0.0) break;
    const double step = f / df;
    x -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

std::vector<double> real_positive_roots(const PumpDrive& drive) {
  std::vector<double> out;
  if (drive.zeta == 0.0) {
    out.push_back(1.0 / (0.25 + drive.delta * drive.delta));
    return out;
  }

  // Monic form of zeta^2 n^3 - 2 delta zeta n^2 + (1/4 + delta^2) n - 1.
  const double a = drive.zeta * drive.zeta;
  const double c2 = -2.0 * drive.delta * drive.zeta / a;
  const double c1 = (0.25 + drive.delta * drive.delta) / a;
  const double c0 = -1.0 / a;

  Eigen::Matrix3d companion;
  companion << 0, 0, -c0,
               1, 0, -c1,
               0, 1, -c2;
  Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, /*computeEigenvectors=*/false);

  for (int i = 0; i < 3; ++i) {
    const auto ev = solver.eigenvalues()(i);
    if (std::abs(ev.imag()) > kImagTol * std::max(1.0, std::abs(ev.real()))) continue;
    double n = polish_root(drive, ev.real());
    if (n < 0.0) {
      if (n > -1e-12) n = 0.0; else continue;
    }
    if (std::abs(cubic_lhs(drive, n)) > kRootResidualTol) continue;
    out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

double cubic_lhs(const PumpDrive& drive, double n) {
  const double z = drive.zeta;
  const double d = drive.delta;
  return ((z * z * n - 2.0 * d * z) * n + (0.25 + d * d)) * n - 1.0;
}

double cubic_slope(const PumpDrive& drive, double n) {
  const double z = drive.zeta;
  const double d = drive.delta;
  return 3.0 * z * z * n * n - 4.0 * d * z * n + 0.25 + d * d;
}

bool root_stability(const PumpDrive& drive, double n) {
  return cubic_slope(drive, n) > 0.0;
}

RootSet photon_number_roots(const PumpDrive& drive) {
  if (!std::isfinite(drive.delta) || !std::isfinite(drive.zeta))
    throw ConfigError("pump drive must be finite");

  std::vector<double> ns = real_positive_roots(drive);

  RootSet set;
  for (double n : ns) {
    if (!set.roots.empty() && n - set.roots.back().n < kRootMergeTol) {
      set.has_double_root = true;
      continue;
    }
    set.roots.push_back({n, root_stability(drive, n)});
  }
  if (set.roots.empty()) {
    // The cubic always crosses zero at least once for finite drives; if all
    // candidates were rejected something went numerically wrong.
    throw ComputeError("no steady-state root passed the residual check");
  }
  set.bistable = set.roots.size() == 3;
  return set;
}

int count_positive_roots(double delta, double zeta) {
  PumpDrive drive{delta, zeta, 0.0};
  std::vector<double> ns = real_positive_roots(drive);
  int distinct = 0;
  double last = -1.0;
  for (double n : ns) {
    if (distinct == 0 || n - last >= kRootMergeTol) ++distinct;
    last = n;
  }
  return distinct;
}

double find_bifurcation_threshold(double tol) {
  // For |zeta| above threshold the response folds; the bistable window in
  // delta always contains the point on the fold corridor at n = 3, namely
  // delta = 3 zeta + sqrt((4-3)/3)/2 (positive-zeta convention).
  const auto bistable = [](double zeta_mag) {
    const double probe = 3.0 * zeta_mag + 0.5 / std::sqrt(3.0);
    return count_positive_roots(probe, zeta_mag) == 3;
  };

  double lo = 0.15;   // monostable for every delta
  double hi = 0.25;   // bistable window exists
  if (bistable(lo) || !bistable(hi))
    throw ComputeError("bifurcation bracket invalid");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (bistable(mid)) hi = mid; else lo = mid;
  }
  return 0.5 * (lo + hi);
}

OperatingPoint select_branch(const PumpDrive& drive, const RootSet& roots, BranchPolicy policy) {
  if (roots.roots.empty()) throw ComputeError("empty root set");

  const RootSet::Root* chosen = nullptr;
  if (policy == BranchPolicy::low_stable) {
    for (const auto& r : roots.roots) {
      if (r.stable) { chosen = &r; break; }
    }
  } else {
    for (auto it = roots.roots.rbegin(); it != roots.roots.rend(); ++it) {
      if (it->stable) { chosen = &*it; break; }
    }
  }
  if (chosen == nullptr) chosen = &roots.roots.front();  // all-unstable fallback

  OperatingPoint op;
  op.drive = drive;
  op.n = chosen->n;
  op.stable = chosen->stable;
  op.branch = (chosen == &roots.roots.front()) ? Branch::low : Branch::high;
  return op;
}

OperatingPoint solve_operating_point(const PumpDrive& drive, BranchPolicy policy) {
  return select_branch(drive, photon_number_roots(drive), policy);
}

}  // namespace bjpa
