#pragma once

#include <vector>

namespace bjpa {

/// Normalized pump drive. delta = (omega_p - omega_eff)/kappa, zeta is the
/// drive-weighted Kerr strength (K/kappa)|a_in/sqrt(kappa)|^2. The pump
/// phase enters the scattering matrix as exp(2 i phase).
struct PumpDrive {
  double delta = 0.0;
  double zeta = 0.0;
  double pump_phase = 0.0;
};

/// Real non-negative photon-number roots of the steady-state cubic
///   zeta^2 n^3 - 2 delta zeta n^2 + (1/4 + delta^2) n - 1 = 0,
/// ascending, each with its slope-criterion stability.
struct RootSet {
  struct Root {
    double n = 0.0;
    bool stable = false;
  };
  std::vector<Root> roots;
  bool bistable = false;        // exactly three distinct positive roots
  bool has_double_root = false; // two roots merged within the merge tolerance
};

/// Accepted residual of the cubic at a reported root.
inline constexpr double kRootResidualTol = 1e-9;
/// Roots closer than this are merged and flagged as a double root.
inline constexpr double kRootMergeTol = 1e-10;

/// Left-hand side of the steady-state cubic and its n-derivative.
double cubic_lhs(const PumpDrive& drive, double n);
double cubic_slope(const PumpDrive& drive, double n);

/// All physical roots via companion-matrix eigenvalues plus Newton polish.
/// zeta == 0 degenerates to the Lorentzian n = 1/(1/4 + delta^2).
RootSet photon_number_roots(const PumpDrive& drive);

/// Slope criterion: a root is stable iff d/dn of the cubic LHS is positive.
bool root_stability(const PumpDrive& drive, double n);

/// Number of distinct positive real roots at (delta, zeta); the raw
/// companion-matrix count used as the bifurcation oracle.
int count_positive_roots(double delta, double zeta);

/// Critical nonlinearity magnitude 1/sqrt(27); bistability exists only for
/// |zeta| above this value.
constexpr double bifurcation_threshold() { return 0.19245008972987525; }

/// Recovers the threshold numerically: bisection over |zeta| on the
/// root-count oracle, probing the analytically known fold corridor.
double find_bifurcation_threshold(double tol = 1e-8);

enum class BranchPolicy { low_stable, high_stable };
enum class Branch { low, high };

/// A selected steady state: drive, photon number, branch and stability.
struct OperatingPoint {
  PumpDrive drive;
  double n = 0.0;
  Branch branch = Branch::low;
  bool stable = true;
};

/// Picks the smallest (low_stable) or largest (high_stable) stable root.
OperatingPoint select_branch(const PumpDrive& drive, const RootSet& roots,
                             BranchPolicy policy = BranchPolicy::low_stable);

/// photon_number_roots + select_branch in one call.
OperatingPoint solve_operating_point(const PumpDrive& drive,
                                     BranchPolicy policy = BranchPolicy::low_stable);

}  // namespace bjpa
