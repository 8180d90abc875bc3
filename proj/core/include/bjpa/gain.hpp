#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "bjpa/steady_state.hpp"

namespace bjpa {

/// Normalized signal detuning Delta = (omega_s - omega_p)/kappa.
struct SignalProbe {
  double big_delta = 0.0;
};

/// The 2x2 linearized-fluctuation system matrix acting on (da, da^+).
struct ScatterMatrix {
  Eigen::Matrix2cd m;
};

struct GainResult {
  std::complex<double> g_signal;
  std::complex<double> g_idler;
  double g_signal_db = 0.0;  // 20 log10 |g_signal|
  double g_idler_db = 0.0;
};

/// Operating points this close to parametric oscillation are treated as
/// singular rather than inverted.
inline constexpr double kMinDeterminant = 1e-14;
/// Gains above this are recorded as saturated in sweep output.
inline constexpr double kSaturationDb = 60.0;

/// Builds the scattering matrix
///   [ i(-d - D + 2 z n) + 1/2      i z n e^{ 2 i phi} ]
///   [       -i z n e^{-2 i phi}    i(d - D - 2 z n) + 1/2 ]
/// with d, z, n from the operating point and D from the probe.
ScatterMatrix scattering_matrix(const OperatingPoint& op, const SignalProbe& probe);

/// Inverts the scattering system; with W = m^-1 the signal gain is
/// W(0,0) - 1 (reflection minus input) and the idler gain is W(0,1).
/// Throws ComputeError when |det m| < kMinDeterminant.
GainResult signal_idler_gain(const ScatterMatrix& m);

/// scattering_matrix + signal_idler_gain.
GainResult gain_at(const OperatingPoint& op, double big_delta);

/// One grid cell of a (zeta, delta, Delta) gain map.
struct GainMapPoint {
  double delta = 0.0;
  double zeta = 0.0;
  double big_delta = 0.0;
  int root_index = 0;
  double n = 0.0;
  bool stable = true;
  bool bistable = false;
  double g_signal_db = 0.0;
  double g_idler_db = 0.0;
  bool saturated = false;
};

/// Evaluates the gain over the Cartesian grid, zeta outermost then delta
/// then Delta; one operating point (low_stable by default) per (delta,
/// zeta). Near-singular points are clipped to kSaturationDb and marked
/// saturated instead of failing. Output order is independent of `workers`.
std::vector<GainMapPoint> gain_map(const std::vector<double>& deltas,
                                   const std::vector<double>& zetas,
                                   const std::vector<double>& big_deltas,
                                   double pump_phase = 0.0,
                                   BranchPolicy policy = BranchPolicy::low_stable,
                                   unsigned workers = 0);

}  // namespace bjpa
