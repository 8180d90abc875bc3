#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bjpa/circuit.hpp"
#include "bjpa/gain.hpp"
#include "bjpa/steady_state.hpp"

namespace bjpa {

/// Anchors normalized drives to physical powers. The paper-style plots in
/// dBm need omega_p and kappa even though the scattering problem does not.
struct PhysicalScale {
  double omega_p = 0.0;  // pump angular frequency [rad/s]
  double kappa = 0.0;    // [rad/s]

  void validate() const;
};

/// Effective model anchored to the physical scale without an eigensolve:
/// omega_eff is taken as the pump frequency, kappa from the scale, E_c from
/// the slave junction capacitance, K from the Kerr formula. This is the
/// reference parameterization used for all dBm-denominated metrics.
EffectiveModel reference_model(const BlochniumDesign& design, const PhysicalScale& scale,
                               std::optional<double> e_c_override = std::nullopt);

/// Sign-matched default pump detuning for compression metrics. |delta| is
/// kept below sqrt(3)/2 so the pump branch stays fold-free and gain varies
/// smoothly with power.
double default_metric_delta(const EffectiveModel& model);

/// dBm -> photon flux -> normalized drive:
/// P[W] = 1e-3 * 10^(dBm/10), F = P/(hbar omega_p),
/// |a_in_hat|^2 = F/kappa, zeta = (K/kappa) |a_in_hat|^2.
PumpDrive drive_from_power(double p_in_dbm, const PhysicalScale& scale,
                           const EffectiveModel& model, double delta,
                           double pump_phase = 0.0);

/// Inverse of drive_from_power for the zeta magnitude; throws ComputeError
/// when K == 0.
double power_for_zeta(double zeta, const PhysicalScale& scale, const EffectiveModel& model);

/// Gain at Delta = 0 for the low_stable operating point of a given total
/// drive power.
double gain_at_power_db(double p_dbm, const PhysicalScale& scale, const EffectiveModel& model,
                        double delta);

/// Normalized gain at Delta = 0 for the low_stable point of (delta, zeta).
double normalized_gain_db(double delta, double zeta);

/// Smallest |zeta| whose low_stable gain reaches target_db at the given
/// delta; bisection on the rising flank. Throws ComputeError (naming the
/// attainable peak) when the target exceeds the peak gain.
double find_zeta_for_gain(double delta, double target_db, double tol_db = 1e-3);

/// Smallest pump power reaching target_db (dBm).
double find_pump_power_for_gain(const EffectiveModel& model, const PhysicalScale& scale,
                                double delta, double target_db);

struct P1dBResult {
  double small_signal_gain_db = 0.0;
  double p1db_dbm = 0.0;        // signal power at 1 dB compression
  double pump_power_dbm = 0.0;  // operating pump power
  bool open_ended = false;      // no compression found below the ceiling
  double ceiling_dbm = 0.0;
};

struct CompressionOptions {
  double signal_floor_offset_db = 60.0;  // first probe, dB below the pump
  double ceiling_offset_db = 40.0;       // search ceiling, dB above the pump
  double coarse_step_db = 1.0;
  double tol_db = 0.01;  // |gain - (G0 - 1)| at the returned power
};

/// 1 dB compression point under the combined-drive convention: the signal
/// power adds to the pump power in the steady-state drive term, shifting
/// the photon number and hence the linearized gain. The crossing of
/// G0 - 1 dB is bracketed by a coarse upward sweep and refined by bisection.
P1dBResult compression_point(const EffectiveModel& model, const PhysicalScale& scale,
                             double pump_power_dbm, double delta,
                             const CompressionOptions& options = {});

/// Full width in Delta (units of kappa) over which the signal gain stays
/// within 3 dB of its Delta = 0 peak. Throws ComputeError when the peak is
/// below 3 dB.
double bandwidth_3db(const OperatingPoint& op, double tol = 1e-6);

struct TuningPoint {
  double flux_bias = 0.0;
  double omega_eff_ghz = 0.0;
  double gain_db = 0.0;
  double bandwidth_ghz = 0.0;
  bool overlaps_previous = false;  // -3 dB interval intersects the previous point's
};

struct TuningCurve {
  std::vector<TuningPoint> points;
  bool any_overlap = false;
};

struct BandCoverageOptions {
  int n_points = 10;
  double gain_target_db = 20.0;
  std::optional<double> delta;  // default sign-matched 0.85
  std::optional<double> e_c_override;
};

/// Sweeps the flux bias so the eigensolved mode frequency spans
/// [band_low_ghz, band_high_ghz] (descending from phi = 0); records gain
/// and bandwidth per point and flags adjacent spectral overlap. Throws
/// ComputeError listing the reachable range when the band is out of reach.
TuningCurve band_coverage(const BlochniumDesign& design, const PhysicalScale& scale,
                          double band_low_ghz, double band_high_ghz,
                          const BandCoverageOptions& options = {});

struct DesignComparison {
  P1dBResult a;
  P1dBResult b;
  bool a_ok = false;
  bool b_ok = false;
  std::string a_error;
  std::string b_error;
  double p1db_difference_db = 0.0;  // a minus b, valid when both ok
};

/// Matches both designs at gain_target_db under the same physical scale and
/// compares their compression points. A plain JJ array is encoded as
/// M = 1, alpha_c = 0.
DesignComparison compare_designs(const BlochniumDesign& a, const BlochniumDesign& b,
                                 const PhysicalScale& scale, double gain_target_db,
                                 std::optional<double> delta = std::nullopt,
                                 std::optional<double> e_c_override = std::nullopt);

}  // namespace bjpa
