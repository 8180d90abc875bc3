#include "bjpa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bjpa/constants.hpp"
#include "bjpa/errors.hpp"

namespace bjpa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts / 1e-3); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void PhysicalScale::validate() const {
  if (!(omega_p > 0.0)) throw ConfigError("omega_p must be > 0");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
}

EffectiveModel reference_model(const BlochniumDesign& design, const PhysicalScale& scale,
                               std::optional<double> e_c_override) {
  design.validate();
  scale.validate();
  EffectiveModel model;
  model.omega_eff = scale.omega_p;
  model.kappa = scale.kappa;
  model.e_c = e_c_override ? *e_c_override : charging_energy(design.c_js);
  model.kerr_k = kerr_coefficient(design, model.e_c);
  return model;
}

double default_metric_delta(const EffectiveModel& model) {
  return std::copysign(0.85, model.kerr_k);
}

PumpDrive drive_from_power(double p_in_dbm, const PhysicalScale& scale,
                           const EffectiveModel& model, double delta, double pump_phase) {
  scale.validate();
  const double p_watts = dbm_to_watts(p_in_dbm);
  const double flux = p_watts / (constants::hbar * scale.omega_p);
  const double a_in_sq = flux / scale.kappa;  // photon flux per linewidth
  PumpDrive drive;
  drive.delta = delta;
  drive.zeta = (model.kerr_k / scale.kappa) * a_in_sq;
  drive.pump_phase = pump_phase;
  return drive;
}

double power_for_zeta(double zeta, const PhysicalScale& scale, const EffectiveModel& model) {
  scale.validate();
  if (zeta == 0.0) return -kInf;
  if (model.kerr_k == 0.0)
    throw ComputeError("Kerr coefficient is zero: no drive power maps to a nonzero zeta");
  const double a_in_sq = zeta * scale.kappa / model.kerr_k;
  if (a_in_sq < 0.0)
    throw ComputeError("requested zeta sign is inconsistent with the Kerr sign");
  return watts_to_dbm(constants::hbar * scale.omega_p * scale.kappa * a_in_sq);
}

double normalized_gain_db(double delta, double zeta) {
  const OperatingPoint op = solve_operating_point(PumpDrive{delta, zeta, 0.0});
  try {
    return gain_at(op, 0.0).g_signal_db;
  } catch (const ComputeError&) {
    return kInf;  // parametric oscillation threshold
  }
}

double gain_at_power_db(double p_dbm, const PhysicalScale& scale, const EffectiveModel& model,
                        double delta) {
  const PumpDrive drive = drive_from_power(p_dbm, scale, model, delta);
  return normalized_gain_db(drive.delta, drive.zeta);
}

double find_zeta_for_gain(double delta, double target_db, double tol_db) {
  if (delta == 0.0) throw ConfigError("delta must be nonzero for a gain target");
  if (target_db <= 0.0) return 0.0;

  const double sign = std::copysign(1.0, delta);
  const double step = std::pow(10.0, 0.025);  // 0.25 dB in drive power

  double prev_mag = 0.0;
  double prev_gain = 0.0;  // zeta = 0 reflects at 0 dB
  double peak_gain = 0.0;

  for (double mag = 1e-6; mag < 10.0; mag *= step) {
    const double g = normalized_gain_db(delta, sign * mag);
    if (g >= target_db) {
      // Bisect [prev_mag, mag] for the smallest magnitude reaching target.
      double lo = prev_mag, hi = mag;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = normalized_gain_db(delta, sign * mid);
        if (gm >= target_db) hi = mid; else lo = mid;
        if (std::abs(gm - target_db) <= tol_db && gm >= target_db) return sign * mid;
      }
      return sign * hi;
    }
    peak_gain = std::max(peak_gain, g);
    if (g < prev_gain - 1e-9 && prev_mag > 0.0) {
      // Past the gain peak. Rescan the last interval finely in case a
      // narrow fold spike was stepped over before giving up.
      double fine_lo = prev_mag;
      for (int k = 1; k <= 64; ++k) {
        const double m2 = prev_mag + (mag - prev_mag) * k / 64.0;
        if (normalized_gain_db(delta, sign * m2) >= target_db) {
          double lo = fine_lo, hi = m2;
          for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (normalized_gain_db(delta, sign * mid) >= target_db) hi = mid; else lo = mid;
          }
          return sign * hi;
        }
        fine_lo = m2;
      }
      throw ComputeError("gain target " + fmt(target_db) + " dB exceeds the attainable peak " +
                         fmt(peak_gain) + " dB at delta = " + fmt(delta));
    }
    prev_gain = g;
    prev_mag = mag;
  }
  throw ComputeError("gain target " + fmt(target_db) + " dB not reached for any zeta at delta = " +
                     fmt(delta));
}

double find_pump_power_for_gain(const EffectiveModel& model, const PhysicalScale& scale,
                                double delta, double target_db) {
  const double zeta = find_zeta_for_gain(delta, target_db);
  return power_for_zeta(zeta, scale, model);
}

P1dBResult compression_point(const EffectiveModel& model, const PhysicalScale& scale,
                             double pump_power_dbm, double delta,
                             const CompressionOptions& options) {
  scale.validate();

  P1dBResult result;
  result.pump_power_dbm = pump_power_dbm;
  result.ceiling_dbm = pump_power_dbm + options.ceiling_offset_db;

  const PumpDrive pump = drive_from_power(pump_power_dbm, scale, model, delta);
  const OperatingPoint op = solve_operating_point(pump);
  if (!op.stable) throw ComputeError("pump operating point is unstable");
  result.small_signal_gain_db = gain_at(op, 0.0).g_signal_db;

  if (model.kerr_k == 0.0) {
    // Linear cavity: the gain never moves, so there is no compression.
    result.open_ended = true;
    result.p1db_dbm = result.ceiling_dbm;
    return result;
  }

  const double target = result.small_signal_gain_db - 1.0;
  const double pump_watts = dbm_to_watts(pump_power_dbm);
  const auto gain_with_signal = [&](double p_signal_dbm) {
    const double total_dbm = watts_to_dbm(pump_watts + dbm_to_watts(p_signal_dbm));
    return gain_at_power_db(total_dbm, scale, model, delta);
  };

  double lo = pump_power_dbm - options.signal_floor_offset_db;
  if (gain_with_signal(lo) <= target)
    throw ComputeError("gain is already compressed at the probe floor; "
                       "the pump point sits on a gain cliff");

  double hi = lo;
  bool bracketed = false;
  while (hi < result.ceiling_dbm) {
    hi += options.coarse_step_db;
    if (gain_with_signal(hi) <= target) { bracketed = true; break; }
    lo = hi;
  }
  if (!bracketed) {
    result.open_ended = true;
    result.p1db_dbm = result.ceiling_dbm;
    return result;
  }

  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gain_with_signal(mid) <= target) hi = mid; else lo = mid;
    if (std::abs(gain_with_signal(hi) - target) <= options.tol_db) break;
  }
  result.p1db_dbm = hi;
  return result;
}

double bandwidth_3db(const OperatingPoint& op, double tol) {
  const double peak = gain_at(op, 0.0).g_signal_db;
  if (!(peak > 3.0))
    throw ComputeError("peak gain " + fmt(peak) + " dB is below 3 dB; bandwidth undefined");
  const double target = peak - 3.0;

  const auto crossing = [&](double direction) {
    double inner = 0.0;
    double outer = 0.25;
    while (gain_at(op, direction * outer).g_signal_db >= target) {
      inner = outer;
      outer *= 2.0;
      if (outer > 1e6) throw ComputeError("no -3 dB crossing found");
    }
    while (outer - inner > tol) {
      const double mid = 0.5 * (inner + outer);
      if (gain_at(op, direction * mid).g_signal_db >= target) inner = mid; else outer = mid;
    }
    return 0.5 * (inner + outer);
  };

  return crossing(+1.0) + crossing(-1.0);
}

TuningCurve band_coverage(const BlochniumDesign& design, const PhysicalScale& scale,
                          double band_low_ghz, double band_high_ghz,
                          const BandCoverageOptions& options) {
  design.validate();
  scale.validate();
  if (!(band_low_ghz > 0.0) || !(band_low_ghz < band_high_ghz))
    throw ConfigError("band must satisfy 0 < low < high");
  if (options.n_points < 1) throw ConfigError("n_points must be >= 1");

  BlochniumDesign d0 = design;
  d0.flux_bias = 0.0;
  const double f0_ghz = effective_mode(build_matrices(d0)) / constants::two_pi / 1e9;
  if (f0_ghz < band_high_ghz)
    throw ComputeError("design cannot reach the band: zero-flux mode is " + fmt(f0_ghz) +
                       " GHz; reachable range is (0, " + fmt(f0_ghz) + "] GHz");

  // Normalized operating point shared by all flux points: K and kappa do
  // not change with flux, only the mode frequency does.
  const double e_c = options.e_c_override ? *options.e_c_override : charging_energy(design.c_js);
  const double kerr = kerr_coefficient(design, e_c);
  EffectiveModel norm_model;
  norm_model.kappa = design.kappa;
  norm_model.e_c = e_c;
  norm_model.kerr_k = kerr;
  const double delta = options.delta ? *options.delta : default_metric_delta(norm_model);
  const double zeta = find_zeta_for_gain(delta, options.gain_target_db);
  const OperatingPoint op = solve_operating_point(PumpDrive{delta, zeta, 0.0});
  const double gain_db = gain_at(op, 0.0).g_signal_db;
  const double bw_ghz = bandwidth_3db(op) * design.kappa / constants::two_pi / 1e9;

  TuningCurve curve;
  for (int i = 0; i < options.n_points; ++i) {
    double phi = 0.0;
    if (options.n_points > 1) {
      const double f_target =
          band_high_ghz + (band_low_ghz - band_high_ghz) * i / (options.n_points - 1.0);
      const double c = std::min(1.0, (f_target / f0_ghz) * (f_target / f0_ghz));
      phi = std::acos(c);
    }
    BlochniumDesign di = design;
    di.flux_bias = phi;
    const double f_ghz = effective_mode(build_matrices(di)) / constants::two_pi / 1e9;

    TuningPoint point;
    point.flux_bias = phi;
    point.omega_eff_ghz = f_ghz;
    point.gain_db = gain_db;
    point.bandwidth_ghz = bw_ghz;
    if (!curve.points.empty()) {
      const TuningPoint& prev = curve.points.back();
      point.overlaps_previous =
          std::abs(prev.omega_eff_ghz - f_ghz) <= 0.5 * (prev.bandwidth_ghz + bw_ghz);
      curve.any_overlap = curve.any_overlap || point.overlaps_previous;
    }
    curve.points.push_back(point);
  }
  return curve;
}

DesignComparison compare_designs(const BlochniumDesign& a, const BlochniumDesign& b,
                                 const PhysicalScale& scale, double gain_target_db,
                                 std::optional<double> delta,
                                 std::optional<double> e_c_override) {
  DesignComparison cmp;
  const auto run = [&](const BlochniumDesign& d, P1dBResult& out, bool& ok, std::string& err) {
    try {
      const EffectiveModel model = reference_model(d, scale, e_c_override);
      const double dlt = delta ? *delta : default_metric_delta(model);
      const double pump = find_pump_power_for_gain(model, scale, dlt, gain_target_db);
      out = compression_point(model, scale, pump, dlt);
      ok = true;
    } catch (const std::exception& e) {
      ok = false;
      err = e.what();
    }
  };
  run(a, cmp.a, cmp.a_ok, cmp.a_error);
  run(b, cmp.b, cmp.b_ok, cmp.b_error);
  if (cmp.a_ok && cmp.b_ok) cmp.p1db_difference_db = cmp.a.p1db_dbm - cmp.b.p1db_dbm;
  return cmp;
}

}  // namespace bjpa
