#include "bjpa/gain.hpp"

#include <cmath>

#include "bjpa/errors.hpp"
#include "bjpa/parallel.hpp"

namespace bjpa {

namespace {

double to_db(double magnitude) { return 20.0 * std::log10(magnitude); }

}  // namespace

ScatterMatrix scattering_matrix(const OperatingPoint& op, const SignalProbe& probe) {
  const double d = op.drive.delta;
  const double dd = probe.big_delta;
  const double zn = op.drive.zeta * op.n;
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> pump = std::exp(2.0 * i * op.drive.pump_phase);

  ScatterMatrix s;
  s.m(0, 0) = i * (-d - dd + 2.0 * zn) + 0.5;
  s.m(0, 1) = i * zn * pump;
  s.m(1, 0) = -i * zn * std::conj(pump);
  s.m(1, 1) = i * (d - dd - 2.0 * zn) + 0.5;
  return s;
}

GainResult signal_idler_gain(const ScatterMatrix& s) {
  const std::complex<double> det = s.m(0, 0) * s.m(1, 1) - s.m(0, 1) * s.m(1, 0);
  if (std::abs(det) < kMinDeterminant)
    throw ComputeError("scattering matrix is singular: operating point at the "
                       "parametric oscillation threshold");

  GainResult g;
  g.g_signal = s.m(1, 1) / det - 1.0;
  g.g_idler = -s.m(0, 1) / det;
  g.g_signal_db = to_db(std::abs(g.g_signal));
  g.g_idler_db = to_db(std::abs(g.g_idler));
  return g;
}

GainResult gain_at(const OperatingPoint& op, double big_delta) {
  return signal_idler_gain(scattering_matrix(op, SignalProbe{big_delta}));
}

std::vector<GainMapPoint> gain_map(const std::vector<double>& deltas,
                                   const std::vector<double>& zetas,
                                   const std::vector<double>& big_deltas,
                                   double pump_phase, BranchPolicy policy, unsigned workers) {
  const std::size_t n_pump = zetas.size() * deltas.size();
  std::vector<GainMapPoint> out(n_pump * big_deltas.size());

  parallel_for(n_pump, workers, [&](std::size_t pi) {
    const std::size_t zi = pi / deltas.size();
    const std::size_t di = pi % deltas.size();
    const PumpDrive drive{deltas[di], zetas[zi], pump_phase};
    const RootSet roots = photon_number_roots(drive);
    const OperatingPoint op = select_branch(drive, roots, policy);
    int root_index = 0;
    for (std::size_t r = 0; r < roots.roots.size(); ++r) {
      if (roots.roots[r].n == op.n) root_index = static_cast<int>(r);
    }

    for (std::size_t bi = 0; bi < big_deltas.size(); ++bi) {
      GainMapPoint& p = out[pi * big_deltas.size() + bi];
      p.delta = drive.delta;
      p.zeta = drive.zeta;
      p.big_delta = big_deltas[bi];
      p.root_index = root_index;
      p.n = op.n;
      p.stable = op.stable;
      p.bistable = roots.bistable;
      try {
        const GainResult g = gain_at(op, big_deltas[bi]);
        p.g_signal_db = g.g_signal_db;
        p.g_idler_db = g.g_idler_db;
        if (p.g_signal_db > kSaturationDb) {
          p.g_signal_db = kSaturationDb;
          p.saturated = true;
        }
        if (p.g_idler_db > kSaturationDb) {
          p.g_idler_db = kSaturationDb;
          p.saturated = true;
        }
      } catch (const ComputeError&) {
        // Oscillation threshold inside the grid: record a saturated marker.
        p.g_signal_db = kSaturationDb;
        p.g_idler_db = kSaturationDb;
        p.saturated = true;
      }
    }
  });
  return out;
}

}  // namespace bjpa
