#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bjpa/design.hpp"
#include "bjpa/metrics.hpp"

namespace bjpa {

/// One sweep cell: a value or an error marker, never both.
struct SweepCell {
  double value = 0.0;
  bool ok = true;
  std::string error;

  static SweepCell of(double v) { return {v, true, {}}; }
  static SweepCell failed(std::string msg) { return {0.0, false, std::move(msg)}; }
};

/// Flat record of axis values and requested outputs, in declaration order.
struct SweepRecord {
  std::vector<std::pair<std::string, SweepCell>> fields;

  const SweepCell* find(const std::string& name) const;
};

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

struct SweepSpec {
  std::vector<SweepAxis> axes;
  std::vector<std::string> outputs;
  std::size_t max_points = 1000000;
};

/// Everything a single sweep point needs besides the axis values.
struct SweepContext {
  BlochniumDesign design;
  PhysicalScale scale;
  double delta = 0.0;
  bool delta_is_auto = true;  // use the sign-matched default when true
  std::optional<double> zeta;
  std::optional<double> pump_power_dbm;
  double pump_phase = 0.0;
  double big_delta = 0.0;
  BranchPolicy policy = BranchPolicy::low_stable;
  double gain_target_db = 20.0;
  std::optional<double> e_c_override;
  CompressionOptions compression;
};

/// Names accepted as sweep axes ("kappa" updates design and scale together)
/// and as outputs. Both lists are fixed; unknown names throw ConfigError.
const std::vector<std::string>& sweep_parameter_names();
const std::vector<std::string>& sweep_output_names();

/// Evaluates one configured point. Per-output failures become error cells.
SweepRecord evaluate_point(const SweepContext& ctx, const std::vector<std::string>& outputs);

/// Full Cartesian sweep, records in row-major axis-declaration order,
/// byte-identical regardless of worker count. Per-point failures are
/// embedded as error markers and never abort the sweep.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const SweepContext& base,
                                   unsigned workers = 0);

/// One searchable parameter: a continuous range, an explicit lattice of
/// values, or an integer range (neighbor moves).
struct ParamRange {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  bool integral = false;
  std::vector<double> lattice;  // non-empty: search restricted to these values

  bool is_lattice() const { return !lattice.empty(); }
};

struct OptimizeSpec {
  double min_gain_db = 20.0;
  std::vector<ParamRange> params;
  int budget = 200;  // objective evaluations
  std::uint64_t seed = 0;
  double feasibility_margin_db = 0.1;
  double golden_tol = 1e-4;  // fraction of each continuous range
};

struct TraceStep {
  std::vector<double> values;  // one per param, in spec order
  double objective = 0.0;      // p1db_dbm
  double gain_db = 0.0;
  std::string phase;  // "seed" or the coordinate moved
};

struct OptimizeResult {
  bool feasible = false;
  std::vector<double> best_values;
  double best_objective = 0.0;
  double best_gain_db = 0.0;
  SweepRecord best_record;
  std::vector<TraceStep> trace;  // accepted moves, objective non-decreasing
  int evaluations = 0;
  double best_gain_seen_db = 0.0;  // best gain over all evaluations (for infeasibility reports)
};

/// Two-phase search for the highest compression point subject to a minimum
/// gain: seeding (exhaustive when the discrete lattice fits the budget,
/// Latin-style otherwise) followed by coordinate descent with
/// golden-section refinement on continuous parameters and +-1 neighbor
/// moves on integer/lattice parameters. Ties break toward higher gain,
/// then fewer junctions (smaller N*M).
OptimizeResult optimize_design(const OptimizeSpec& spec, const SweepContext& base,
                               unsigned workers = 0);

}  // namespace bjpa
