#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bjpa/design.hpp"
#include "bjpa/metrics.hpp"
#include "bjpa/sweep.hpp"

namespace bjpa {

struct OutputConfig {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

struct PhotonNumberConfig {
  std::vector<double> deltas;
  std::vector<double> zetas;
};

struct GainCommandConfig {
  std::vector<double> deltas;
  std::vector<double> zetas;       // direct zeta values; empty if powers given
  std::vector<double> powers_dbm;  // alternative drive axis, needs design+scale
  std::vector<double> big_deltas;
  double pump_phase = 0.0;
};

struct P1dbConfig {
  std::optional<double> pump_power_dbm;  // explicit pump point
  std::optional<double> gain_target_db;  // or match this small-signal gain
  std::optional<double> delta;
  CompressionOptions compression;
};

struct TuneConfig {
  double band_low_ghz = 4.0;
  double band_high_ghz = 8.0;
  BandCoverageOptions options;
};

struct CompareConfig {
  BlochniumDesign design_b;
  double gain_target_db = 20.0;
  std::optional<double> delta;
};

struct SweepCommandConfig {
  SweepSpec spec;
};

struct OptimizeCommandConfig {
  OptimizeSpec spec;
};

/// Parsed and validated run configuration. Only the blocks a command needs
/// must be present; require_* accessors throw ConfigError naming the block.
struct RunConfig {
  std::optional<BlochniumDesign> design;
  std::optional<PhysicalScale> scale;
  std::optional<double> e_c_override;  // [J]
  std::optional<double> delta;
  double pump_phase = 0.0;
  BranchPolicy policy = BranchPolicy::low_stable;

  std::optional<PhotonNumberConfig> photon_number;
  std::optional<GainCommandConfig> gain;
  std::optional<P1dbConfig> p1db;
  std::optional<TuneConfig> tune;
  std::optional<CompareConfig> compare;
  std::optional<SweepCommandConfig> sweep;
  std::optional<OptimizeCommandConfig> optimize;

  OutputConfig output;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> seed;

  const BlochniumDesign& require_design() const;
  const PhysicalScale& require_scale() const;
  SweepContext make_context() const;  // design+scale+drive defaults for sweeps/metrics
};

/// Parses the strict-schema JSON configuration. Unknown keys, wrong types
/// and missing required fields throw ConfigError with a dotted field path.
RunConfig parse_run_config(const std::string& json_text);

/// Convenience: read a file and parse it. Throws ConfigError on I/O failure.
RunConfig load_run_config(const std::string& path);

/// Sweep/optimizer parameters are written in config units (GHz, fF, MHz)
/// and converted to SI core units at parse time; the CLI uses this table to
/// convert axis columns back for output.
struct AxisUnit {
  std::string config_name;
  std::string core_name;
  double to_si = 1.0;  // config value * to_si = core value
};
const std::vector<AxisUnit>& axis_units();

}  // namespace bjpa
