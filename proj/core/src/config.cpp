#include "bjpa/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bjpa/constants.hpp"
#include "bjpa/errors.hpp"

namespace bjpa {

namespace {

using nlohmann::json;

constexpr double kGhz = constants::two_pi * 1e9;  // GHz -> rad/s
constexpr double kMhz = constants::two_pi * 1e6;  // MHz -> rad/s
constexpr double kFemto = 1e-15;

/// Strict object reader: every key must be consumed, leftovers are errors.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : obj_(j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + " must be an object");
  }

  const json* opt(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  const json& require(const std::string& key) {
    const json* j = opt(key);
    if (j == nullptr) throw ConfigError(path_ + "." + key + " is required");
    return *j;
  }

  double number(const std::string& key) { return as_number(require(key), key); }

  std::optional<double> opt_number(const std::string& key) {
    const json* j = opt(key);
    if (j == nullptr) return std::nullopt;
    return as_number(*j, key);
  }

  int integer(const std::string& key) { return as_integer(require(key), key); }

  std::optional<int> opt_integer(const std::string& key) {
    const json* j = opt(key);
    if (j == nullptr) return std::nullopt;
    return as_integer(*j, key);
  }

  std::string text(const std::string& key) {
    const json& j = require(key);
    if (!j.is_string()) throw ConfigError(path_ + "." + key + " must be a string");
    return j.get<std::string>();
  }

  std::optional<std::string> opt_text(const std::string& key) {
    const json* j = opt(key);
    if (j == nullptr) return std::nullopt;
    if (!j->is_string()) throw ConfigError(path_ + "." + key + " must be a string");
    return j->get<std::string>();
  }

  const std::string& path() const { return path_; }

  void done() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key()))
        throw ConfigError("unknown key " + path_ + "." + it.key());
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;

  double as_number(const json& j, const std::string& key) const {
    if (!j.is_number()) throw ConfigError(path_ + "." + key + " must be a number");
    return j.get<double>();
  }
  int as_integer(const json& j, const std::string& key) const {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (v == std::floor(v)) return static_cast<int>(v);
    }
    throw ConfigError(path_ + "." + key + " must be an integer");
  }
};

std::vector<double> parse_grid(const json& j, const std::string& path) {
  std::vector<double> out;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number())
        throw ConfigError(path + "[" + std::to_string(i) + "] must be a number");
      out.push_back(j[i].get<double>());
    }
  } else if (j.is_object()) {
    ObjectReader r(j, path);
    const double start = r.number("start");
    const double stop = r.number("stop");
    const int count = r.integer("count");
    r.done();
    if (count < 1) throw ConfigError(path + ".count must be >= 1");
    if (count == 1) {
      out.push_back(start);
    } else {
      for (int i = 0; i < count; ++i)
        out.push_back(start + (stop - start) * i / (count - 1.0));
    }
  } else {
    throw ConfigError(path + " must be an array or a {start, stop, count} object");
  }
  if (out.empty()) throw ConfigError(path + " must not be empty");
  return out;
}

BlochniumDesign parse_design(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  BlochniumDesign d;
  d.n_quartons = r.integer("n_quartons");
  d.m_slaves = r.integer("m_slaves");
  d.alpha_c = r.number("alpha_c");
  d.e_js = r.number("e_js_ghz") * constants::planck_h * 1e9;
  d.c_g = r.number("c_g_ff") * kFemto;
  d.c_js = r.number("c_js_ff") * kFemto;
  d.c_jm = r.number("c_jm_ff") * kFemto;
  d.z0 = r.opt_number("z0_ohm").value_or(50.0);
  d.kappa = r.number("kappa_mhz") * kMhz;
  d.flux_bias = r.opt_number("flux_bias").value_or(0.0);
  r.done();
  d.validate();
  return d;
}

PhysicalScale parse_scale(const json& j, const std::string& path, const RunConfig& cfg) {
  ObjectReader r(j, path);
  PhysicalScale s;
  s.omega_p = r.number("omega_p_ghz") * kGhz;
  const auto kappa_mhz = r.opt_number("kappa_mhz");
  r.done();
  if (kappa_mhz) {
    s.kappa = *kappa_mhz * kMhz;
    if (cfg.design && std::abs(s.kappa - cfg.design->kappa) > 1e-9 * s.kappa)
      throw ConfigError(path + ".kappa_mhz conflicts with design.kappa_mhz");
  } else if (cfg.design) {
    s.kappa = cfg.design->kappa;
  } else {
    throw ConfigError(path + ".kappa_mhz is required when no design block is present");
  }
  s.validate();
  return s;
}

CompressionOptions parse_compression(ObjectReader& r) {
  CompressionOptions c;
  c.ceiling_offset_db = r.opt_number("ceiling_offset_db").value_or(c.ceiling_offset_db);
  c.tol_db = r.opt_number("tol_db").value_or(c.tol_db);
  c.coarse_step_db = r.opt_number("coarse_step_db").value_or(c.coarse_step_db);
  return c;
}

const AxisUnit* find_axis_unit(const std::string& config_name) {
  for (const auto& u : axis_units())
    if (u.config_name == config_name) return &u;
  return nullptr;
}

}  // namespace

const std::vector<AxisUnit>& axis_units() {
  static const std::vector<AxisUnit> units = {
      {"n_quartons", "n_quartons", 1.0},
      {"m_slaves", "m_slaves", 1.0},
      {"alpha_c", "alpha_c", 1.0},
      {"e_js_ghz", "e_js", constants::planck_h * 1e9},
      {"c_g_ff", "c_g", kFemto},
      {"c_js_ff", "c_js", kFemto},
      {"c_jm_ff", "c_jm", kFemto},
      {"z0_ohm", "z0", 1.0},
      {"kappa_mhz", "kappa", kMhz},
      {"flux_bias", "flux_bias", 1.0},
      {"omega_p_ghz", "omega_p", kGhz},
      {"delta", "delta", 1.0},
      {"zeta", "zeta", 1.0},
      {"pump_power_dbm", "pump_power_dbm", 1.0},
      {"pump_phase", "pump_phase", 1.0},
      {"big_delta", "big_delta", 1.0},
  };
  return units;
}

const BlochniumDesign& RunConfig::require_design() const {
  if (!design) throw ConfigError("design block is required for this command");
  return *design;
}

const PhysicalScale& RunConfig::require_scale() const {
  if (!scale) throw ConfigError("scale block is required for this command");
  return *scale;
}

SweepContext RunConfig::make_context() const {
  SweepContext ctx;
  ctx.design = require_design();
  ctx.scale = require_scale();
  if (delta) {
    ctx.delta = *delta;
    ctx.delta_is_auto = false;
  }
  ctx.pump_phase = pump_phase;
  ctx.policy = policy;
  ctx.e_c_override = e_c_override;
  return ctx;
}

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig cfg;
  ObjectReader r(root, "config");

  if (const json* j = r.opt("design")) cfg.design = parse_design(*j, "design");
  if (const json* j = r.opt("scale")) cfg.scale = parse_scale(*j, "scale", cfg);
  if (const auto v = r.opt_number("ec_ghz")) cfg.e_c_override = *v * constants::planck_h * 1e9;
  cfg.delta = r.opt_number("delta");
  cfg.pump_phase = r.opt_number("pump_phase").value_or(0.0);
  if (const auto v = r.opt_text("branch_policy")) {
    if (*v == "low_stable") cfg.policy = BranchPolicy::low_stable;
    else if (*v == "high_stable") cfg.policy = BranchPolicy::high_stable;
    else throw ConfigError("config.branch_policy must be low_stable or high_stable");
  }

  if (const json* j = r.opt("photon_number")) {
    ObjectReader b(*j, "photon_number");
    PhotonNumberConfig pc;
    pc.deltas = parse_grid(b.require("deltas"), "photon_number.deltas");
    pc.zetas = parse_grid(b.require("zetas"), "photon_number.zetas");
    b.done();
    cfg.photon_number = std::move(pc);
  }

  if (const json* j = r.opt("gain")) {
    ObjectReader b(*j, "gain");
    GainCommandConfig gc;
    gc.deltas = parse_grid(b.require("deltas"), "gain.deltas");
    if (const json* z = b.opt("zetas")) gc.zetas = parse_grid(*z, "gain.zetas");
    if (const json* p = b.opt("powers_dbm")) gc.powers_dbm = parse_grid(*p, "gain.powers_dbm");
    gc.big_deltas = parse_grid(b.require("big_deltas"), "gain.big_deltas");
    gc.pump_phase = b.opt_number("pump_phase").value_or(cfg.pump_phase);
    b.done();
    if (gc.zetas.empty() == gc.powers_dbm.empty())
      throw ConfigError("gain needs exactly one of zetas or powers_dbm");
    cfg.gain = std::move(gc);
  }

  if (const json* j = r.opt("p1db")) {
    ObjectReader b(*j, "p1db");
    P1dbConfig pc;
    pc.pump_power_dbm = b.opt_number("pump_power_dbm");
    pc.gain_target_db = b.opt_number("gain_target_db");
    pc.delta = b.opt_number("delta");
    pc.compression = parse_compression(b);
    b.done();
    if (pc.pump_power_dbm.has_value() == pc.gain_target_db.has_value())
      throw ConfigError("p1db needs exactly one of pump_power_dbm or gain_target_db");
    cfg.p1db = std::move(pc);
  }

  if (const json* j = r.opt("tune")) {
    ObjectReader b(*j, "tune");
    TuneConfig tc;
    const json& band = b.require("band_ghz");
    if (!band.is_array() || band.size() != 2 || !band[0].is_number() || !band[1].is_number())
      throw ConfigError("tune.band_ghz must be [low, high]");
    tc.band_low_ghz = band[0].get<double>();
    tc.band_high_ghz = band[1].get<double>();
    tc.options.n_points = b.opt_integer("n_points").value_or(10);
    tc.options.gain_target_db = b.opt_number("gain_target_db").value_or(20.0);
    tc.options.delta = b.opt_number("delta");
    b.done();
    cfg.tune = std::move(tc);
  }

  if (const json* j = r.opt("compare")) {
    ObjectReader b(*j, "compare");
    CompareConfig cc;
    cc.design_b = parse_design(b.require("design_b"), "compare.design_b");
    cc.gain_target_db = b.opt_number("gain_target_db").value_or(20.0);
    cc.delta = b.opt_number("delta");
    b.done();
    cfg.compare = std::move(cc);
  }

  if (const json* j = r.opt("sweep")) {
    ObjectReader b(*j, "sweep");
    SweepCommandConfig sc;
    const json& axes = b.require("axes");
    if (!axes.is_array() || axes.empty())
      throw ConfigError("sweep.axes must be a non-empty array");
    for (std::size_t i = 0; i < axes.size(); ++i) {
      const std::string path = "sweep.axes[" + std::to_string(i) + "]";
      ObjectReader a(axes[i], path);
      const std::string name = a.text("name");
      const AxisUnit* unit = find_axis_unit(name);
      if (unit == nullptr) throw ConfigError(path + ".name '" + name + "' is not sweepable");
      std::vector<double> values = parse_grid(a.require("values"), path + ".values");
      a.done();
      for (double& v : values) v *= unit->to_si;
      sc.spec.axes.push_back({unit->core_name, std::move(values)});
    }
    const json& outputs = b.require("outputs");
    if (!outputs.is_array() || outputs.empty())
      throw ConfigError("sweep.outputs must be a non-empty array");
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (!outputs[i].is_string())
        throw ConfigError("sweep.outputs[" + std::to_string(i) + "] must be a string");
      sc.spec.outputs.push_back(outputs[i].get<std::string>());
    }
    if (const auto v = b.opt_number("max_points"))
      sc.spec.max_points = static_cast<std::size_t>(*v);
    b.done();
    cfg.sweep = std::move(sc);
  }

  if (const json* j = r.opt("optimize")) {
    ObjectReader b(*j, "optimize");
    OptimizeCommandConfig oc;
    oc.spec.min_gain_db = b.number("min_gain_db");
    oc.spec.budget = b.opt_integer("budget").value_or(oc.spec.budget);
    oc.spec.feasibility_margin_db =
        b.opt_number("feasibility_margin_db").value_or(oc.spec.feasibility_margin_db);
    const json& params = b.require("params");
    if (!params.is_array() || params.empty())
      throw ConfigError("optimize.params must be a non-empty array");
    for (std::size_t i = 0; i < params.size(); ++i) {
      const std::string path = "optimize.params[" + std::to_string(i) + "]";
      ObjectReader p(params[i], path);
      const std::string name = p.text("name");
      const AxisUnit* unit = find_axis_unit(name);
      if (unit == nullptr) throw ConfigError(path + ".name '" + name + "' is not searchable");
      ParamRange range;
      range.name = unit->core_name;
      range.integral = (name == "n_quartons" || name == "m_slaves");
      if (const json* values = p.opt("values")) {
        range.lattice = parse_grid(*values, path + ".values");
        for (double& v : range.lattice) v *= unit->to_si;
        range.lo = *std::min_element(range.lattice.begin(), range.lattice.end());
        range.hi = *std::max_element(range.lattice.begin(), range.lattice.end());
      } else {
        range.lo = p.number("min") * unit->to_si;
        range.hi = p.number("max") * unit->to_si;
      }
      p.done();
      oc.spec.params.push_back(std::move(range));
    }
    b.done();
    cfg.optimize = std::move(oc);
  }

  if (const json* j = r.opt("output")) {
    ObjectReader b(*j, "output");
    if (const auto v = b.opt_text("directory")) cfg.output.directory = *v;
    if (const json* formats = b.opt("formats")) {
      if (!formats->is_array()) throw ConfigError("output.formats must be an array");
      cfg.output.formats.clear();
      for (const auto& f : *formats) {
        if (!f.is_string()) throw ConfigError("output.formats entries must be strings");
        const std::string name = f.get<std::string>();
        if (name != "csv" && name != "json" && name != "svg")
          throw ConfigError("output.formats entries must be csv, json or svg");
        cfg.output.formats.push_back(name);
      }
    }
    b.done();
  }

  if (const auto v = r.opt_integer("workers")) {
    if (*v < 1) throw ConfigError("config.workers must be >= 1");
    cfg.workers = static_cast<unsigned>(*v);
  }
  if (const auto v = r.opt_number("seed")) {
    if (*v < 0 || *v != std::floor(*v)) throw ConfigError("config.seed must be a non-negative integer");
    cfg.seed = static_cast<std::uint64_t>(*v);
  }
  r.done();

  if (cfg.optimize && cfg.seed) cfg.optimize->spec.seed = *cfg.seed;
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

}  // namespace bjpa
