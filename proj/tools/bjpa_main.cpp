// bjpa: command-line front end for the Blochnium JPA simulator.
//
// Usage: bjpa <command> --config <path> [--out DIR] [--formats csv,json,svg]
//             [--workers N] [--seed N] [--stamp S]
//
// Exit codes: 0 success, 1 computation error, 2 config/validation error.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bjpa/config.hpp"
#include "bjpa/constants.hpp"
#include "bjpa/csv.hpp"
#include "bjpa/errors.hpp"
#include "bjpa/gain.hpp"
#include "bjpa/metrics.hpp"
#include "bjpa/svg.hpp"
#include "bjpa/sweep.hpp"
#include "bjpa/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_stamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bjpa::ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double ghz(double omega) { return omega / bjpa::constants::two_pi / 1e9; }
double mhz(double omega) { return omega / bjpa::constants::two_pi / 1e6; }
double hz(double omega) { return omega / bjpa::constants::two_pi; }

json design_json(const bjpa::BlochniumDesign& d) {
  return json{{"n_quartons", d.n_quartons},
              {"m_slaves", d.m_slaves},
              {"alpha_c", d.alpha_c},
              {"e_js_ghz", d.e_js / bjpa::constants::planck_h / 1e9},
              {"c_g_ff", d.c_g / 1e-15},
              {"c_js_ff", d.c_js / 1e-15},
              {"c_jm_ff", d.c_jm / 1e-15},
              {"z0_ohm", d.z0},
              {"kappa_mhz", mhz(d.kappa)},
              {"flux_bias", d.flux_bias}};
}

// Collects the artifacts of one run and writes the closing manifest.
class ArtifactSink {
 public:
  ArtifactSink(fs::path dir, std::string command, std::string stamp,
               std::vector<std::string> formats)
      : dir_(std::move(dir)), command_(std::move(command)), stamp_(std::move(stamp)),
        formats_(std::move(formats)) {
    fs::create_directories(dir_);
  }

  bool wants(const std::string& fmt) const {
    return std::find(formats_.begin(), formats_.end(), fmt) != formats_.end();
  }

  void write(const std::string& fmt, const std::string& content) {
    if (!wants(fmt)) return;
    const fs::path path = dir_ / (command_ + "-" + stamp_ + "." + fmt);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bjpa::ComputeError("cannot write " + path.string());
    out << content;
    out.close();
    entries_.push_back({path.filename().string(), fmt, content.size()});
    std::cout << "wrote " << path.string() << "\n";
  }

  void write_json_report(const json& results) {
    if (!wants("json")) return;
    json report{{"tool", "bjpa"},
                {"version", bjpa::kVersion},
                {"command", command_},
                {"results", results}};
    write("json", report.dump(2) + "\n");
  }

  void write_manifest(const std::string& config_path, const std::string& config_bytes,
                      unsigned workers, std::uint64_t seed) {
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config_bytes)));
    json outputs = json::array();
    for (const auto& e : entries_)
      outputs.push_back({{"path", e.name}, {"format", e.format}, {"bytes", e.bytes}});
    json manifest{{"tool", "bjpa"},
                  {"version", bjpa::kVersion},
                  {"command", command_},
                  {"created_utc", stamp_},
                  {"config_path", config_path},
                  {"config_fnv1a64", std::string(hash)},
                  {"workers", workers},
                  {"seed", seed},
                  {"outputs", outputs}};
    const fs::path path = dir_ / "manifest.json";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bjpa::ComputeError("cannot write " + path.string());
    out << manifest.dump(2) << "\n";
  }

 private:
  struct Entry {
    std::string name;
    std::string format;
    std::size_t bytes;
  };
  fs::path dir_;
  std::string command_;
  std::string stamp_;
  std::vector<std::string> formats_;
  std::vector<Entry> entries_;
};

std::string cell_text(const bjpa::SweepCell& c) {
  return c.ok ? bjpa::format_double(c.value) : "ERR";
}

// ---------------------------------------------------------------- commands

void cmd_model(const bjpa::RunConfig& cfg, ArtifactSink& sink) {
  const auto& design = cfg.require_design();
  const bjpa::EffectiveModel model = bjpa::tuned_model(design, cfg.e_c_override);

  json results{{"omega_eff_ghz", ghz(model.omega_eff)},
               {"kappa_mhz", mhz(model.kappa)},
               {"kerr_hz", hz(model.kerr_k)},
               {"e_c_ghz", model.e_c / bjpa::constants::planck_h / 1e9},
               {"k_over_kappa", model.kerr_k / model.kappa},
               {"kappa_estimate_mhz", mhz(bjpa::estimate_kappa(design, model.omega_eff))},
               {"design", design_json(design)}};

  std::cout << "omega_eff = " << bjpa::format_double(ghz(model.omega_eff)) << " GHz\n"
            << "K/2pi     = " << bjpa::format_double(hz(model.kerr_k)) << " Hz\n"
            << "E_c/h     = " << bjpa::format_double(model.e_c / bjpa::constants::planck_h / 1e9)
            << " GHz\n"
            << "kappa/2pi = " << bjpa::format_double(mhz(model.kappa)) << " MHz\n"
            << "K/kappa   = " << bjpa::format_double(model.kerr_k / model.kappa) << "\n";

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"omega_eff_ghz", "kappa_mhz", "kerr_hz", "e_c_ghz", "k_over_kappa"});
  w.cell(ghz(model.omega_eff))
      .cell(mhz(model.kappa))
      .cell(hz(model.kerr_k))
      .cell(model.e_c / bjpa::constants::planck_h / 1e9)
      .cell(model.kerr_k / model.kappa);
  w.end_row();

  sink.write("csv", csv.str());
  sink.write_json_report(results);
}

void cmd_photon_number(const bjpa::RunConfig& cfg, ArtifactSink& sink) {
  if (!cfg.photon_number) throw bjpa::ConfigError("photon_number block is required");
  const auto& pc = *cfg.photon_number;

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"delta", "zeta", "root_index", "n", "stable", "bistable"});

  std::vector<bjpa::SvgSeries> series;
  std::size_t rows = 0;
  for (double zeta : pc.zetas) {
    std::vector<std::vector<double>> xs(3), ys(3);
    for (double delta : pc.deltas) {
      const bjpa::RootSet set =
          bjpa::photon_number_roots(bjpa::PumpDrive{delta, zeta, cfg.pump_phase});
      for (std::size_t ri = 0; ri < set.roots.size(); ++ri) {
        w.cell(delta)
            .cell(zeta)
            .cell(static_cast<int>(ri))
            .cell(set.roots[ri].n)
            .cell(set.roots[ri].stable)
            .cell(set.bistable);
        w.end_row();
        ++rows;
        if (ri < 3) {
          xs[ri].push_back(delta);
          ys[ri].push_back(set.roots[ri].n);
        }
      }
      for (std::size_t ri = set.roots.size(); ri < 3; ++ri) {
        xs[ri].push_back(delta);
        ys[ri].push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    for (int ri = 0; ri < 3; ++ri) {
      bool any = false;
      for (double v : ys[ri])
        if (std::isfinite(v)) any = true;
      if (!any) continue;
      std::ostringstream label;
      label << "zeta=" << zeta << (ri == 0 ? "" : " (root " + std::to_string(ri) + ")");
      series.push_back({label.str(), xs[ri], ys[ri]});
    }
  }

  sink.write("csv", csv.str());
  sink.write_json_report(json{{"rows", rows},
                              {"deltas", pc.deltas.size()},
                              {"zetas", pc.zetas}});
  if (sink.wants("svg"))
    sink.write("svg", bjpa::svg_line_plot("photon number vs pump detuning", "delta", "n", series));
}

void cmd_gain(const bjpa::RunConfig& cfg, ArtifactSink& sink, unsigned workers) {
  if (!cfg.gain) throw bjpa::ConfigError("gain block is required");
  const auto& gc = *cfg.gain;

  std::vector<double> zetas = gc.zetas;
  if (zetas.empty()) {
    const bjpa::EffectiveModel model =
        bjpa::reference_model(cfg.require_design(), cfg.require_scale(), cfg.e_c_override);
    for (double p : gc.powers_dbm)
      zetas.push_back(
          bjpa::drive_from_power(p, cfg.require_scale(), model, 0.0, gc.pump_phase).zeta);
  }

  const auto points =
      bjpa::gain_map(gc.deltas, zetas, gc.big_deltas, gc.pump_phase, cfg.policy, workers);

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"delta", "zeta", "root_index", "n", "stable", "bistable", "big_delta",
            "g_signal_db", "g_idler_db", "saturated"});
  const bjpa::GainMapPoint* peak = nullptr;
  for (const auto& p : points) {
    w.cell(p.delta)
        .cell(p.zeta)
        .cell(p.root_index)
        .cell(p.n)
        .cell(p.stable)
        .cell(p.bistable)
        .cell(p.big_delta)
        .cell(p.g_signal_db)
        .cell(p.g_idler_db)
        .cell(p.saturated);
    w.end_row();
    if (!p.saturated && (peak == nullptr || p.g_signal_db > peak->g_signal_db)) peak = &p;
  }
  sink.write("csv", csv.str());

  json results{{"points", points.size()},
               {"saturated_points",
                std::count_if(points.begin(), points.end(),
                              [](const auto& p) { return p.saturated; })}};
  if (peak != nullptr) {
    results["peak"] = json{{"g_signal_db", peak->g_signal_db},
                           {"delta", peak->delta},
                           {"zeta", peak->zeta},
                           {"big_delta", peak->big_delta}};
  }
  sink.write_json_report(results);

  if (sink.wants("svg")) {
    if (gc.big_deltas.size() == 1) {
      std::vector<bjpa::SvgSeries> series;
      for (std::size_t zi = 0; zi < zetas.size(); ++zi) {
        bjpa::SvgSeries s;
        std::ostringstream label;
        label << "zeta=" << zetas[zi];
        s.label = label.str();
        for (std::size_t di = 0; di < gc.deltas.size(); ++di) {
          const auto& p = points[zi * gc.deltas.size() + di];
          s.x.push_back(p.delta);
          s.y.push_back(p.saturated ? std::numeric_limits<double>::quiet_NaN() : p.g_signal_db);
        }
        series.push_back(std::move(s));
      }
      sink.write("svg",
                 bjpa::svg_line_plot("signal gain vs pump detuning", "delta", "gain (dB)", series));
    } else {
      std::vector<bjpa::SvgHeatPanel> panels;
      for (std::size_t zi = 0; zi < zetas.size() && zi < 8; ++zi) {
        bjpa::SvgHeatPanel panel;
        std::ostringstream label;
        label << "zeta=" << zetas[zi];
        panel.label = label.str();
        panel.x = gc.deltas;
        panel.y = gc.big_deltas;
        panel.values.resize(gc.deltas.size() * gc.big_deltas.size());
        for (std::size_t bi = 0; bi < gc.big_deltas.size(); ++bi)
          for (std::size_t di = 0; di < gc.deltas.size(); ++di) {
            const auto& p = points[(zi * gc.deltas.size() + di) * gc.big_deltas.size() + bi];
            panel.values[bi * gc.deltas.size() + di] =
                p.saturated ? std::numeric_limits<double>::quiet_NaN() : p.g_signal_db;
          }
        panels.push_back(std::move(panel));
      }
      sink.write("svg", bjpa::svg_heat_map("signal gain (dB)", "delta", "big_delta", panels));
    }
  }
}

void cmd_p1db(const bjpa::RunConfig& cfg, ArtifactSink& sink) {
  if (!cfg.p1db) throw bjpa::ConfigError("p1db block is required");
  const auto& pc = *cfg.p1db;
  const auto& scale = cfg.require_scale();
  const bjpa::EffectiveModel model =
      bjpa::reference_model(cfg.require_design(), scale, cfg.e_c_override);
  const double delta = pc.delta ? *pc.delta
                                : (cfg.delta ? *cfg.delta : bjpa::default_metric_delta(model));

  double pump_dbm;
  if (pc.pump_power_dbm) {
    pump_dbm = *pc.pump_power_dbm;
  } else {
    pump_dbm = bjpa::find_pump_power_for_gain(model, scale, delta, *pc.gain_target_db);
  }

  const bjpa::P1dBResult res =
      bjpa::compression_point(model, scale, pump_dbm, delta, pc.compression);

  std::cout << "small-signal gain = " << bjpa::format_double(res.small_signal_gain_db)
            << " dB at pump " << bjpa::format_double(res.pump_power_dbm) << " dBm\n";
  if (res.open_ended)
    std::cout << "P1dB > " << bjpa::format_double(res.ceiling_dbm) << " dBm (open-ended)\n";
  else
    std::cout << "P1dB (signal) = " << bjpa::format_double(res.p1db_dbm) << " dBm\n";

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"pump_power_dbm", "delta", "small_signal_gain_db", "p1db_dbm", "open_ended",
            "ceiling_dbm"});
  w.cell(res.pump_power_dbm)
      .cell(delta)
      .cell(res.small_signal_gain_db)
      .cell(res.p1db_dbm)
      .cell(res.open_ended)
      .cell(res.ceiling_dbm);
  w.end_row();
  sink.write("csv", csv.str());

  sink.write_json_report(json{{"pump_power_dbm", res.pump_power_dbm},
                              {"delta", delta},
                              {"small_signal_gain_db", res.small_signal_gain_db},
                              {"p1db_dbm", res.p1db_dbm},
                              {"open_ended", res.open_ended},
                              {"ceiling_dbm", res.ceiling_dbm}});

  if (sink.wants("svg") && !res.open_ended) {
    // Gain vs signal power around the compression point.
    bjpa::SvgSeries curve;
    curve.label = "gain";
    const double pump_watts = 1e-3 * std::pow(10.0, pump_dbm / 10.0);
    for (int i = 0; i <= 160; ++i) {
      const double ps = res.p1db_dbm - 30.0 + 40.0 * i / 160.0;
      const double total =
          10.0 * std::log10((pump_watts + 1e-3 * std::pow(10.0, ps / 10.0)) / 1e-3);
      curve.x.push_back(ps);
      curve.y.push_back(bjpa::gain_at_power_db(total, scale, model, delta));
    }
    bjpa::SvgSeries marker;
    marker.label = "P1dB";
    marker.x = {res.p1db_dbm, res.p1db_dbm};
    marker.y = {res.small_signal_gain_db - 6, res.small_signal_gain_db + 1};
    sink.write("svg", bjpa::svg_line_plot("gain compression", "signal power (dBm)", "gain (dB)",
                                          {curve, marker}));
  }
}

void cmd_tune(const bjpa::RunConfig& cfg, ArtifactSink& sink) {
  if (!cfg.tune) throw bjpa::ConfigError("tune block is required");
  const auto& tc = *cfg.tune;
  bjpa::BandCoverageOptions options = tc.options;
  if (!options.delta && cfg.delta) options.delta = cfg.delta;
  options.e_c_override = cfg.e_c_override;

  const bjpa::TuningCurve curve = bjpa::band_coverage(
      cfg.require_design(), cfg.require_scale(), tc.band_low_ghz, tc.band_high_ghz, options);

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"flux_bias", "omega_eff_ghz", "gain_db", "bandwidth_ghz", "overlaps_previous"});
  json points = json::array();
  for (const auto& p : curve.points) {
    w.cell(p.flux_bias)
        .cell(p.omega_eff_ghz)
        .cell(p.gain_db)
        .cell(p.bandwidth_ghz)
        .cell(p.overlaps_previous);
    w.end_row();
    points.push_back({{"flux_bias", p.flux_bias},
                      {"omega_eff_ghz", p.omega_eff_ghz},
                      {"gain_db", p.gain_db},
                      {"bandwidth_ghz", p.bandwidth_ghz},
                      {"overlaps_previous", p.overlaps_previous}});
  }
  sink.write("csv", csv.str());
  sink.write_json_report(json{{"band_ghz", {tc.band_low_ghz, tc.band_high_ghz}},
                              {"covered", true},
                              {"any_overlap", curve.any_overlap},
                              {"points", points}});

  if (sink.wants("svg")) {
    bjpa::SvgSeries s;
    s.label = "omega_eff";
    for (const auto& p : curve.points) {
      s.x.push_back(p.flux_bias);
      s.y.push_back(p.omega_eff_ghz);
    }
    sink.write("svg", bjpa::svg_line_plot("flux tuning curve", "flux bias (rad)",
                                          "omega_eff (GHz)", {s}));
  }
}

void cmd_compare(const bjpa::RunConfig& cfg, ArtifactSink& sink) {
  if (!cfg.compare) throw bjpa::ConfigError("compare block is required");
  const auto& cc = *cfg.compare;
  std::optional<double> delta = cc.delta ? cc.delta : cfg.delta;

  const bjpa::DesignComparison cmp =
      bjpa::compare_designs(cfg.require_design(), cc.design_b, cfg.require_scale(),
                            cc.gain_target_db, delta, cfg.e_c_override);

  const auto row_json = [](const bjpa::BlochniumDesign& d, const bjpa::P1dBResult& r, bool ok,
                           const std::string& err) {
    json j{{"design", design_json(d)}, {"reached_target", ok}};
    if (ok) {
      j["pump_power_dbm"] = r.pump_power_dbm;
      j["small_signal_gain_db"] = r.small_signal_gain_db;
      j["p1db_dbm"] = r.p1db_dbm;
      j["open_ended"] = r.open_ended;
    } else {
      j["error"] = err;
    }
    return j;
  };

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header({"label", "n_quartons", "m_slaves", "alpha_c", "pump_power_dbm",
            "small_signal_gain_db", "p1db_dbm", "open_ended", "reached_target"});
  const auto row_csv = [&](const char* label, const bjpa::BlochniumDesign& d,
                           const bjpa::P1dBResult& r, bool ok) {
    w.cell(std::string(label))
        .cell(d.n_quartons)
        .cell(d.m_slaves)
        .cell(d.alpha_c);
    if (ok)
      w.cell(r.pump_power_dbm).cell(r.small_signal_gain_db).cell(r.p1db_dbm).cell(r.open_ended);
    else
      w.cell(std::string("ERR")).cell(std::string("ERR")).cell(std::string("ERR")).cell(false);
    w.cell(ok);
    w.end_row();
  };
  row_csv("a", cfg.require_design(), cmp.a, cmp.a_ok);
  row_csv("b", cc.design_b, cmp.b, cmp.b_ok);
  sink.write("csv", csv.str());

  json results{{"a", row_json(cfg.require_design(), cmp.a, cmp.a_ok, cmp.a_error)},
               {"b", row_json(cc.design_b, cmp.b, cmp.b_ok, cmp.b_error)},
               {"gain_target_db", cc.gain_target_db}};
  if (cmp.a_ok && cmp.b_ok) results["p1db_difference_db"] = cmp.p1db_difference_db;
  sink.write_json_report(results);

  if (cmp.a_ok && cmp.b_ok)
    std::cout << "P1dB difference (a - b) = " << bjpa::format_double(cmp.p1db_difference_db)
              << " dB\n";
}

void cmd_sweep(const bjpa::RunConfig& cfg, ArtifactSink& sink, unsigned workers) {
  if (!cfg.sweep) throw bjpa::ConfigError("sweep block is required");
  const auto& spec = cfg.sweep->spec;
  const auto records = bjpa::run_sweep(spec, cfg.make_context(), workers);

  // Axis columns go back out in the units the config used.
  std::vector<std::string> header;
  std::vector<double> axis_scale;
  for (const auto& axis : spec.axes) {
    for (const auto& u : bjpa::axis_units()) {
      if (u.core_name == axis.name) {
        header.push_back(u.config_name);
        axis_scale.push_back(u.to_si);
        break;
      }
    }
  }
  for (const auto& name : spec.outputs) header.push_back(name);

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  w.header(header);
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < rec.fields.size(); ++i) {
      const auto& cell = rec.fields[i].second;
      if (i < axis_scale.size())
        w.cell(cell.value / axis_scale[i]);
      else
        w.cell(cell_text(cell));
    }
    w.end_row();
  }
  sink.write("csv", csv.str());

  std::size_t failed_cells = 0;
  for (const auto& rec : records)
    for (const auto& [name, cell] : rec.fields)
      if (!cell.ok) ++failed_cells;
  sink.write_json_report(json{{"records", records.size()},
                              {"outputs", spec.outputs},
                              {"failed_cells", failed_cells}});
}

void cmd_optimize(const bjpa::RunConfig& cfg, ArtifactSink& sink, unsigned workers,
                  std::uint64_t seed) {
  if (!cfg.optimize) throw bjpa::ConfigError("optimize block is required");
  bjpa::OptimizeSpec spec = cfg.optimize->spec;
  spec.seed = seed;
  const bjpa::OptimizeResult res = bjpa::optimize_design(spec, cfg.make_context(), workers);

  std::vector<std::string> param_names;
  std::vector<double> param_scale;
  for (const auto& p : spec.params) {
    for (const auto& u : bjpa::axis_units()) {
      if (u.core_name == p.name) {
        param_names.push_back(u.config_name);
        param_scale.push_back(u.to_si);
        break;
      }
    }
  }

  std::ostringstream csv;
  bjpa::CsvWriter w(csv);
  {
    std::vector<std::string> header{"step", "phase"};
    header.insert(header.end(), param_names.begin(), param_names.end());
    header.push_back("p1db_dbm");
    header.push_back("gain_db");
    w.header(header);
  }
  for (std::size_t i = 0; i < res.trace.size(); ++i) {
    const auto& t = res.trace[i];
    w.cell(static_cast<int>(i)).cell(t.phase);
    for (std::size_t k = 0; k < t.values.size(); ++k) w.cell(t.values[k] / param_scale[k]);
    w.cell(t.objective).cell(t.gain_db);
    w.end_row();
  }
  sink.write("csv", csv.str());

  json best = json::object();
  for (std::size_t k = 0; k < res.best_values.size(); ++k)
    best[param_names[k]] = res.best_values[k] / param_scale[k];
  json record = json::object();
  for (const auto& [name, cell] : res.best_record.fields)
    record[name] = cell.ok ? json(cell.value) : json{{"error", cell.error}};
  json trace = json::array();
  for (const auto& t : res.trace) {
    json values = json::object();
    for (std::size_t k = 0; k < t.values.size(); ++k)
      values[param_names[k]] = t.values[k] / param_scale[k];
    trace.push_back({{"phase", t.phase},
                     {"values", values},
                     {"p1db_dbm", t.objective},
                     {"gain_db", t.gain_db}});
  }
  sink.write_json_report(json{{"feasible", res.feasible},
                              {"best", best},
                              {"best_record", record},
                              {"best_p1db_dbm", res.best_objective},
                              {"best_gain_db", res.best_gain_db},
                              {"best_gain_seen_db", res.best_gain_seen_db},
                              {"evaluations", res.evaluations},
                              {"trace", trace}});

  if (sink.wants("svg") && !res.trace.empty()) {
    bjpa::SvgSeries s;
    s.label = "objective";
    for (std::size_t i = 0; i < res.trace.size(); ++i) {
      s.x.push_back(static_cast<double>(i));
      s.y.push_back(res.trace[i].objective);
    }
    sink.write("svg",
               bjpa::svg_line_plot("optimizer trace", "accepted move", "P1dB (dBm)", {s}));
  }

  if (res.feasible)
    std::cout << "best P1dB = " << bjpa::format_double(res.best_objective) << " dBm ("
              << res.evaluations << " evaluations)\n";
  else
    std::cout << "no feasible point found; best gain seen = "
              << bjpa::format_double(res.best_gain_seen_db) << " dB\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blochnium Josephson parametric amplifier design tool"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string formats_arg;
  std::string stamp;
  unsigned workers = 0;
  std::int64_t seed_arg = -1;

  const std::vector<std::string> commands = {"model",  "photon-number", "gain",     "p1db",
                                             "tune",   "compare",       "optimize", "sweep"};
  const std::vector<std::string> descriptions = {
      "effective Kerr model from the circuit design",
      "steady-state photon number over a (delta, zeta) grid",
      "signal/idler gain maps",
      "1 dB compression point",
      "flux tuning across a frequency band",
      "head-to-head design comparison",
      "design-space search for the best compression point",
      "general parameter sweep"};
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (default from config)");
    sub->add_option("--formats", formats_arg, "comma-separated subset of csv,json,svg");
    sub->add_option("--workers", workers, "worker threads (default: machine parallelism)");
    sub->add_option("--seed", seed_arg, "optimizer seed (default from config, else 0)");
    sub->add_option("--stamp", stamp, "timestamp override for output filenames");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  try {
    const std::string config_bytes = read_file(config_path);
    const bjpa::RunConfig cfg = bjpa::parse_run_config(config_bytes);

    std::vector<std::string> formats = cfg.output.formats;
    if (!formats_arg.empty()) {
      formats.clear();
      std::stringstream ss(formats_arg);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item != "csv" && item != "json" && item != "svg")
          throw bjpa::ConfigError("--formats entries must be csv, json or svg");
        formats.push_back(item);
      }
    }
    if (out_dir.empty()) out_dir = cfg.output.directory;
    if (workers == 0 && cfg.workers) workers = *cfg.workers;
    std::uint64_t seed = cfg.seed.value_or(0);
    if (seed_arg >= 0) seed = static_cast<std::uint64_t>(seed_arg);
    if (stamp.empty()) stamp = utc_stamp();

    ArtifactSink sink(out_dir, command, stamp, formats);

    if (command == "model") cmd_model(cfg, sink);
    else if (command == "photon-number") cmd_photon_number(cfg, sink);
    else if (command == "gain") cmd_gain(cfg, sink, workers);
    else if (command == "p1db") cmd_p1db(cfg, sink);
    else if (command == "tune") cmd_tune(cfg, sink);
    else if (command == "compare") cmd_compare(cfg, sink);
    else if (command == "sweep") cmd_sweep(cfg, sink, workers);
    else cmd_optimize(cfg, sink, workers, seed);

    sink.write_manifest(config_path, config_bytes, workers, seed);
    return 0;
  } catch (const bjpa::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
