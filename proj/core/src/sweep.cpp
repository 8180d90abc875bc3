#include "bjpa/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "bjpa/constants.hpp"
#include "bjpa/errors.hpp"
#include "bjpa/parallel.hpp"

namespace bjpa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void apply_parameter(SweepContext& ctx, const std::string& name, double value) {
  const auto as_int = [&](const char* what) {
    const double r = std::round(value);
    if (std::abs(value - r) > 1e-9 || r < 1.0)
      throw ConfigError(std::string(what) + " must be a positive integer, got " +
                        std::to_string(value));
    return static_cast<int>(r);
  };
  if (name == "n_quartons") ctx.design.n_quartons = as_int("n_quartons");
  else if (name == "m_slaves") ctx.design.m_slaves = as_int("m_slaves");
  else if (name == "alpha_c") ctx.design.alpha_c = value;
  else if (name == "e_js") ctx.design.e_js = value;
  else if (name == "c_g") ctx.design.c_g = value;
  else if (name == "c_js") ctx.design.c_js = value;
  else if (name == "c_jm") ctx.design.c_jm = value;
  else if (name == "z0") ctx.design.z0 = value;
  else if (name == "flux_bias") ctx.design.flux_bias = value;
  else if (name == "kappa") { ctx.design.kappa = value; ctx.scale.kappa = value; }
  else if (name == "omega_p") ctx.scale.omega_p = value;
  else if (name == "delta") { ctx.delta = value; ctx.delta_is_auto = false; }
  else if (name == "zeta") { ctx.zeta = value; ctx.pump_power_dbm.reset(); }
  else if (name == "pump_power_dbm") { ctx.pump_power_dbm = value; ctx.zeta.reset(); }
  else if (name == "pump_phase") ctx.pump_phase = value;
  else if (name == "big_delta") ctx.big_delta = value;
  else throw ConfigError("unknown sweep parameter '" + name + "'");
}

// Memoizing evaluator for one configured point.
class PointEvaluator {
 public:
  explicit PointEvaluator(const SweepContext& ctx) : ctx_(ctx) {}

  SweepCell output(const std::string& name) {
    try {
      return SweepCell::of(compute(name));
    } catch (const std::exception& e) {
      return SweepCell::failed(e.what());
    }
  }

 private:
  const SweepContext& ctx_;
  std::optional<EffectiveModel> model_;
  std::optional<double> delta_;
  std::optional<double> zeta_;
  std::optional<double> pump_dbm_;
  std::optional<RootSet> roots_;
  std::optional<OperatingPoint> op_;
  std::optional<GainResult> gain_;
  bool gain_saturated_ = false;
  std::optional<P1dBResult> p1db_;

  const EffectiveModel& model() {
    if (!model_) model_ = reference_model(ctx_.design, ctx_.scale, ctx_.e_c_override);
    return *model_;
  }
  double delta() {
    if (!delta_) delta_ = ctx_.delta_is_auto ? default_metric_delta(model()) : ctx_.delta;
    return *delta_;
  }
  double zeta() {
    if (!zeta_) {
      if (ctx_.zeta) zeta_ = *ctx_.zeta;
      else if (ctx_.pump_power_dbm)
        zeta_ = drive_from_power(*ctx_.pump_power_dbm, ctx_.scale, model(), delta()).zeta;
      else zeta_ = 0.0;
    }
    return *zeta_;
  }
  double pump_dbm() {
    if (!pump_dbm_) {
      if (ctx_.pump_power_dbm) pump_dbm_ = *ctx_.pump_power_dbm;
      else pump_dbm_ = power_for_zeta(zeta(), ctx_.scale, model());
    }
    return *pump_dbm_;
  }
  const OperatingPoint& op() {
    if (!op_) {
      const PumpDrive drive{delta(), zeta(), ctx_.pump_phase};
      roots_ = photon_number_roots(drive);
      op_ = select_branch(drive, *roots_, ctx_.policy);
    }
    return *op_;
  }
  const GainResult& gain() {
    if (!gain_) {
      try {
        gain_ = gain_at(op(), ctx_.big_delta);
      } catch (const ComputeError&) {
        GainResult g;
        g.g_signal_db = kSaturationDb;
        g.g_idler_db = kSaturationDb;
        gain_ = g;
        gain_saturated_ = true;
        return *gain_;
      }
      if (gain_->g_signal_db > kSaturationDb) {
        gain_->g_signal_db = kSaturationDb;
        gain_saturated_ = true;
      }
    }
    return *gain_;
  }
  const P1dBResult& p1db() {
    if (!p1db_) p1db_ = compression_point(model(), ctx_.scale, pump_dbm(), delta(),
                                          ctx_.compression);
    return *p1db_;
  }

  double compute(const std::string& name) {
    if (name == "omega_eff_ghz")
      return tuned_model(ctx_.design, ctx_.e_c_override).omega_eff / constants::two_pi / 1e9;
    if (name == "e_c_ghz") return model().e_c / constants::planck_h / 1e9;
    if (name == "kerr_hz") return model().kerr_k / constants::two_pi;
    if (name == "k_over_kappa") return model().kerr_k / model().kappa;
    if (name == "zeta") return zeta();
    if (name == "delta") return delta();
    if (name == "pump_power_dbm") return pump_dbm();
    if (name == "n") return op().n;
    if (name == "stable") return op().stable ? 1.0 : 0.0;
    if (name == "bistable") { op(); return roots_->bistable ? 1.0 : 0.0; }
    if (name == "gain_db") return gain().g_signal_db;
    if (name == "g_idler_db") return gain().g_idler_db;
    if (name == "saturated") { gain(); return gain_saturated_ ? 1.0 : 0.0; }
    if (name == "bandwidth_kappa") return bandwidth_3db(op());
    if (name == "bandwidth_ghz")
      return bandwidth_3db(op()) * model().kappa / constants::two_pi / 1e9;
    if (name == "small_signal_gain_db") return gain_at(op(), 0.0).g_signal_db;
    if (name == "p1db_dbm") return p1db().p1db_dbm;
    if (name == "p1db_open_ended") return p1db().open_ended ? 1.0 : 0.0;
    throw ConfigError("unknown sweep output '" + name + "'");
  }
};

}  // namespace

const SweepCell* SweepRecord::find(const std::string& name) const {
  for (const auto& [key, cell] : fields)
    if (key == name) return &cell;
  return nullptr;
}

const std::vector<std::string>& sweep_parameter_names() {
  static const std::vector<std::string> names = {
      "n_quartons", "m_slaves", "alpha_c", "e_js", "c_g", "c_js", "c_jm", "z0",
      "kappa", "flux_bias", "omega_p", "delta", "zeta", "pump_power_dbm",
      "pump_phase", "big_delta"};
  return names;
}

const std::vector<std::string>& sweep_output_names() {
  static const std::vector<std::string> names = {
      "omega_eff_ghz", "e_c_ghz", "kerr_hz", "k_over_kappa", "zeta", "delta",
      "pump_power_dbm", "n", "stable", "bistable", "gain_db", "g_idler_db",
      "saturated", "bandwidth_kappa", "bandwidth_ghz", "small_signal_gain_db",
      "p1db_dbm", "p1db_open_ended"};
  return names;
}

SweepRecord evaluate_point(const SweepContext& ctx, const std::vector<std::string>& outputs) {
  PointEvaluator eval(ctx);
  SweepRecord record;
  record.fields.reserve(outputs.size());
  for (const auto& name : outputs) record.fields.emplace_back(name, eval.output(name));
  return record;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, const SweepContext& base,
                                   unsigned workers) {
  const auto& known = sweep_parameter_names();
  std::size_t total = 1;
  for (const auto& axis : spec.axes) {
    if (axis.values.empty()) throw ConfigError("sweep axis '" + axis.name + "' has no values");
    if (std::find(known.begin(), known.end(), axis.name) == known.end())
      throw ConfigError("unknown sweep parameter '" + axis.name + "'");
    if (axis.values.size() > spec.max_points / total)
      throw ConfigError("sweep grid exceeds the configured cap of " +
                        std::to_string(spec.max_points) + " points");
    total *= axis.values.size();
  }
  for (const auto& name : spec.outputs) {
    const auto& outs = sweep_output_names();
    if (std::find(outs.begin(), outs.end(), name) == outs.end())
      throw ConfigError("unknown sweep output '" + name + "'");
  }

  std::vector<SweepRecord> records(total);
  parallel_for(total, workers, [&](std::size_t index) {
    SweepContext ctx = base;
    SweepRecord& record = records[index];
    record.fields.reserve(spec.axes.size() + spec.outputs.size());

    // Row-major: first axis varies slowest.
    std::size_t rest = index;
    std::size_t block = total;
    for (const auto& axis : spec.axes) {
      block /= axis.values.size();
      const double value = axis.values[rest / block];
      rest %= block;
      apply_parameter(ctx, axis.name, value);
      record.fields.emplace_back(axis.name, SweepCell::of(value));
    }

    PointEvaluator eval(ctx);
    for (const auto& name : spec.outputs) record.fields.emplace_back(name, eval.output(name));
  });
  return records;
}

namespace {

// Optimizer internals -------------------------------------------------------

struct Evaluation {
  bool feasible = false;
  double objective = -kInf;  // p1db_dbm
  double gain_db = -kInf;
  double junctions = 0.0;  // N*M tiebreak
  bool open_ended = false;
  std::string error;
};

class Objective {
 public:
  Objective(const OptimizeSpec& spec, const SweepContext& base)
      : spec_(spec), base_(base) {}

  int evaluations() const { return evaluations_; }
  double best_gain_seen() const { return best_gain_seen_; }
  bool budget_left() const { return evaluations_ < spec_.budget; }

  const Evaluation& eval(const std::vector<double>& values) {
    auto it = cache_.find(values);
    if (it != cache_.end()) return it->second;
    ++evaluations_;
    Evaluation e = compute(values);
    best_gain_seen_ = std::max(best_gain_seen_, e.gain_db);
    return cache_.emplace(values, std::move(e)).first->second;
  }

  SweepContext context_for(const std::vector<double>& values) const {
    SweepContext ctx = base_;
    for (std::size_t i = 0; i < spec_.params.size(); ++i)
      apply_parameter(ctx, spec_.params[i].name, values[i]);
    return ctx;
  }

 private:
  const OptimizeSpec& spec_;
  const SweepContext& base_;
  std::map<std::vector<double>, Evaluation> cache_;
  int evaluations_ = 0;
  double best_gain_seen_ = -kInf;

  Evaluation compute(const std::vector<double>& values) const {
    Evaluation e;
    try {
      SweepContext ctx = context_for(values);
      const EffectiveModel model = reference_model(ctx.design, ctx.scale, ctx.e_c_override);
      const double delta = ctx.delta_is_auto ? default_metric_delta(model) : ctx.delta;
      double pump_dbm;
      if (ctx.pump_power_dbm) pump_dbm = *ctx.pump_power_dbm;
      else if (ctx.zeta) pump_dbm = power_for_zeta(*ctx.zeta, ctx.scale, model);
      else pump_dbm = find_pump_power_for_gain(model, ctx.scale, delta, ctx.gain_target_db);

      e.gain_db = gain_at_power_db(pump_dbm, ctx.scale, model, delta);
      e.junctions = static_cast<double>(ctx.design.n_quartons) *
                    static_cast<double>(ctx.design.m_slaves);
      e.feasible = e.gain_db >= spec_.min_gain_db - spec_.feasibility_margin_db;
      if (e.feasible) {
        const P1dBResult p = compression_point(model, ctx.scale, pump_dbm, delta,
                                               ctx.compression);
        e.objective = p.p1db_dbm;
        e.open_ended = p.open_ended;
      }
    } catch (const std::exception& ex) {
      e.feasible = false;
      e.error = ex.what();
    }
    return e;
  }
};

// Strictly-better comparison with the documented tie-breaks.
bool better(const Evaluation& a, const std::vector<double>& av,
            const Evaluation& b, const std::vector<double>& bv) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.gain_db > b.gain_db;
  if (std::abs(a.objective - b.objective) > 1e-12) return a.objective > b.objective;
  if (std::abs(a.gain_db - b.gain_db) > 1e-12) return a.gain_db > b.gain_db;
  if (a.junctions != b.junctions) return a.junctions < b.junctions;
  return av < bv;  // deterministic final tiebreak
}

std::vector<double> range_values(const ParamRange& p) {
  if (p.is_lattice()) return p.lattice;
  std::vector<double> out;
  if (p.integral) {
    for (double v = std::ceil(p.lo); v <= p.hi + 1e-9; v += 1.0) out.push_back(v);
  }
  return out;  // empty for continuous ranges
}

}  // namespace

OptimizeResult optimize_design(const OptimizeSpec& spec, const SweepContext& base,
                               unsigned workers) {
  (void)workers;  // candidate evaluation is cheap; the search is sequential
  if (spec.params.empty()) throw ConfigError("optimizer needs at least one parameter");
  if (spec.budget < 27) throw ConfigError("optimizer budget must be >= 27");
  for (const auto& p : spec.params) {
    const auto& known = sweep_parameter_names();
    if (std::find(known.begin(), known.end(), p.name) == known.end())
      throw ConfigError("unknown optimizer parameter '" + p.name + "'");
    if (!p.is_lattice() && !(p.lo <= p.hi))
      throw ConfigError("optimizer parameter '" + p.name + "' has an empty range");
  }

  Objective objective(spec, base);
  const std::size_t dim = spec.params.size();

  // ---- Phase 1: seeding. Enumerate the full lattice when it fits the
  // budget; otherwise Latin-style stratified samples.
  std::vector<std::vector<double>> seeds;
  {
    std::vector<std::vector<double>> grids(dim);
    bool all_discrete = true;
    std::size_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
      grids[i] = range_values(spec.params[i]);
      if (grids[i].empty()) { all_discrete = false; break; }
      if (total > static_cast<std::size_t>(spec.budget) / grids[i].size() + 1)
        total = static_cast<std::size_t>(spec.budget) + 1;
      else total *= grids[i].size();
    }
    if (all_discrete && total <= static_cast<std::size_t>(spec.budget)) {
      seeds.assign(total, std::vector<double>(dim));
      for (std::size_t index = 0; index < total; ++index) {
        std::size_t rest = index, block = total;
        for (std::size_t i = 0; i < dim; ++i) {
          block /= grids[i].size();
          seeds[index][i] = grids[i][rest / block];
          rest %= block;
        }
      }
    } else {
      std::mt19937_64 rng(spec.seed);
      const int m = std::clamp(spec.budget / 3, 9, 64);
      std::vector<std::vector<int>> strata(dim, std::vector<int>(m));
      for (std::size_t i = 0; i < dim; ++i) {
        auto& s = strata[i];
        for (int k = 0; k < m; ++k) s[k] = k;
        std::shuffle(s.begin(), s.end(), rng);
      }
      seeds.assign(m, std::vector<double>(dim));
      for (int k = 0; k < m; ++k) {
        for (std::size_t i = 0; i < dim; ++i) {
          const ParamRange& p = spec.params[i];
          const double u = (strata[i][k] + 0.5) / m;
          if (p.is_lattice()) {
            const std::size_t idx = std::min(p.lattice.size() - 1,
                                             static_cast<std::size_t>(u * p.lattice.size()));
            seeds[k][i] = p.lattice[idx];
          } else if (p.integral) {
            seeds[k][i] = std::round(p.lo + (p.hi - p.lo) * u);
          } else {
            seeds[k][i] = p.lo + (p.hi - p.lo) * u;
          }
        }
      }
    }
  }

  OptimizeResult result;
  std::vector<double> best;
  const Evaluation* best_eval = nullptr;

  const auto consider = [&](const std::vector<double>& values, const char* phase) {
    const Evaluation& e = objective.eval(values);
    if (best_eval == nullptr || better(e, values, *best_eval, best)) {
      best = values;
      best_eval = &objective.eval(values);
      result.trace.push_back({values, e.objective, e.gain_db, phase});
      return true;
    }
    return false;
  };

  for (const auto& seed : seeds) {
    if (!objective.budget_left()) break;
    consider(seed, "seed");
  }

  // ---- Phase 2: coordinate descent with golden-section refinement.
  if (best_eval != nullptr) {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    bool improved = true;
    while (improved && objective.budget_left()) {
      improved = false;
      for (std::size_t i = 0; i < dim && objective.budget_left(); ++i) {
        const ParamRange& p = spec.params[i];
        const std::string phase = p.name;

        if (p.is_lattice() || p.integral) {
          const std::vector<double> values = range_values(p);
          auto pos = std::find(values.begin(), values.end(), best[i]);
          if (pos == values.end()) continue;
          for (int dir : {+1, -1}) {
            auto at = pos;
            while (objective.budget_left()) {
              if (dir > 0 && std::next(at) == values.end()) break;
              if (dir < 0 && at == values.begin()) break;
              std::advance(at, dir);
              std::vector<double> cand = best;
              cand[i] = *at;
              if (!consider(cand, phase.c_str())) break;
              pos = std::find(values.begin(), values.end(), best[i]);
              improved = true;
            }
          }
        } else {
          if (p.hi <= p.lo) continue;
          const double tol = spec.golden_tol * (p.hi - p.lo);
          double a = p.lo, b = p.hi;
          double c = b - golden * (b - a);
          double d = a + golden * (b - a);
          const auto value_at = [&](double x) {
            std::vector<double> cand = best;
            cand[i] = x;
            const Evaluation& e = objective.eval(cand);
            return e.feasible ? e.objective : -kInf;
          };
          double fc = value_at(c);
          double fd = value_at(d);
          while (b - a > tol && objective.budget_left()) {
            if (fc > fd) {
              b = d; d = c; fd = fc;
              c = b - golden * (b - a);
              fc = value_at(c);
            } else {
              a = c; c = d; fc = fd;
              d = a + golden * (b - a);
              fd = value_at(d);
            }
          }
          std::vector<double> cand = best;
          cand[i] = (fc > fd) ? c : d;
          if (consider(cand, phase.c_str())) improved = true;
        }
      }
    }
  }

  result.evaluations = objective.evaluations();
  result.best_gain_seen_db = objective.best_gain_seen();
  if (best_eval != nullptr) {
    result.feasible = best_eval->feasible;
    result.best_values = best;
    result.best_objective = best_eval->objective;
    result.best_gain_db = best_eval->gain_db;

    // Resolve the pump the same way the objective did, then report the
    // winning point through the standard evaluator.
    SweepContext ctx = objective.context_for(best);
    if (!ctx.pump_power_dbm && !ctx.zeta) {
      try {
        const EffectiveModel model = reference_model(ctx.design, ctx.scale, ctx.e_c_override);
        const double delta = ctx.delta_is_auto ? default_metric_delta(model) : ctx.delta;
        ctx.pump_power_dbm = find_pump_power_for_gain(model, ctx.scale, delta,
                                                      ctx.gain_target_db);
      } catch (const std::exception&) {
        // leave unset; the evaluator reports per-field errors
      }
    }
    SweepRecord record;
    for (std::size_t i = 0; i < dim; ++i)
      record.fields.emplace_back(spec.params[i].name, SweepCell::of(best[i]));
    const SweepRecord outputs = evaluate_point(
        ctx, {"gain_db", "p1db_dbm", "p1db_open_ended", "pump_power_dbm", "zeta", "kerr_hz"});
    for (const auto& field : outputs.fields) record.fields.push_back(field);
    result.best_record = std::move(record);
  }
  return result;
}

}  // namespace bjpa
