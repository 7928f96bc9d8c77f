#include "dcd/experiment.hpp"

#include <cmath>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "dcd/errors.hpp"
#include "dcd/harness.hpp"
#include "dcd/initial.hpp"
#include "dcd/io.hpp"
#include "json.hpp"

#ifndef DCD_VERSION
#define DCD_VERSION "unknown"
#endif

namespace dcd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::kSolve, "solve"},
    {ExperimentKind::kProperties, "properties"},
    {ExperimentKind::kGnCheck, "gn-check"},
    {ExperimentKind::kPeriodicDecay, "periodic-decay"},
    {ExperimentKind::kSandwich, "sandwich"},
    {ExperimentKind::kExample1, "example1"},
    {ExperimentKind::kExtremal, "extremal"},
};

}  // namespace

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKinds) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view kind_name(ExperimentKind kind) {
  for (const auto& [k, n] : kKinds) {
    if (k == kind) return n;
  }
  return "?";
}

namespace {

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key \"" + key + "\" in " + what);
  }
}

double num(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_coefficient(j.get<std::string>());
  throw ConfigError(what + " must be a number");
}

Interval interval_of(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(what + " must be [lo, hi]");
  return {num(j[0], what), num(j[1], what)};
}

std::vector<double> list_of(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(num(x, what));
  return v;
}

struct Loaded {
  json config;
  fs::path base;
  ScalarModel model = ScalarModel::burgers();
  std::string model_json;
  std::optional<std::uint64_t> seed;
};

ScalarModel model_of(const json& j, const fs::path& base, std::string& text) {
  if (j.is_string()) {
    text = read_file(base / j.get<std::string>());
    return model_from_json(text);
  }
  if (j.is_object() && j.contains("builtin")) {
    only_keys(j, {"builtin", "urange", "speed"}, "model");
    const std::string b = j.at("builtin").get<std::string>();
    const Interval ur = j.contains("urange") ? interval_of(j.at("urange"), "model.urange") : Interval{-1.0, 1.0};
    ScalarModel m = b == "burgers" ? ScalarModel::burgers(ur)
                    : b == "linear" ? ScalarModel::linear_advection(j.contains("speed") ? num(j.at("speed"), "speed") : 1.0, ur)
                                    : throw ConfigError("unknown builtin model \"" + b + "\"");
    text = model_to_json(m);
    return m;
  }
  if (j.is_object()) {
    text = j.dump();
    return model_from_json(text);
  }
  throw ConfigError("model must be a path, a builtin, or an inline model");
}

GridSpec grid_of(const json& j) {
  only_keys(j, {"dim", "x", "y", "cells", "bc"}, "grid");
  GridSpec g;
  g.dim = j.value("dim", 1);
  if (!j.contains("x") || !j.contains("cells")) throw ConfigError("grid needs x and cells");
  g.x = interval_of(j.at("x"), "grid.x");
  if (g.dim == 2) g.y = j.contains("y") ? interval_of(j.at("y"), "grid.y") : g.x;
  const json& c = j.at("cells");
  if (c.is_array()) {
    g.nx = c.at(0).get<std::size_t>();
    g.ny = c.size() > 1 ? c.at(1).get<std::size_t>() : g.nx;
  } else {
    g.nx = c.get<std::size_t>();
    g.ny = g.dim == 2 ? g.nx : 1;
  }
  if (j.contains("bc")) {
    const json& b = j.at("bc");
    if (b == "periodic") {
      g.bc = Boundary::periodic();
    } else if (b.is_object() && b.contains("far_field") && b.size() == 1) {
      g.bc = Boundary::far_field(num(b.at("far_field"), "bc.far_field"));
    } else {
      throw ConfigError("grid.bc must be \"periodic\" or {\"far_field\": v}");
    }
  }
  return g;
}

InitialSpec initial_of(const json& j, const fs::path& base, std::optional<std::uint64_t> seed) {
  only_keys(j,
            {"family", "value", "lo", "hi", "height", "mean", "amplitude", "kx", "ky", "mass", "center",
             "radius", "n_blocks", "seed", "piece", "support", "path"},
            "initial");
  InitialSpec s;
  if (!j.contains("family")) throw ConfigError("initial needs a family");
  s.family = j.at("family").get<std::string>();
  if (j.contains("value")) s.value = num(j.at("value"), "value");
  if (j.contains("lo")) s.lo = num(j.at("lo"), "lo");
  if (j.contains("hi")) s.hi = num(j.at("hi"), "hi");
  if (j.contains("height")) s.height = num(j.at("height"), "height");
  if (j.contains("mean")) s.mean = num(j.at("mean"), "mean");
  if (j.contains("amplitude")) s.amplitude = num(j.at("amplitude"), "amplitude");
  if (j.contains("kx")) s.kx = j.at("kx").get<int>();
  if (j.contains("ky")) s.ky = j.at("ky").get<int>();
  if (j.contains("mass")) s.mass = num(j.at("mass"), "mass");
  if (j.contains("center")) {
    const json& c = j.at("center");
    if (c.is_array()) {
      for (std::size_t i = 0; i < c.size() && i < 2; ++i) s.center[i] = num(c[i], "center");
    } else {
      s.center[0] = num(c, "center");
    }
  }
  if (j.contains("radius")) s.radius = num(j.at("radius"), "radius");
  if (j.contains("n_blocks")) s.n_blocks = j.at("n_blocks").get<int>();
  if (j.contains("piece")) s.piece = num(j.at("piece"), "piece");
  if (j.contains("support")) {
    const Interval sup = interval_of(j.at("support"), "support");
    s.support_lo = sup.lo;
    s.support_hi = sup.hi;
  }
  if (j.contains("path")) s.path = (base / j.at("path").get<std::string>()).string();
  if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
  if (seed) s.seed = seed;
  if (s.family == "random" && !s.seed) {
    throw ConfigError("a seed is required for random initial data (config \"seed\" or --seed)");
  }
  return s;
}

SolverConfig solver_of(const json& j) {
  only_keys(j, {"cfl", "t_end", "snapshot_times", "snapshot_interval", "lipschitz_samples", "certified_range"},
            "solver");
  SolverConfig c;
  if (j.contains("cfl")) c.cfl = num(j.at("cfl"), "cfl");
  if (j.contains("t_end")) c.t_end = num(j.at("t_end"), "t_end");
  if (j.contains("snapshot_times")) c.snapshot_times = list_of(j.at("snapshot_times"), "snapshot_times");
  if (j.contains("snapshot_interval")) {
    const double dt = num(j.at("snapshot_interval"), "snapshot_interval");
    if (!(dt > 0.0)) throw ConfigError("snapshot_interval must be positive");
    if (!c.snapshot_times.empty()) throw ConfigError("give snapshot_times or snapshot_interval, not both");
    const auto n = static_cast<long>(std::floor(c.t_end / dt + 1e-9));
    if (n > 100000) throw ConfigError("too many snapshots");
    for (long i = 1; i <= n; ++i) c.snapshot_times.push_back(std::min(c.t_end, dt * static_cast<double>(i)));
  }
  if (j.contains("lipschitz_samples")) c.lipschitz_samples = j.at("lipschitz_samples").get<int>();
  if (j.contains("certified_range")) c.certified_range = interval_of(j.at("certified_range"), "certified_range");
  c.validate();
  return c;
}

LatticeSpec lattice_of(const json& j, int dim) {
  if (j.is_null()) return LatticeSpec::integer(dim);
  only_keys(j, {"basis"}, "lattice");
  const json& b = j.at("basis");
  if (!b.is_array() || static_cast<int>(b.size()) != dim) {
    throw ConfigError("lattice.basis must list dim generator vectors");
  }
  Mat2 m{};
  for (int k = 0; k < dim; ++k) {
    const std::vector<double> g = list_of(b[k], "lattice generator");
    if (static_cast<int>(g.size()) != dim) throw ConfigError("lattice generator has the wrong length");
    for (int i = 0; i < dim; ++i) m[i * 2 + k] = g[i];  // columns are generators
  }
  if (dim == 1) m = {m[0], 0.0, 0.0, 1.0};
  return LatticeSpec(dim, m);
}

std::set<std::string> allowed_keys(ExperimentKind kind) {
  std::set<std::string> keys{"schema", "kind", "model", "seed"};
  switch (kind) {
    case ExperimentKind::kSolve:
      keys.insert({"grid", "initial", "solver"});
      break;
    case ExperimentKind::kProperties:
      keys.insert({"grid", "initial", "pair", "solver"});
      break;
    case ExperimentKind::kGnCheck:
      keys.insert({"lattice", "mean", "xi_bound"});
      break;
    case ExperimentKind::kPeriodicDecay:
      keys.insert({"grid", "initial", "solver", "lattice", "fraction", "xi_bound"});
      break;
    case ExperimentKind::kSandwich:
      keys.insert({"grid", "initial", "solver", "lattice", "r", "fraction"});
      break;
    case ExperimentKind::kExample1:
      keys.insert({"n_blocks", "cells", "t_max", "threshold", "domain", "snapshot_interval", "cfl"});
      break;
    case ExperimentKind::kExtremal:
      keys.insert({"grid", "initial", "solver", "b_list", "radius_list", "inner_box", "factor"});
      break;
  }
  return keys;
}

class Artifacts {
 public:
  explicit Artifacts(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }
  void write(const std::string& name, const std::string& content) {
    atomic_write(dir_ / name, content);
    hashes_[name] = hash_hex(content);
  }
  void grid(const std::string& name, const GridFunction& g) {
    write(name, grid_csv(g));
    write(name + ".json", grid_sidecar(g));
  }
  const json& hashes() const { return hashes_; }

 private:
  fs::path dir_;
  json hashes_ = json::object();
};

std::string padded(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

json scheme_json(const SchemeInfo& s) {
  return {{"flux", s.flux},
          {"range", {s.range.lo, s.range.hi}},
          {"lambda", {s.lambda[0], s.lambda[1]}},
          {"diffusion_bound", s.diffusion_bound},
          {"dt_max", std::isfinite(s.dt_max) ? json(s.dt_max) : json("inf")},
          {"monotone", s.monotone},
          {"diagnostic_only", s.diagnostic_only}};
}

json steps_json(const Trajectory& t) {
  json steps = json::array();
  for (const auto& s : t.steps()) steps.push_back({s.dt, s.count});
  return steps;
}

int execute(ExperimentKind kind, const Loaded& in, Artifacts& out, json& manifest, std::ostream& log,
            bool quiet) {
  const json& c = in.config;
  const auto need = [&](const char* key) -> const json& {
    if (!c.contains(key)) throw ConfigError(std::string("config needs \"") + key + "\"");
    return c.at(key);
  };
  const auto say = [&](const std::string& s) {
    if (!quiet) log << s << '\n';
  };
  const auto finish = [&](const PropertyReport& rep) {
    out.write("report.json", report_to_json(rep));
    for (const auto& ch : rep.checks()) {
      say(std::string(ch.pass ? "PASS " : "FAIL ") + ch.name + "  slack=" + format_double(ch.slack) +
          (ch.detail.empty() ? "" : "  (" + ch.detail + ")"));
    }
    return rep.all_pass() ? kExitPass : kExitCheckFailed;
  };

  switch (kind) {
    case ExperimentKind::kSolve: {
      const GridFunction u0 = build_initial(initial_of(need("initial"), in.base, in.seed), grid_of(need("grid")));
      const SolverConfig cfg = solver_of(c.value("solver", json::object()));
      const Trajectory traj = solve(u0, in.model, cfg);
      for (std::size_t i = 0; i < traj.times().size(); ++i) {
        out.grid("snapshot_" + padded(i) + ".csv", traj.snapshots()[i]);
      }
      out.write("decay.csv", decay_csv(decay_series(traj)));
      json times = json::array();
      for (double t : traj.times()) times.push_back(t);
      manifest["snapshot_times"] = times;
      manifest["scheme"] = scheme_json(traj.scheme());
      manifest["steps"] = steps_json(traj);
      say("solved to t = " + format_double(traj.times().back()) + " in " + std::to_string(traj.step_count()) +
          " steps");
      return kExitPass;
    }
    case ExperimentKind::kProperties: {
      const GridSpec gs = grid_of(need("grid"));
      const SolverConfig cfg = solver_of(c.value("solver", json::object()));
      const GridFunction u0 = build_initial(initial_of(need("initial"), in.base, in.seed), gs);
      PropertyReport rep;
      if (c.contains("pair")) {
        const GridFunction v0 = build_initial(initial_of(c.at("pair"), in.base, in.seed), gs);
        SolverConfig shared = cfg;
        if (!shared.certified_range) {
          shared.certified_range = Interval{std::min(u0.min(), v0.min()), std::max(u0.max(), v0.max())};
          if (!gs.bc.is_periodic()) {
            shared.certified_range->lo = std::min({shared.certified_range->lo, u0.bc().value, v0.bc().value});
            shared.certified_range->hi = std::max({shared.certified_range->hi, u0.bc().value, v0.bc().value});
          }
        }
        const Trajectory a = solve(u0, in.model, shared);
        const Trajectory b = solve(v0, in.model, shared);
        rep.merge(check_properties(a), "u.");
        rep.merge(check_properties(b), "v.");
        rep.merge(check_properties(a, b), "pair.");
      } else {
        rep.merge(check_properties(solve(u0, in.model, cfg)));
      }
      return finish(rep);
    }
    case ExperimentKind::kGnCheck: {
      const GNReport gn = check_gn(in.model);
      json body = json::parse(gn_report_to_json(gn));
      if (c.contains("mean")) {
        const HypothesisReport h = thm_hypothesis_periodic(in.model, lattice_of(c.value("lattice", json()), in.model.dim()),
                                                           num(c.at("mean"), "mean"), c.value("xi_bound", 50));
        json w = json::array();
        for (const auto& x : h.witnesses) {
          w.push_back({{"coords", {x.coords[0], x.coords[1]}},
                       {"xi", {x.xi[0], x.xi[1]}},
                       {"neighborhood", {x.neighborhood.lo, x.neighborhood.hi}}});
        }
        body["hypothesis"] = {{"verified", h.verified}, {"xi_bound", h.xi_bound}, {"witnesses", w}, {"note", h.note}};
      }
      out.write("report.json", body.dump(2));
      say(std::string("GN ") + (gn.holds ? "holds" : "fails"));
      if (gn.witness) say("witness (" + format_double(gn.witness->lo) + ", " + format_double(gn.witness->hi) + ")");
      return gn.holds ? kExitPass : kExitCheckFailed;
    }
    case ExperimentKind::kPeriodicDecay: {
      const GridSpec gs = grid_of(need("grid"));
      if (!gs.bc.is_periodic()) throw ConfigError("periodic-decay needs grid.bc = \"periodic\"");
      const GridFunction u0 = build_initial(initial_of(need("initial"), in.base, in.seed), gs);
      const PeriodicDecayResult r =
          run_periodic_decay(in.model, u0, lattice_of(c.value("lattice", json()), gs.dim),
                             solver_of(c.value("solver", json::object())), c.value("fraction", 0.05),
                             c.value("xi_bound", 50));
      out.write("decay.csv", decay_csv(r.series));
      manifest["hypothesis_note"] = r.hypothesis.note;
      return finish(r.report);
    }
    case ExperimentKind::kSandwich: {
      const GridSpec gs = grid_of(need("grid"));
      const GridFunction u0 = build_initial(initial_of(need("initial"), in.base, in.seed), gs);
      const SandwichResult r = run_sandwich_decay(u0, in.model, lattice_of(c.value("lattice", json()), gs.dim),
                                                  num(need("r"), "r"), solver_of(c.value("solver", json::object())));
      out.write("decay_lower.csv", decay_csv(r.lower_series));
      out.write("decay.csv", decay_csv(r.middle_series));
      out.write("decay_upper.csv", decay_csv(r.upper_series));
      out.grid("lower_final.csv", sample_periodic(r.lower.final_state(), r.middle.final_state()));
      out.grid("middle_final.csv", r.middle.final_state());
      out.grid("upper_final.csv", sample_periodic(r.upper.final_state(), r.middle.final_state()));
      manifest["sandwich"] = {{"r", r.r}, {"mean_minus", r.mean_minus}, {"mean_plus", r.mean_plus},
                              {"b_minus", r.b_minus}, {"b_plus", r.b_plus}};
      PropertyReport rep = r.report;
      if (c.contains("fraction")) rep.merge(analyze_whole_space_decay(r.middle, num(c.at("fraction"), "fraction")).report, "whole_space.");
      return finish(rep);
    }
    case ExperimentKind::kExample1: {
      Example1Options o;
      if (c.contains("n_blocks")) o.n_blocks = c.at("n_blocks").get<int>();
      if (c.contains("cells")) o.cells = c.at("cells").get<std::size_t>();
      if (c.contains("t_max")) o.t_max = num(c.at("t_max"), "t_max");
      if (c.contains("threshold")) o.threshold = num(c.at("threshold"), "threshold");
      if (c.contains("domain")) o.domain = interval_of(c.at("domain"), "domain");
      if (c.contains("snapshot_interval")) o.snapshot_interval = num(c.at("snapshot_interval"), "snapshot_interval");
      if (c.contains("cfl")) o.cfl = num(c.at("cfl"), "cfl");
      const Example1Result r = check_example1(o);
      out.write("decay.csv", decay_csv(r.series));
      return finish(r.report);
    }
    case ExperimentKind::kExtremal: {
      const GridSpec gs = grid_of(need("grid"));
      const GridFunction u0 = build_initial(initial_of(need("initial"), in.base, in.seed), gs);
      const auto trajs = truncation_sequence(u0, in.model, solver_of(c.value("solver", json::object())),
                                             list_of(need("b_list"), "b_list"), list_of(need("radius_list"), "radius_list"));
      const Interval inner = c.contains("inner_box") ? interval_of(c.at("inner_box"), "inner_box") : Interval{-2.0, 2.0};
      for (std::size_t i = 0; i < trajs.size(); ++i) out.grid("truncated_" + padded(i) + "_final.csv", trajs[i].final_state());
      return finish(check_extremal_convergence(trajs, inner, c.value("factor", 2.0)));
    }
  }
  return kExitInternal;
}

}  // namespace

int run_experiment(const RunOptions& options, std::ostream& log, std::ostream& err) {
  try {
    Loaded in;
    const std::string text = read_file(options.config);
    try {
      in.config = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    in.base = options.config.parent_path();
    const json& c = in.config;
    only_keys(c, allowed_keys(options.kind), "config for " + std::string(kind_name(options.kind)));
    if (!c.contains("schema") || c.at("schema") != 1) throw ConfigError("config needs \"schema\": 1");
    if (c.contains("kind") && c.at("kind") != kind_name(options.kind)) {
      throw ConfigError("config kind \"" + c.at("kind").get<std::string>() + "\" does not match the subcommand");
    }
    if (c.contains("seed")) in.seed = c.at("seed").get<std::uint64_t>();
    if (options.seed) in.seed = options.seed;
    if (options.kind != ExperimentKind::kExample1) {
      if (!c.contains("model")) throw ConfigError("config needs \"model\"");
      in.model = model_of(c.at("model"), in.base, in.model_json);
    } else {
      in.model_json = model_to_json(in.model);
    }

    Artifacts out(options.out);
    json manifest;
    manifest["tool"] = "dcd";
    manifest["version"] = DCD_VERSION;
    manifest["kind"] = kind_name(options.kind);
    manifest["config"] = c;
    manifest["seed"] = in.seed ? json(*in.seed) : json(nullptr);
    manifest["inputs"] = {{"config", hash_hex(text)}, {"model", hash_hex(in.model_json)}};
    const int status = execute(options.kind, in, out, manifest, log, options.quiet);
    manifest["status"] = status;
    manifest["outputs"] = out.hashes();
    atomic_write(options.out / "manifest.json", manifest.dump(2) + "\n");
    return status;
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const json::exception& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const AnalysisError& e) {
    err << "analysis error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "internal fault: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace dcd
