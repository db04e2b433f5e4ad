#include "darkbell/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <regex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "darkbell/error.hpp"
#include "json.hpp"

namespace darkbell {

using nlohmann::json;

namespace {

constexpr double kEigenResidualTolerance = 1e-12;
constexpr double kNullspaceTolerance = 1e-10;
constexpr double kRelationTolerance = 1e-10;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
    case ErrorKind::InvalidParams:
    case ErrorKind::OutOfRange:
    case ErrorKind::CutoffExceeded:
      return kExitUsage;
    case ErrorKind::ConditionsViolated:
      return kExitCheckFailed;
    default:
      return kExitNumerical;
  }
}

template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const EvolutionError& e) {
    log << "error (" << to_string(e.kind()) << ") at t = " << e.time() << ": " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const Error& e) {
    log << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

// Writes text to a file, or stdout for "-".
void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Config, fmt::format("cannot write '{}'", path));
  out << text;
}

std::string require_out(const CommandOptions& opts) {
  if (!opts.out) throw Error(ErrorKind::Config, "missing output path (--out)");
  return *opts.out;
}

void require_format(const CommandOptions& opts) {
  if (opts.format != "csv" && opts.format != "json") {
    throw Error(ErrorKind::Config, fmt::format("unknown format '{}' (expected csv|json)", opts.format));
  }
}

std::optional<RunConfig> load_config(const CommandOptions& opts) {
  if (!opts.config) return std::nullopt;
  return parse_config_file(*opts.config);
}

void apply_sets(ModelParams& params, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Config, fmt::format("--set expects param=value, got '{}'", s));
    const auto p = param_from_string(s.substr(0, eq));
    if (!p) throw Error(ErrorKind::Config, fmt::format("--set: unknown parameter '{}'", s.substr(0, eq)));
    try {
      params.set(*p, std::stod(s.substr(eq + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Config, fmt::format("--set: bad number in '{}'", s));
    }
  }
}

// Explicit schedule or preset; exactly one source.
Schedule resolve_schedule(const CommandOptions& opts, const std::optional<RunConfig>& cfg) {
  if (opts.preset && cfg) throw Error(ErrorKind::Config, "give either --preset or --config, not both");
  if (opts.preset) {
    auto s = find_preset(*opts.preset);
    if (!s) throw Error(ErrorKind::Config, fmt::format("unknown preset '{}'", *opts.preset));
    return *s;
  }
  if (cfg) return schedule_from_config(*cfg);
  throw Error(ErrorKind::Config, "need --preset or --config");
}

RunSettings resolve_run(const CommandOptions& opts, const std::optional<RunConfig>& cfg) {
  RunSettings run = cfg ? cfg->run : RunSettings{};
  if (opts.n_max) run.n_max = *opts.n_max;
  if (opts.rtol) run.rtol = *opts.rtol;
  if (opts.atol) run.atol = *opts.atol;
  if (opts.samples) run.samples = *opts.samples;
  return run;
}

// Links of a config ordered so every source is final before it is read.
std::vector<std::pair<Param, Link>> config_links(const RunConfig& cfg) {
  std::vector<std::pair<Param, Link>> pending;
  for (const auto& [target, tr] : cfg.schedule) {
    if (const auto* link = std::get_if<Link>(&tr)) pending.emplace_back(target, *link);
  }
  std::vector<std::pair<Param, Link>> ordered;
  while (!pending.empty()) {
    const auto ready = std::find_if(pending.begin(), pending.end(), [&](const auto& candidate) {
      return std::none_of(pending.begin(), pending.end(),
                          [&](const auto& other) { return other.first == candidate.second.source; });
    });
    if (ready == pending.end()) throw Error(ErrorKind::Config, "schedule links form a cycle");
    ordered.push_back(*ready);
    pending.erase(ready);
  }
  return ordered;
}

json to_json(const SpectrumResult& r) {
  json j;
  j["axis"] = r.axis;
  std::vector<std::vector<double>> rows;
  for (Eigen::Index i = 0; i < r.eigenvalues.rows(); ++i) {
    rows.emplace_back(r.eigenvalues.row(i).begin(), r.eigenvalues.row(i).end());
  }
  j["eigenvalues"] = rows;
  j["tracked_level"] = r.tracked_level;
  j["tracked_energy"] = r.tracked_energy;
  j["dark_residual"] = r.dark_residual;
  std::vector<int> flags;
  for (std::size_t i = 0; i < r.axis.size(); ++i) flags.push_back(r.truncation_flag(i) ? 1 : 0);
  j["truncation_flag"] = flags;
  return j;
}

json to_json(const EvolutionTrace& t) {
  json j;
  j["t"] = t.times;
  for (std::size_t k = 0; k < t.population_labels.size(); ++k) {
    std::vector<double> col;
    for (const auto& row : t.populations) col.push_back(row[k]);
    j["pop_" + t.population_labels[k]] = col;
  }
  j["fidelity_full"] = t.fidelity_full;
  j["fidelity_qubits"] = t.fidelity_qubits;
  j["norm_err"] = t.norm_error;
  j["energy"] = t.energy;
  return j;
}

std::string num(double v) { return format_number(v); }

int write_spectrum(const CommandOptions& opts, const SweepSpec& spec, int n_max, std::ostream& log) {
  const HilbertSpace space(n_max);
  const SpectrumResult result = sweep(spec, space);
  const std::string out = require_out(opts);
  write_output(out, opts.format == "json" ? to_json(result).dump(2) + "\n" : spectrum_csv(result));
  double worst = 0.0;
  for (double r : result.dark_residual) worst = std::max(worst, r);
  log << fmt::format("spectrum: {} points, {} levels, max dark residual {:.3e}\n",
                     result.axis.size(), spec.n_levels, worst);
  return kExitOk;
}

}  // namespace

double physical_time_ns(double t_omega, double freq_ghz) {
  return t_omega / (2.0 * std::numbers::pi * freq_ghz);
}

std::pair<Param, Link> parse_link(const std::string& text) {
  static const std::regex re(
      R"(^\s*(\w+)\s*=\s*(?:([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?(\w+)\s*(?:([-+])\s*([0-9.]+(?:[eE][-+]?[0-9]+)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) {
    throw Error(ErrorKind::Config, fmt::format("cannot parse link '{}' (expected target=scale*source+offset)", text));
  }
  const auto target = param_from_string(m[1].str());
  const auto source = param_from_string(m[3].str());
  if (!target || !source) throw Error(ErrorKind::Config, fmt::format("unknown parameter in link '{}'", text));
  Link link{*source, m[2].matched ? std::stod(m[2].str()) : 1.0, 0.0};
  if (m[4].matched) link.offset = (m[4].str() == "-" ? -1.0 : 1.0) * std::stod(m[5].str());
  return {*target, link};
}

std::string spectrum_csv(const SpectrumResult& r) {
  std::string out = "axis";
  for (Eigen::Index k = 0; k < r.eigenvalues.cols(); ++k) out += fmt::format(",E_{}", k);
  out += ",dark_residual,truncation_flag\n";
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    out += num(r.axis[i]);
    for (Eigen::Index k = 0; k < r.eigenvalues.cols(); ++k) {
      out += "," + num(r.eigenvalues(static_cast<Eigen::Index>(i), k));
    }
    out += "," + num(r.dark_residual[i]) + "," + (r.truncation_flag(i) ? "1" : "0") + "\n";
  }
  return out;
}

std::string trace_csv(const EvolutionTrace& t) {
  std::string out = "t";
  for (const auto& l : t.population_labels) out += ",pop_" + l;
  out += ",fidelity_full,fidelity_qubits,norm_err,energy\n";
  for (std::size_t i = 0; i < t.times.size(); ++i) {
    out += num(t.times[i]);
    for (double p : t.populations[i]) out += "," + num(p);
    out += "," + num(t.fidelity_full[i]) + "," + num(t.fidelity_qubits[i]) + "," +
           num(t.norm_error[i]) + "," + num(t.energy[i]) + "\n";
  }
  return out;
}

std::optional<SweepSpec> spectrum_preset(const std::string& name) {
  SweepSpec spec;
  spec.n_levels = 8;
  spec.track_energy = 1.0;
  if (name == "fig1a") {
    spec.base.delta1 = 0.7;
    spec.base.delta2 = 0.3;
    spec.axis = ParamAxis{Param::G1c,
                          {{Param::G2c, {Param::G1c, 1.0, 0.0}},
                           {Param::G1r, {Param::G1c, 0.7, 0.0}},
                           {Param::G2r, {Param::G2c, 0.7, 0.0}}}};
    spec.points = linspace(0.0, 1.5, 100);
    spec.sector = Sector::Even;
    return spec;
  }
  if (name == "fig4") {
    spec.base.u1 = 0.5;
    spec.base.u2 = 0.5;
    const double k = 1.0 / (2.0 * std::numbers::sqrt2);
    spec.axis = ParamAxis{Param::G1c,
                          {{Param::G2c, {Param::G1c, 1.0, 0.0}},
                           {Param::G1r, {Param::G1c, 0.98, 0.0}},
                           {Param::G2r, {Param::G1r, 1.0, 0.0}},
                           {Param::Delta2, {Param::G1c, k, 0.0}},
                           {Param::Delta1, {Param::Delta2, -1.0, 1.0}}}};
    spec.points = linspace(0.0, 1.5, 100);
    spec.sector = Sector::Even;
    return spec;
  }
  std::string schedule_name = name;
  if (name == "fig1c") schedule_name = "linear49";
  if (name == "fig3") schedule_name = "nonlinear34";
  auto schedule = find_preset(schedule_name);
  if (!schedule) return std::nullopt;
  spec.base = schedule->params_at(0.0);
  spec.points = linspace(0.0, schedule->duration(), 100);
  spec.sector = schedule->family() ? schedule->family()->sector() : Sector::Full;
  spec.axis = ScheduleAxis{*schedule};
  return spec;
}

int cmd_spectrum(const CommandOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    require_format(opts);
    const auto cfg = load_config(opts);
    if (opts.preset && cfg) throw Error(ErrorKind::Config, "give either --preset or --config, not both");
    SweepSpec spec;
    if (opts.preset) {
      auto s = spectrum_preset(*opts.preset);
      if (!s) throw Error(ErrorKind::Config, fmt::format("unknown spectrum preset '{}'", *opts.preset));
      spec = *s;
    } else if (cfg) {
      const SweepSettings sw = cfg->sweep.value_or(SweepSettings{});
      spec.base = cfg->model;
      spec.sector = sw.sector;
      spec.n_levels = sw.levels;
      if (sw.axis == "time") {
        const Schedule schedule = schedule_from_config(*cfg);
        spec.axis = ScheduleAxis{schedule};
        spec.points = linspace(sw.from.value_or(0.0), sw.to.value_or(schedule.duration()), sw.points);
      } else {
        const auto p = param_from_string(sw.axis);
        if (!p) throw Error(ErrorKind::Config, fmt::format("key 'sweep.axis': unknown axis '{}'", sw.axis));
        if (!sw.from || !sw.to) throw Error(ErrorKind::Config, "missing key 'sweep.from' or 'sweep.to'");
        spec.axis = ParamAxis{*p, config_links(*cfg)};
        spec.points = linspace(*sw.from, *sw.to, sw.points);
      }
    } else {
      throw Error(ErrorKind::Config, "need --preset or --config");
    }
    if (opts.sector) spec.sector = sector_from_string(*opts.sector);
    if (opts.levels) spec.n_levels = *opts.levels;
    if (opts.points && !spec.points.empty()) {
      spec.points = linspace(spec.points.front(), spec.points.back(), *opts.points);
    }
    const int n_max = opts.n_max.value_or(cfg ? cfg->run.n_max : HilbertSpace::kDefaultNMax);
    return write_spectrum(opts, spec, n_max, log);
  });
}

namespace {

int sweep_durations(const CommandOptions& opts, const std::optional<RunConfig>& cfg, std::ostream& log) {
  const Schedule base = resolve_schedule(opts, cfg);
  const RunSettings run = resolve_run(opts, cfg);
  const HilbertSpace space(run.n_max);
  if (!opts.from || !opts.to) throw Error(ErrorKind::Config, "t_final sweep needs --from and --to");
  const auto durations = linspace(*opts.from, *opts.to, opts.points.value_or(11));
  const std::string out = require_out(opts);

  struct Row {
    double fidelity = 0.0, fidelity_qubits = 0.0, norm_err = 0.0;
  };
  std::vector<Row> rows(durations.size());
  std::vector<std::exception_ptr> failures(durations.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, durations.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < durations.size(); i += workers) {
          try {
            Schedule s = base;
            s.set_duration(durations[i]);
            EvolutionSpec es{s, std::nullopt, std::nullopt, {}, 2};
            es.options.rtol = run.rtol;
            es.options.atol = run.atol;
            const auto tr = evolve(es, space);
            rows[i] = {tr.final_fidelity(), tr.fidelity_qubits.back(), tr.max_norm_error()};
          } catch (...) {
            failures[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  std::string text = "t_final,final_fidelity,final_fidelity_qubits,max_norm_err\n";
  for (std::size_t i = 0; i < durations.size(); ++i) {
    text += num(durations[i]) + "," + num(rows[i].fidelity) + "," + num(rows[i].fidelity_qubits) +
            "," + num(rows[i].norm_err) + "\n";
  }
  write_output(out, text);
  log << fmt::format("sweep: {} evolutions of '{}'\n", durations.size(), base.name());
  return kExitOk;
}

}  // namespace

int cmd_sweep(const CommandOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    require_format(opts);
    const auto cfg = load_config(opts);
    const std::string axis = opts.axis.value_or("g1c");
    if (axis == "t_final") return sweep_durations(opts, cfg, log);

    SweepSpec spec;
    spec.base = cfg ? cfg->model : ModelParams{};
    apply_sets(spec.base, opts.sets);
    spec.sector = opts.sector ? sector_from_string(*opts.sector) : Sector::Even;
    spec.n_levels = opts.levels.value_or(8);
    if (!opts.from || !opts.to) throw Error(ErrorKind::Config, "sweep needs --from and --to");
    const int points = opts.points.value_or(100);
    if (axis == "time") {
      const Schedule schedule = resolve_schedule(opts, cfg);
      spec.axis = ScheduleAxis{schedule};
    } else {
      if (opts.preset) throw Error(ErrorKind::Config, "--preset only applies to time or t_final sweeps");
      const auto p = param_from_string(axis);
      if (!p) throw Error(ErrorKind::Config, fmt::format("unknown sweep axis '{}'", axis));
      ParamAxis ax{*p, cfg ? config_links(*cfg) : std::vector<std::pair<Param, Link>>{}};
      for (const auto& l : opts.links) ax.links.push_back(parse_link(l));
      spec.axis = ax;
    }
    spec.points = linspace(*opts.from, *opts.to, points);
    const int n_max = opts.n_max.value_or(cfg ? cfg->run.n_max : HilbertSpace::kDefaultNMax);
    return write_spectrum(opts, spec, n_max, log);
  });
}

int cmd_evolve(const CommandOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    require_format(opts);
    const auto cfg = load_config(opts);
    const Schedule schedule = resolve_schedule(opts, cfg);
    const RunSettings run = resolve_run(opts, cfg);
    if (opts.dump_config) {
      write_output(opts.out.value_or("-"), dump_config(schedule, run));
      return kExitOk;
    }
    schedule.validate();
    const HilbertSpace space(run.n_max);
    EvolutionSpec spec{schedule, std::nullopt, std::nullopt, {}, run.samples};
    spec.options.rtol = run.rtol;
    spec.options.atol = run.atol;

    const auto start = std::chrono::steady_clock::now();
    const EvolutionTrace trace = evolve(spec, space);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (opts.out) {
      write_output(*opts.out, opts.format == "json" ? to_json(trace).dump(2) + "\n" : trace_csv(trace));
    }
    json summary;
    summary["preset"] = schedule.name();
    summary["T"] = schedule.duration();
    summary["final_fidelity"] = trace.final_fidelity();
    summary["final_fidelity_qubits"] = trace.fidelity_qubits.back();
    summary["max_norm_err"] = trace.max_norm_error();
    summary["max_parity_leakage"] = trace.max_parity_leakage();
    summary["n_max"] = run.n_max;
    summary["rtol"] = run.rtol;
    summary["atol"] = run.atol;
    summary["wall_time"] = wall;
    if (schedule.family()) {
      summary["family"] = to_string(*schedule.family());
      summary["target"] = std::string(to_string(*schedule.target()));
    }
    if (opts.freq_ghz) {
      if (!(*opts.freq_ghz > 0.0)) throw Error(ErrorKind::Config, "--freq-ghz must be positive");
      summary["freq_ghz"] = *opts.freq_ghz;
      summary["physical_time_ns"] = physical_time_ns(schedule.duration(), *opts.freq_ghz);
    }
    write_output(opts.summary.value_or("-"), summary.dump(2) + "\n");
    log << fmt::format("evolve: {} T={} final fidelity {:.6f} (qubits {:.6f}), max norm error {:.2e}\n",
                       schedule.name(), schedule.duration(), trace.final_fidelity(),
                       trace.fidelity_qubits.back(), trace.max_norm_error());
    if (opts.min_fidelity && trace.final_fidelity() < *opts.min_fidelity) {
      log << fmt::format("final fidelity below the requested {:.6f}\n", *opts.min_fidelity);
      return kExitCheckFailed;
    }
    return kExitOk;
  });
}

namespace {

struct DarkCheckInput {
  ModelParams params;
  DarkFamily family;
  int n_max = 8;
};

DarkCheckInput resolve_dark_input(const CommandOptions& opts, const std::optional<RunConfig>& cfg) {
  DarkCheckInput in;
  std::optional<DarkFamily> family;
  if (opts.preset && cfg) throw Error(ErrorKind::Config, "give either --preset or --config, not both");
  if (opts.preset) {
    const std::string& name = *opts.preset;
    if (name == "fig1a") {
      in.params.delta1 = 0.7;
      in.params.delta2 = 0.3;
      in.params.g1c = in.params.g2c = 0.5;
      in.params.g1r = in.params.g2r = 0.35;
      family = DarkFamily{FamilyKind::EvenBell, 1, false};
    } else if (name == "fig4") {
      const double g = 0.8;
      in.params.g1c = in.params.g2c = g;
      in.params.g1r = in.params.g2r = 0.98 * g;
      in.params.delta2 = g / (2.0 * std::numbers::sqrt2);
      in.params.delta1 = 1.0 - in.params.delta2;
      in.params.u1 = in.params.u2 = 0.5;
      family = DarkFamily{FamilyKind::EvenBell, 1, true};
    } else if (auto s = find_preset(name)) {
      in.params = s->params_at(opts.time.value_or(0.5 * s->duration()));
      family = s->family();
    } else {
      throw Error(ErrorKind::Config, fmt::format("unknown dark-check preset '{}'", name));
    }
  } else if (cfg) {
    in.params = cfg->model;
    family = cfg->family();
    in.n_max = cfg->run.n_max;
  }
  apply_sets(in.params, opts.sets);
  if (opts.family) {
    const auto kind = family_from_string(*opts.family);
    if (!kind) throw Error(ErrorKind::Config, fmt::format("unknown family '{}'", *opts.family));
    family = DarkFamily{*kind, 1, in.params.u1 != 0.0 || in.params.u2 != 0.0};
  }
  if (!family) throw Error(ErrorKind::Config, "no dark-state family given (--family or run.family)");
  if (opts.sign) family->sign = *opts.sign;
  if (opts.stark) family->stark = *opts.stark;
  if (opts.n_max) in.n_max = *opts.n_max;
  in.family = *family;
  return in;
}

}  // namespace

int cmd_dark_check(const CommandOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    require_format(opts);
    const auto cfg = load_config(opts);
    const DarkCheckInput in = resolve_dark_input(opts, cfg);
    in.params.validate();
    const HilbertSpace space(in.n_max);
    const ConditionReport report = check_conditions(in.params, in.family);
    const bool conditions_ok = report.satisfied(kConditionTolerance);

    json j;
    j["family"] = to_string(in.family);
    j["params"] = {{"omega", in.params.omega}, {"delta1", in.params.delta1}, {"delta2", in.params.delta2},
                   {"g1r", in.params.g1r},     {"g1c", in.params.g1c},       {"g2r", in.params.g2r},
                   {"g2c", in.params.g2c},     {"u1", in.params.u1},         {"u2", in.params.u2}};
    j["n_max"] = in.n_max;
    json conds = json::array();
    for (const auto& c : report.conditions) {
      conds.push_back({{"name", c.name},
                       {"residual", c.residual},
                       {"unit", c.unit == ConditionUnit::Omega ? "omega" : "ratio"},
                       {"ok", c.residual <= kConditionTolerance}});
    }
    j["conditions"] = conds;
    j["conditions_ok"] = conditions_ok;

    bool pass = conditions_ok;
    std::ostringstream text;
    text << "family: " << to_string(in.family) << "\n";
    for (const auto& c : report.conditions) {
      text << fmt::format("condition {:<26} residual {:.3e} {}\n", c.name, c.residual,
                          c.residual <= kConditionTolerance ? "ok" : "VIOLATED");
    }
    if (conditions_ok) {
      const DarkStateResult dark = construct_dark_state(in.params, in.family, space);
      const double residual = verify_dark_eigenstate(dark.state, in.params, space);
      const NullspaceResult null = boundary_nullspace(in.params, in.family.sector(), space);
      double mismatch = std::numeric_limits<double>::infinity();
      if (null.state) mismatch = (null.state->amplitudes() - dark.state.amplitudes()).cwiseAbs().maxCoeff();
      const bool residual_ok = residual < kEigenResidualTolerance;
      const bool null_ok = mismatch <= kNullspaceTolerance;
      pass = residual_ok && null_ok;

      json amps;
      const auto [a, b] = in.family.photon_pair();
      for (const auto& l : {in.family.vacuum_label(), a, b}) {
        amps[l.tag()] = dark.state[l].real();
        text << fmt::format("amplitude |{}> {: .17g}\n", l.tag(), dark.state[l].real());
      }
      text << fmt::format("energy {:.17g}\n", dark.energy);
      text << fmt::format("eigen residual ||(H - omega)psi|| = {:.3e} {}\n", residual, residual_ok ? "ok" : "FAIL");
      text << fmt::format("nullspace rank {} (of 4), max |analytic - numeric| = {:.3e} {}\n", null.rank,
                          mismatch, null_ok ? "ok" : "FAIL");
      j["amplitudes"] = amps;
      j["energy"] = dark.energy;
      j["eigen_residual"] = residual;
      j["nullspace_rank"] = null.rank;
      j["nullspace_mismatch"] = std::isfinite(mismatch) ? json(mismatch) : json(nullptr);
    } else {
      for (const auto& name : report.violated(kConditionTolerance)) text << "violated: " << name << "\n";
    }
    text << "RESULT: " << (pass ? "PASS" : "FAIL") << "\n";
    j["pass"] = pass;

    const std::string body = opts.format == "json" ? j.dump(2) + "\n" : text.str();
    write_output(opts.out.value_or("-"), body);
    return pass ? kExitOk : kExitCheckFailed;
  });
}

int cmd_adiabaticity(const CommandOptions& opts, std::ostream& log) {
  return guarded(log, [&] {
    require_format(opts);
    const auto cfg = load_config(opts);
    const Schedule schedule = resolve_schedule(opts, cfg);
    const RunSettings run = resolve_run(opts, cfg);
    if (opts.dump_config) {
      write_output(opts.out.value_or("-"), dump_config(schedule, run));
      return kExitOk;
    }
    const std::string out = require_out(opts);
    const HilbertSpace space(run.n_max);
    const int points = opts.points.value_or(100);
    if (points < 1) throw Error(ErrorKind::Config, "--points must be positive");

    std::string csv = "t,gap_nearest,metric_eq8_nearest,matel_Hdot,delta,eq11_residual_max\n";
    json j = {{"t", json::array()}, {"gap_nearest", json::array()}, {"metric_eq8_nearest", json::array()},
              {"matel_Hdot", json::array()}, {"delta", json::array()}, {"eq11_residual_max", json::array()}};
    double worst = 0.0;
    // t = 0 is skipped: sub-linear ramps have unbounded rates there.
    for (int k = 1; k <= points; ++k) {
      const double t = schedule.duration() * k / points;
      const ScalingReport r = verify_matrix_element_scaling(schedule, t, space);
      const LevelCoupling& near = r.nearest();
      worst = std::max(worst, r.relation_residual_max);
      csv += num(t) + "," + num(r.gap) + "," + num(r.metric_nearest) + "," + num(near.matel) + "," +
             num(near.delta) + "," + num(r.relation_residual_max) + "\n";
      j["t"].push_back(t);
      j["gap_nearest"].push_back(r.gap);
      j["metric_eq8_nearest"].push_back(r.metric_nearest);
      j["matel_Hdot"].push_back(near.matel);
      j["delta"].push_back(near.delta);
      j["eq11_residual_max"].push_back(r.relation_residual_max);
    }
    write_output(out, opts.format == "json" ? j.dump(2) + "\n" : csv);
    const bool ok = worst <= kRelationTolerance;
    log << fmt::format("adiabaticity: {} points of '{}', max component-relation residual {:.3e} {}\n",
                       points, schedule.name(), worst, ok ? "ok" : "FAIL");
    return ok ? kExitOk : kExitCheckFailed;
  });
}

}  // namespace darkbell
