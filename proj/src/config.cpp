#include "darkbell/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "darkbell/error.hpp"

namespace darkbell {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void config_error(const std::string& source, const std::string& what) {
  throw Error(ErrorKind::Config, fmt::format("{}: {}", source, what));
}

double to_double(const std::string& source, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    config_error(source, fmt::format("key '{}': expected a number, got '{}'", key, text));
  }
}

int to_int(const std::string& source, const std::string& key, const std::string& text) {
  const double v = to_double(source, key, text);
  if (v != static_cast<double>(static_cast<int>(v))) {
    config_error(source, fmt::format("key '{}': expected an integer, got '{}'", key, text));
  }
  return static_cast<int>(v);
}

bool to_bool(const std::string& source, const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  config_error(source, fmt::format("key '{}': expected true/false, got '{}'", key, text));
}

Param to_param(const std::string& source, const std::string& key, const std::string& text) {
  const auto p = param_from_string(text);
  if (!p) config_error(source, fmt::format("key '{}': unknown parameter '{}'", key, text));
  return *p;
}

Trajectory parse_trajectory(const std::string& source, const std::string& section,
                            const pt::ptree& tree) {
  std::optional<double> start, end, value, scale, offset;
  double exponent = 1.0;
  std::optional<Param> link;
  for (const auto& [key, child] : tree) {
    const std::string full = section + "." + key;
    const std::string text = child.get_value<std::string>();
    if (key == "start") start = to_double(source, full, text);
    else if (key == "end") end = to_double(source, full, text);
    else if (key == "exponent") exponent = to_double(source, full, text);
    else if (key == "value") value = to_double(source, full, text);
    else if (key == "link") link = to_param(source, full, text);
    else if (key == "scale") scale = to_double(source, full, text);
    else if (key == "offset") offset = to_double(source, full, text);
    else config_error(source, fmt::format("unknown key '{}'", full));
  }
  const int kinds = (start || end ? 1 : 0) + (value ? 1 : 0) + (link ? 1 : 0);
  if (kinds != 1) {
    config_error(source, fmt::format("section [{}] needs exactly one of start/end, value, or link", section));
  }
  if (link) return Link{*link, scale.value_or(1.0), offset.value_or(0.0)};
  if (scale || offset) config_error(source, fmt::format("[{}]: scale/offset only apply to link", section));
  if (value) return Ramp::constant(*value);
  if (!start || !end) config_error(source, fmt::format("[{}]: ramp needs both start and end", section));
  if (!(exponent > 0.0)) config_error(source, fmt::format("key '{}.exponent' must be positive", section));
  return Ramp{*start, *end, exponent};
}

}  // namespace

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::optional<DarkFamily> RunConfig::family() const {
  if (!run.family) return std::nullopt;
  const bool uses_stark = model.u1 != 0.0 || model.u2 != 0.0 || schedule.contains(Param::U1) ||
                          schedule.contains(Param::U2);
  return DarkFamily{*run.family, run.sign, run.stark.value_or(uses_stark)};
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::Config, fmt::format("{}:{}: {}", source, e.line(), e.message()));
  }

  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (!body.data().empty() && body.empty()) {
      config_error(source, fmt::format("key '{}' appears outside any section", section));
    }
    if (section == "model") {
      for (const auto& [key, child] : body) {
        const Param p = to_param(source, "model." + key, key);
        cfg.model.set(p, to_double(source, "model." + key, child.get_value<std::string>()));
      }
    } else if (section.rfind("schedule.", 0) == 0) {
      const std::string name = section.substr(std::string("schedule.").size());
      const Param p = to_param(source, section, name);
      cfg.schedule[p] = parse_trajectory(source, section, body);
    } else if (section == "run") {
      auto& r = cfg.run;
      for (const auto& [key, child] : body) {
        const std::string full = "run." + key;
        const std::string text = child.get_value<std::string>();
        if (key == "preset") r.preset = text;
        else if (key == "name") r.name = text;
        else if (key == "t_final") r.t_final = to_double(source, full, text);
        else if (key == "n_max") r.n_max = to_int(source, full, text);
        else if (key == "rtol") r.rtol = to_double(source, full, text);
        else if (key == "atol") r.atol = to_double(source, full, text);
        else if (key == "samples") r.samples = to_int(source, full, text);
        else if (key == "family") {
          r.family = family_from_string(text);
          if (!r.family) config_error(source, fmt::format("key '{}': unknown family '{}'", full, text));
        } else if (key == "sign") {
          r.sign = to_int(source, full, text);
          if (r.sign != 1 && r.sign != -1) config_error(source, fmt::format("key '{}' must be 1 or -1", full));
        } else if (key == "stark") r.stark = to_bool(source, full, text);
        else config_error(source, fmt::format("unknown key '{}'", full));
      }
    } else if (section == "sweep") {
      SweepSettings s;
      for (const auto& [key, child] : body) {
        const std::string full = "sweep." + key;
        const std::string text = child.get_value<std::string>();
        if (key == "axis") s.axis = text;
        else if (key == "from") s.from = to_double(source, full, text);
        else if (key == "to") s.to = to_double(source, full, text);
        else if (key == "points") s.points = to_int(source, full, text);
        else if (key == "levels") s.levels = to_int(source, full, text);
        else if (key == "sector") {
          try {
            s.sector = sector_from_string(text);
          } catch (const Error&) {
            config_error(source, fmt::format("key '{}': unknown sector '{}'", full, text));
          }
        } else config_error(source, fmt::format("unknown key '{}'", full));
      }
      cfg.sweep = s;
    } else {
      config_error(source, fmt::format("unknown section [{}]", section));
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Config, fmt::format("cannot open config file '{}'", path));
  return parse_config(in, path);
}

Schedule schedule_from_config(const RunConfig& config) {
  const bool explicit_schedule = !config.schedule.empty() || config.run.t_final.has_value();
  if (config.run.preset && explicit_schedule) {
    throw Error(ErrorKind::Config, "config gives both run.preset and an explicit schedule");
  }
  if (config.run.preset) {
    auto s = find_preset(*config.run.preset);
    if (!s) throw Error(ErrorKind::Config, fmt::format("unknown preset '{}'", *config.run.preset));
    return *s;
  }
  if (!config.run.t_final) throw Error(ErrorKind::Config, "missing key 'run.t_final'");
  Schedule s(config.run.name.value_or("custom"), *config.run.t_final, config.model);
  // Ramps first so links can be validated against the final layout.
  for (const auto& [p, tr] : config.schedule) {
    if (const auto* ramp = std::get_if<Ramp>(&tr)) s.set_ramp(p, *ramp);
  }
  for (const auto& [p, tr] : config.schedule) {
    if (const auto* link = std::get_if<Link>(&tr)) {
      try {
        s.set_link(p, *link);
      } catch (const Error& e) {
        throw Error(ErrorKind::Config, fmt::format("[schedule.{}]: {}", to_string(p), e.what()));
      }
    }
  }
  s.set_family(config.family());
  return s;
}

std::string dump_config(const Schedule& schedule, const RunSettings& run) {
  std::ostringstream out;
  out << "# darkbell schedule: " << schedule.name() << "\n";
  const ModelParams p0 = schedule.params_at(0.0);
  out << "[model]\n";
  for (Param p : kAllParams) {
    const Trajectory& tr = schedule.trajectory(p);
    if (const auto* ramp = std::get_if<Ramp>(&tr); ramp && ramp->is_constant()) {
      out << to_string(p) << " = " << format_number(p0.get(p)) << "\n";
    }
  }
  for (Param p : kAllParams) {
    const Trajectory& tr = schedule.trajectory(p);
    if (const auto* ramp = std::get_if<Ramp>(&tr)) {
      if (ramp->is_constant()) continue;
      out << "\n[schedule." << to_string(p) << "]\n"
          << "start = " << format_number(ramp->start) << "\n"
          << "end = " << format_number(ramp->end) << "\n"
          << "exponent = " << format_number(ramp->exponent) << "\n";
    } else {
      const auto& link = std::get<Link>(tr);
      out << "\n[schedule." << to_string(p) << "]\n"
          << "link = " << to_string(link.source) << "\n"
          << "scale = " << format_number(link.scale) << "\n"
          << "offset = " << format_number(link.offset) << "\n";
    }
  }
  out << "\n[run]\n"
      << "name = " << schedule.name() << "\n"
      << "t_final = " << format_number(schedule.duration()) << "\n"
      << "n_max = " << run.n_max << "\n"
      << "rtol = " << format_number(run.rtol) << "\n"
      << "atol = " << format_number(run.atol) << "\n"
      << "samples = " << run.samples << "\n";
  if (const auto& fam = schedule.family()) {
    out << "family = " << to_string(fam->kind) << "\n"
        << "sign = " << fam->sign << "\n"
        << "stark = " << (fam->stark ? "true" : "false") << "\n";
  }
  return out.str();
}

}  // namespace darkbell
