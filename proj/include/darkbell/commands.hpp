#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "darkbell/config.hpp"
#include "darkbell/dynamics.hpp"

namespace darkbell {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

/// Flag values shared by all subcommands; unset optionals fall back to the
/// config file, then to built-in defaults.
struct CommandOptions {
  std::optional<std::string> preset;
  std::optional<std::string> config;
  std::optional<std::string> out;  // "-" writes to stdout
  std::optional<std::string> summary;
  std::string format = "csv";
  std::optional<int> n_max;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<double> freq_ghz;
  std::optional<std::string> sector;
  bool dump_config = false;

  // spectrum / sweep
  std::optional<std::string> axis;
  std::optional<double> from;
  std::optional<double> to;
  std::optional<int> points;
  std::optional<int> levels;
  std::vector<std::string> sets;   // "param=value"
  std::vector<std::string> links;  // "target=[scale*]source[+offset]"

  // dark-check
  std::optional<std::string> family;
  std::optional<int> sign;
  std::optional<bool> stark;
  std::optional<double> time;

  // evolve
  std::optional<int> samples;
  std::optional<double> min_fidelity;
};

/// Each command writes its artifacts and a short log, maps failures onto
/// ExitCode and never throws darkbell::Error.
int cmd_spectrum(const CommandOptions& opts, std::ostream& log);
int cmd_sweep(const CommandOptions& opts, std::ostream& log);
int cmd_evolve(const CommandOptions& opts, std::ostream& log);
int cmd_dark_check(const CommandOptions& opts, std::ostream& log);
int cmd_adiabaticity(const CommandOptions& opts, std::ostream& log);

/// Named spectrum presets: fig1a, fig4 (parameter axes), fig1c, fig3 (time
/// axes of linear49 / nonlinear34), or any schedule preset name.
std::optional<SweepSpec> spectrum_preset(const std::string& name);

/// ns for a duration in units of 1/omega when omega = 2 pi * freq_ghz GHz.
double physical_time_ns(double t_omega, double freq_ghz);

/// CSV text of a spectrum: axis,E_0,...,E_{k-1},dark_residual,truncation_flag
std::string spectrum_csv(const SpectrumResult& result);

/// CSV text of an evolution trace with population columns named pop_<tag>.
std::string trace_csv(const EvolutionTrace& trace);

/// Parses "g1r=0.7*g1c", "delta1=-1*delta2+1", "g2c=g1c".
std::pair<Param, Link> parse_link(const std::string& text);

}  // namespace darkbell
