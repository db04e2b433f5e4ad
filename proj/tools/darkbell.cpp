#include <iostream>

#include "CLI11.hpp"
#include "darkbell/commands.hpp"

namespace {

using darkbell::CommandOptions;

void add_common(CLI::App* cmd, CommandOptions& o) {
  cmd->add_option("--preset", o.preset, "Named preset");
  cmd->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--nmax", o.n_max, "Photon cutoff")->check(CLI::Range(2, 100000));
  cmd->add_option("--sector", o.sector, "Parity sector")->check(CLI::IsMember({"even", "odd", "full"}));
}

void add_integrator(CLI::App* cmd, CommandOptions& o) {
  cmd->add_option("--rtol", o.rtol, "Relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--atol", o.atol, "Absolute tolerance")->check(CLI::PositiveNumber);
  cmd->add_flag("--dump-config", o.dump_config, "Print the resolved configuration and exit");
}

void add_axis(CLI::App* cmd, CommandOptions& o) {
  cmd->add_option("--from", o.from, "Axis start");
  cmd->add_option("--to", o.to, "Axis end");
  cmd->add_option("--points", o.points, "Number of axis points")->check(CLI::Range(1, 10000000));
  cmd->add_option("--levels", o.levels, "Levels per point")->check(CLI::Range(1, 100000));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark-state Bell-state preparation in the two-qubit Rabi(-Stark) model"};
  app.require_subcommand(1);
  CommandOptions o;

  auto* spectrum = app.add_subcommand("spectrum", "Sector spectrum along a preset or configured axis");
  add_common(spectrum, o);

  auto* sweep = app.add_subcommand("sweep", "Spectrum along a parameter, schedule time, or durations");
  add_common(sweep, o);
  add_integrator(sweep, o);
  add_axis(sweep, o);
  sweep->add_option("--axis", o.axis, "Parameter name, 'time', or 't_final'");
  sweep->add_option("--set", o.sets, "Base parameter, param=value")->allow_extra_args(false);
  sweep->add_option("--link", o.links, "Linked parameter, target=scale*source+offset")->allow_extra_args(false);

  auto* evolve = app.add_subcommand("evolve", "Integrate a protocol and report fidelities");
  add_common(evolve, o);
  add_integrator(evolve, o);
  evolve->add_option("--summary", o.summary, "Summary JSON path (stdout by default)");
  evolve->add_option("--freq-ghz", o.freq_ghz, "Resonator frequency in GHz");
  evolve->add_option("--samples", o.samples, "Output samples")->check(CLI::Range(2, 10000000));
  evolve->add_option("--min-fidelity", o.min_fidelity, "Exit 1 below this final fidelity");

  auto* dark = app.add_subcommand("dark-check", "Check dark-state conditions and exactness");
  add_common(dark, o);
  dark->add_option("--family", o.family, "even | odd-updown | odd-downup");
  dark->add_option("--sign", o.sign, "Coupling-ratio sign")->check(CLI::IsMember({-1, 1}));
  dark->add_option("--stark", o.stark, "Allow Stark terms (true|false)");
  dark->add_option("--time", o.time, "Schedule time for schedule presets");
  dark->add_option("--set", o.sets, "Parameter override, param=value")->allow_extra_args(false);

  auto* adiab = app.add_subcommand("adiabaticity", "Gap, coupling and component-relation diagnostics");
  add_common(adiab, o);
  add_integrator(adiab, o);
  adiab->add_option("--points", o.points, "Number of times")->check(CLI::Range(1, 10000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? darkbell::kExitOk : darkbell::kExitUsage;
  }

  if (*spectrum) return darkbell::cmd_spectrum(o, std::cerr);
  if (*sweep) return darkbell::cmd_sweep(o, std::cerr);
  if (*evolve) return darkbell::cmd_evolve(o, std::cerr);
  if (*dark) return darkbell::cmd_dark_check(o, std::cerr);
  return darkbell::cmd_adiabaticity(o, std::cerr);
}
