#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hartman/errors.hpp"

namespace {

using hartman::cli::Dataset;
using hartman::cli::OutputFormat;
using hartman::cli::RunConfig;

enum ExitCode { kOk = 0, kInvariant = 1, kInvalidInput = 2, kNoConvergence = 3 };

// Options registered here override preset values when given on the command
// line or in the config file.
struct Overrides {
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> items;

  template <class T>
  void add(CLI::App& app, const std::string& flag, T RunConfig::*field,
           RunConfig& parsed, const std::string& help) {
    auto* opt = app.add_option(flag, parsed.*field, help);
    items.emplace_back(opt, [field, &parsed](RunConfig& out) {
      out.*field = parsed.*field;
    });
  }

  RunConfig resolve(const RunConfig& parsed) const {
    RunConfig out = parsed;
    if (!parsed.preset.empty()) {
      out = RunConfig{};
      hartman::cli::apply_preset(out, parsed.preset);
      for (const auto& [opt, copy] : items) {
        if (opt->count() > 0) {
          copy(out);
        }
      }
      out.format = parsed.format;
      out.out = parsed.out;
      out.jobs = parsed.jobs;
      out.precision = parsed.precision;
      out.tol_scale = parsed.tol_scale;
    }
    return out;
  }
};

std::string with_suffix(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const auto ext = p.extension().string();
  p.replace_extension();
  return p.string() + suffix + ext;
}

void emit(const Dataset& ds, const RunConfig& cfg, const std::string& path) {
  const auto write = [&](std::ostream& os) {
    if (cfg.format == OutputFormat::csv) {
      hartman::cli::write_csv(os, ds, cfg.precision);
    } else {
      hartman::cli::write_json(os, ds, cfg.precision);
    }
  };
  if (path.empty()) {
    write(std::cout);
    return;
  }
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::filesystem::create_directories(parent);
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw hartman::DomainError("cannot open output file " + path);
  }
  write(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Square-barrier and square-well scattering: delays, bounds "
               "and wave-packet passage times"};
  app.name("hartman");
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");

  RunConfig parsed;
  Overrides ov;
  ov.add(app, "--v0", &RunConfig::v0, parsed, "potential strength V0");
  ov.add(app, "--width", &RunConfig::width, parsed, "potential width d");
  ov.add(app, "--hbar", &RunConfig::hbar, parsed, "reduced Planck constant");
  ov.add(app, "--mass", &RunConfig::mass, parsed, "particle mass");
  ov.add(app, "--k-min", &RunConfig::k_min, parsed, "lowest wavenumber");
  ov.add(app, "--k-max", &RunConfig::k_max, parsed, "highest wavenumber");
  ov.add(app, "--samples", &RunConfig::samples, parsed, "k grid points");
  ov.add(app, "--adaptive", &RunConfig::adaptive, parsed,
         "logarithmic k grid when the range spans decades");
  ov.add(app, "--k", &RunConfig::k, parsed, "wavenumber of delay-sweep");
  ov.add(app, "--k0", &RunConfig::k0, parsed, "packet central wavenumber");
  ov.add(app, "--delta-p", &RunConfig::delta_p, parsed,
         "packet momentum spread");
  ov.add(app, "--x0", &RunConfig::x0, parsed, "packet initial centre");
  ov.add(app, "--v0-min", &RunConfig::v0_min, parsed, "sweep start");
  ov.add(app, "--v0-max", &RunConfig::v0_max, parsed, "sweep end");
  ov.add(app, "--v0-steps", &RunConfig::v0_steps, parsed, "sweep points");

  std::string format = "csv";
  app.add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", parsed.out,
                 "output file (relative paths honour HARTMAN_OUTPUT_DIR)");
  app.add_option("--precision", parsed.precision, "significant digits");
  app.add_option("--jobs", parsed.jobs, "worker threads for sweeps");
  app.add_option("--preset", parsed.preset, "fig1, fig2 or fig3")
      ->check(CLI::IsMember({"fig1", "fig2", "fig3"}));

  auto* amps = app.add_subcommand("amplitudes", "T, phi_T and eigenphases on a k grid");
  auto* delay = app.add_subcommand("delay-sweep", "time delay and bounds versus V0");
  auto* packet = app.add_subcommand("packet-sweep", "passage times versus V0");
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--tol-scale", parsed.tol_scale,
                     "multiply every tolerance");
  for (auto* sub : {amps, delay, packet, verify}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  try {
    parsed.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    RunConfig cfg = ov.resolve(parsed);
    cfg.validate();

    if (*amps) {
      if (cfg.preset == "fig1") {
        for (double w : hartman::cli::fig1_widths()) {
          RunConfig one = cfg;
          one.width = w;
          const std::string suffix = "-d" + std::to_string(static_cast<int>(w));
          const std::string path =
              cfg.out.empty()
                  ? hartman::cli::resolve_output_path(one, "fig1" + suffix)
                  : with_suffix(hartman::cli::resolve_output_path(one, ""),
                                suffix);
          emit(hartman::cli::cmd_amplitudes(one), one, path);
        }
      } else {
        emit(hartman::cli::cmd_amplitudes(cfg), cfg,
             hartman::cli::resolve_output_path(cfg, cfg.preset));
      }
    } else if (*delay) {
      emit(hartman::cli::cmd_delay_sweep(cfg), cfg,
           hartman::cli::resolve_output_path(cfg, cfg.preset));
    } else if (*packet) {
      emit(hartman::cli::cmd_packet_sweep(cfg), cfg,
           hartman::cli::resolve_output_path(cfg, cfg.preset));
    } else if (*verify) {
      const auto summary = hartman::cli::cmd_verify(cfg);
      const std::string text = summary.to_json().dump(2) + "\n";
      const std::string path = hartman::cli::resolve_output_path(cfg, "");
      if (path.empty()) {
        std::cout << text;
      } else {
        std::ofstream(path, std::ios::binary) << text;
      }
      return summary.passed() ? kOk : kInvariant;
    }
  } catch (const hartman::DomainError& e) {
    std::cerr << "hartman: invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const hartman::ConvergenceError& e) {
    std::cerr << "hartman: no convergence: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const hartman::DivergenceError& e) {
    std::cerr << "hartman: divergent: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "hartman: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
