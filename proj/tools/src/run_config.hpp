#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hartman/types.hpp"
#include "hartman/wavepacket.hpp"

namespace hartman::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  // potential
  double v0 = 5.0;
  double width = 2.0;
  // constants
  double hbar = 1.0;
  double mass = 1.0;
  // wavenumber grid
  double k_min = 0.01;
  double k_max = 6.0;
  std::size_t samples = 200;
  bool adaptive = false;
  // fixed wavenumber of the delay sweep
  double k = 0.1;
  // packet
  double k0 = 1.0;
  double delta_p = 0.1;
  double x0 = -10.0;
  // v0 sweep
  double v0_min = -1.6;
  double v0_max = 0.4;
  std::size_t v0_steps = 201;
  // output
  std::string out;
  OutputFormat format = OutputFormat::csv;
  int precision = 17;
  unsigned jobs = 1;
  std::string preset;
  /// Multiplies every tolerance of `verify`.
  double tol_scale = 1.0;

  void validate() const;

  PhysicalConstants constants() const { return {hbar, mass}; }
  SquarePotential potential() const {
    return SquarePotential::from_width(v0, width);
  }
  GaussianPacketSpec packet() const { return {k0, delta_p, x0}; }

  std::vector<double> k_values() const;
  std::vector<double> v0_values() const;
};

/// Overwrites the fields fixed by a named preset; unknown names throw
/// DomainError.
void apply_preset(RunConfig& cfg, const std::string& name);

/// Widths of the fig1 series.
std::vector<double> fig1_widths();

std::string to_string(OutputFormat f);

/// Resolves the output path: relative paths (and the preset default name
/// when `out` is empty) go under $HARTMAN_OUTPUT_DIR when it is set. An
/// empty result means standard output: `out` is "-", or empty with no
/// default stem.
std::string resolve_output_path(const RunConfig& cfg,
                                const std::string& default_stem);

}  // namespace hartman::cli
