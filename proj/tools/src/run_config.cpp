#include "run_config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>

#include "hartman/errors.hpp"

namespace hartman::cli {

namespace {

void require(bool ok, const char* what) {
  if (!ok) {
    throw DomainError(what);
  }
}

}  // namespace

void RunConfig::validate() const {
  constants().validate();
  potential().validate();
  packet().validate();
  require(std::isfinite(k_min) && k_min > 0.0, "k-min must be positive");
  require(std::isfinite(k_max) && k_max > k_min, "k-max must exceed k-min");
  require(samples >= 2, "samples must be at least 2");
  require(std::isfinite(k) && k > 0.0, "k must be positive");
  require(std::isfinite(v0_min) && std::isfinite(v0_max) && v0_max >= v0_min,
          "v0 range must satisfy v0-min <= v0-max");
  require(v0_steps >= 1, "v0-steps must be at least 1");
  require(precision >= 1 && precision <= 17, "precision must be in [1, 17]");
  require(jobs >= 1, "jobs must be at least 1");
  require(std::isfinite(tol_scale) && tol_scale > 0.0,
          "tol-scale must be positive");
}

std::vector<double> RunConfig::k_values() const {
  std::vector<double> ks(samples);
  const bool log_grid = adaptive && k_max / k_min > 50.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(samples - 1);
    ks[i] = log_grid ? k_min * std::pow(k_max / k_min, f)
                     : k_min + f * (k_max - k_min);
  }
  ks.back() = k_max;
  return ks;
}

std::vector<double> RunConfig::v0_values() const {
  if (v0_steps == 1) {
    return {v0_min};
  }
  std::vector<double> vs(v0_steps);
  for (std::size_t i = 0; i < v0_steps; ++i) {
    vs[i] = v0_min + (v0_max - v0_min) * static_cast<double>(i) /
                         static_cast<double>(v0_steps - 1);
  }
  return vs;
}

void apply_preset(RunConfig& cfg, const std::string& name) {
  if (name == "fig1") {
    cfg.v0 = 5.0;
    cfg.mass = 1.0;
    cfg.hbar = 1.0;
    cfg.k_min = 0.01;
    cfg.k_max = 6.0;
    cfg.samples = 600;
    cfg.adaptive = false;
  } else if (name == "fig2") {
    cfg.k = 0.1;
    cfg.width = 2.0;
    cfg.mass = 1.0;
    cfg.hbar = 1.0;
    cfg.v0_min = -1.6;
    cfg.v0_max = 0.4;
    cfg.v0_steps = 1001;
  } else if (name == "fig3") {
    cfg.k0 = std::numbers::pi / 8.0;
    cfg.delta_p = 1.0;
    cfg.x0 = -41.0;
    cfg.width = 2.0;
    cfg.mass = 1.0;
    cfg.hbar = 1.0;
    cfg.v0_min = -1.6;
    cfg.v0_max = 0.4;
    cfg.v0_steps = 201;
  } else {
    throw DomainError("unknown preset '" + name + "' (fig1, fig2 or fig3)");
  }
  cfg.preset = name;
}

std::vector<double> fig1_widths() { return {1.0, 3.0}; }

std::string to_string(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

std::string resolve_output_path(const RunConfig& cfg,
                                const std::string& default_stem) {
  std::filesystem::path p;
  if (cfg.out == "-") {
    return {};
  }
  if (!cfg.out.empty()) {
    p = cfg.out;
  } else if (!default_stem.empty()) {
    p = default_stem + "." + to_string(cfg.format);
  } else {
    return {};
  }
  const char* dir = std::getenv("HARTMAN_OUTPUT_DIR");
  if (p.is_relative() && dir != nullptr && *dir != '\0') {
    p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

}  // namespace hartman::cli
