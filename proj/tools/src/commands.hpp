#pragma once

#include <string>
#include <vector>

#include "dataset.hpp"
#include "run_config.hpp"

namespace hartman::cli {

/// k, re_T, im_T, abs_T2, phi_T, delta0, delta1 on the configured k grid.
Dataset cmd_amplitudes(const RunConfig& cfg);

/// v0, delta_t, bound_osc, bound_simple, n_b at fixed k over the v0 range.
Dataset cmd_delay_sweep(const RunConfig& cfg);

/// v0, p_t, t_out, t_classical, t_subtracted, classical_defined over the
/// v0 range. Points where the exit time diverges keep p_t and t_classical,
/// leave the times empty and are listed in metadata.divergent_v0.
Dataset cmd_packet_sweep(const RunConfig& cfg);

struct CheckResult {
  std::string name;
  bool passed = true;
  /// Largest violation measure found (check-specific).
  double worst = 0.0;
  double tolerance = 0.0;
  std::string location;
  std::size_t cases = 0;
};

struct VerifySummary {
  std::vector<CheckResult> checks;
  bool passed() const;
  nlohmann::ordered_json to_json() const;
};

/// Runs the invariant suites of every module with tolerances multiplied by
/// cfg.tol_scale.
VerifySummary cmd_verify(const RunConfig& cfg);

nlohmann::ordered_json config_metadata(const RunConfig& cfg,
                                       const std::string& command);

}  // namespace hartman::cli
