#pragma once

// Experiment description files.
//
// A TOML document with one level of sections:
//
//   [experiment]          id, omega_ev | wavelength_m, confidence_level
//   [generation_magnet]   b0_tesla, length_m
//   [regeneration_magnet] b0_tesla, length_m       (defaults to generation)
//   [path]                l1_m, l2_m
//   [detector]            eta_det, dark_per_gate, gate_ns
//   [tally]               pulses_total, pulses_with_field, photons_per_pulse,
//                         eta_coupling, extra_loss
//   [cavity]              length_m, finesse
//   [ellipticity]         psi_limit
//   [grid]                min_mass_ev, max_mass_ev, points, spacing
//
// Unknown sections and keys are rejected. Lab units are converted to
// natural units here and nowhere else.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "lsw/kernels.hpp"
#include "lsw/limits.hpp"
#include "lsw/statistics.hpp"

namespace lsw {

struct ExperimentConfig {
  std::string id;
  double omega = 0.0;                   ///< photon energy, eV
  std::optional<double> wavelength_m;   ///< set when omega was derived from it
  std::optional<double> confidence_level;
  MagnetSpec generation_magnet;
  MagnetSpec regeneration_magnet;
  std::optional<OpticalPath> path;
  std::optional<DetectorSpec> detector;
  std::optional<CampaignTally> tally;
  std::optional<CavitySpec> cavity;
  std::optional<double> psi_limit;
  MassGrid grid{1e-5, 1e-1, 2000, MassGrid::Spacing::Logarithmic};

  // Accessors for optional sections; throw ConfigError naming the missing key.
  double require_confidence_level() const;
  const OpticalPath& require_path() const;
  const DetectorSpec& require_detector() const;
  const CampaignTally& require_tally() const;
  const CavitySpec& require_cavity() const;
  double require_psi_limit() const;
};

/// Parses and validates a config document. `source` names it in diagnostics.
ExperimentConfig parse_config(std::string_view text, const std::string& source = "<string>");

/// Reads and parses `path`. Throws ConfigError on I/O, parse or validation failure.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace lsw
