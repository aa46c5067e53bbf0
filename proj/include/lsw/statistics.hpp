#pragma once

#include <cstdint>

namespace lsw {

/// Single-photon detector operated in gated mode.
struct DetectorSpec {
  double eta_det = 0.0;        ///< quantum detection efficiency
  double dark_per_gate = 0.0;  ///< dark-count probability per gate
  double gate_ns = 0.0;        ///< gate duration

  void validate() const;
};

/// Counting tallies for a pulsed campaign.
struct CampaignTally {
  std::int64_t pulses_total = 0;
  std::int64_t pulses_with_field = 0;
  double photons_per_pulse = 0.0;  ///< N_i incident on the wall
  double eta_coupling = 1.0;       ///< fibre coupling efficiency
  double extra_loss = 1.0;         ///< residual transmission not covered above

  void validate() const;
  /// Photons per pulse that would reach the detector, N_i * eta_c * extra_loss.
  double effective_photons_per_pulse() const;
};

/// Which pulses count towards N_eff.
enum class PulseSelection { WithField, All };

/// Upper number of signal photons that could have gone undetected at
/// confidence `confidence` given zero observed counts:
///
///   n = log(1 - CL) / log(1 - eta) - 1,  clamped below at 0.
double n_missed(double confidence, double eta_det);

/// ceil(n_missed), the integer bound quoted for display.
std::int64_t n_missed_bound(double confidence, double eta_det);

/// N_eff = pulses * N_i * eta_c * extra_loss.
double effective_photons(const CampaignTally& tally, PulseSelection selection = PulseSelection::WithField);

/// n_missed / N_eff.
double upper_probability(double n_missed, double n_eff);

}  // namespace lsw
