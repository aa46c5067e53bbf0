#include "lsw/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "lsw/errors.hpp"

namespace lsw {

void DetectorSpec::validate() const {
  if (!(eta_det > 0.0 && eta_det < 1.0)) detail::domain_fail("detection efficiency must lie in (0, 1)");
  if (!(dark_per_gate >= 0.0 && dark_per_gate < 1.0)) detail::domain_fail("dark count per gate must lie in [0, 1)");
  if (!(gate_ns > 0.0) || !std::isfinite(gate_ns)) detail::domain_fail("gate duration must be positive");
}

void CampaignTally::validate() const {
  if (pulses_total < 0 || pulses_with_field < 0 || pulses_with_field > pulses_total) {
    detail::domain_fail("pulse counts must satisfy 0 <= pulses_with_field <= pulses_total");
  }
  if (!(photons_per_pulse > 0.0) || !std::isfinite(photons_per_pulse)) {
    detail::domain_fail("photons per pulse must be positive");
  }
  if (!(eta_coupling > 0.0 && eta_coupling <= 1.0)) detail::domain_fail("coupling efficiency must lie in (0, 1]");
  if (!(extra_loss > 0.0 && extra_loss <= 1.0)) detail::domain_fail("extra loss factor must lie in (0, 1]");
}

double CampaignTally::effective_photons_per_pulse() const {
  validate();
  return photons_per_pulse * eta_coupling * extra_loss;
}

double n_missed(double confidence, double eta_det) {
  if (!(confidence > 0.0 && confidence < 1.0)) detail::domain_fail("confidence level must lie in (0, 1)");
  if (!(eta_det > 0.0 && eta_det < 1.0)) detail::domain_fail("detection efficiency must lie in (0, 1)");
  const double n = std::log1p(-confidence) / std::log1p(-eta_det) - 1.0;
  return std::max(0.0, n);
}

std::int64_t n_missed_bound(double confidence, double eta_det) {
  return static_cast<std::int64_t>(std::ceil(n_missed(confidence, eta_det)));
}

double effective_photons(const CampaignTally& tally, PulseSelection selection) {
  const auto pulses = selection == PulseSelection::All ? tally.pulses_total : tally.pulses_with_field;
  return static_cast<double>(pulses) * tally.effective_photons_per_pulse();
}

double upper_probability(double n_missed, double n_eff) {
  if (!(n_missed >= 0.0) || !std::isfinite(n_missed)) detail::domain_fail("missed photon count must be non-negative");
  if (!(n_eff > 0.0) || !std::isfinite(n_eff)) detail::domain_fail("effective photon count must be positive");
  return n_missed / n_eff;
}

}  // namespace lsw
