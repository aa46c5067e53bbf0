#pragma once

// Monte Carlo model of a pulsed photon-regeneration campaign.
//
// Each pulse draws from its own counter-based substream keyed by
// (seed, pulse index), so a record does not depend on the order or the
// degree of parallelism in which pulses are simulated.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "lsw/kernels.hpp"
#include "lsw/statistics.hpp"

namespace lsw {

/// No particle, an axion-like particle, or a paraphoton.
using ParticleHypothesis = std::variant<std::monostate, AxionParams, ParaphotonParams>;

/// Stateless-keyed generator: output i of stream s is a pure function of
/// (seed, s, i). Mixing is the SplitMix64 finalizer.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  bool bernoulli(double p);
  /// Poisson variate by sequential CDF inversion. Mean must be <= 500.
  std::int64_t poisson(double mean);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct CampaignConfig {
  DetectorSpec detector;
  CampaignTally tally;
  ParticleHypothesis hypothesis;
  MagnetSpec generation_magnet;
  MagnetSpec regeneration_magnet;
  std::optional<OpticalPath> path;  ///< required for paraphoton hypotheses
  double omega = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PulseOutcome {
  std::int64_t pulse = 0;
  bool field_on = false;
  double lambda_expected = 0.0;  ///< regenerated photons reaching the detector
  std::int64_t signal_counts = 0;
  std::int64_t dark_counts = 0;
};

struct CampaignTotals {
  std::int64_t pulses = 0;
  std::int64_t field_on_pulses = 0;
  double lambda_expected = 0.0;
  double expected_detections = 0.0;  ///< sum of lambda * eta_det
  double expected_dark_counts = 0.0;
  std::int64_t signal_counts = 0;
  std::int64_t dark_counts = 0;
};

struct CampaignRecord {
  std::vector<PulseOutcome> pulses;
  CampaignTotals totals;
  std::uint64_t seed = 0;
};

/// True when pulse `index` of `total` has the magnet fired; the
/// `with_field` firings are spread evenly over the campaign.
bool pulse_has_field(std::int64_t index, std::int64_t total, std::int64_t with_field);

/// Regeneration probability of `hypothesis` for one pulse.
double pulse_regeneration_probability(const CampaignConfig& config, bool field_on);

CampaignRecord simulate_campaign(const CampaignConfig& config);

/// Fraction of `trials` in which at least one of `n_photons` independent
/// Bernoulli(eta) detections succeeds. Converges to 1 - (1 - eta)^n.
double detection_probability_oracle(double eta, std::int64_t n_photons, std::int64_t trials, std::uint64_t seed);

}  // namespace lsw
