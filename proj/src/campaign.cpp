#include "lsw/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <execution>
#include <numeric>

#include "lsw/errors.hpp"

namespace lsw {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kMaxPoissonMean = 500.0;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ mix64(stream * kGolden + 0x632be59bd9b4e019ULL))) {}

std::uint64_t CounterRng::next() { return mix64(key_ + (++counter_) * kGolden); }

double CounterRng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

bool CounterRng::bernoulli(double p) { return uniform() < p; }

std::int64_t CounterRng::poisson(double mean) {
  if (!(mean >= 0.0) || mean > kMaxPoissonMean) detail::domain_fail("Poisson mean must lie in [0, 500]");
  const double u = uniform();
  double pmf = std::exp(-mean);
  double cdf = pmf;
  std::int64_t k = 0;
  while (u >= cdf) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    const double next = cdf + pmf;
    if (next == cdf && static_cast<double>(k) > mean) break;  // tail exhausted in double precision
    cdf = next;
  }
  return k;
}

void CampaignConfig::validate() const {
  detector.validate();
  tally.validate();
  if (!std::isfinite(omega) || omega <= 0.0) detail::domain_fail("photon energy must be finite and positive");
  if (const auto* axion = std::get_if<AxionParams>(&hypothesis)) axion->validate();
  if (const auto* para = std::get_if<ParaphotonParams>(&hypothesis)) {
    para->validate();
    if (!path) detail::domain_fail("paraphoton hypothesis requires an optical path");
  }
}

bool pulse_has_field(std::int64_t index, std::int64_t total, std::int64_t with_field) {
  if (total <= 0) return false;
  // Bresenham-style spacing: exactly `with_field` of the `total` pulses are on.
  return (index + 1) * with_field / total > index * with_field / total;
}

double pulse_regeneration_probability(const CampaignConfig& config, bool field_on) {
  return std::visit(
      [&](const auto& h) -> double {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, AxionParams>) {
          if (!field_on) return 0.0;
          return axion_regeneration_probability(config.generation_magnet, config.regeneration_magnet, h,
                                                config.omega);
        } else if constexpr (std::is_same_v<T, ParaphotonParams>) {
          return paraphoton_regeneration_probability(*config.path, h, config.omega);
        } else {
          return 0.0;
        }
      },
      config.hypothesis);
}

CampaignRecord simulate_campaign(const CampaignConfig& config) {
  config.validate();
  const auto total = config.tally.pulses_total;
  const double photons_per_pulse = config.tally.effective_photons_per_pulse();
  const double eta = config.detector.eta_det;
  const double p_on = pulse_regeneration_probability(config, true);
  const double p_off = pulse_regeneration_probability(config, false);
  if (photons_per_pulse * std::max(p_on, p_off) * eta > kMaxPoissonMean) {
    detail::domain_fail("expected signal per pulse exceeds the sampler range");
  }

  CampaignRecord record;
  record.seed = config.seed;
  record.pulses.resize(static_cast<std::size_t>(total));
  std::vector<std::int64_t> indices(record.pulses.size());
  std::iota(indices.begin(), indices.end(), std::int64_t{0});

  std::transform(std::execution::par, indices.begin(), indices.end(), record.pulses.begin(), [&](std::int64_t i) {
    CounterRng rng(config.seed, static_cast<std::uint64_t>(i));
    PulseOutcome out;
    out.pulse = i;
    out.field_on = pulse_has_field(i, total, config.tally.pulses_with_field);
    out.lambda_expected = photons_per_pulse * (out.field_on ? p_on : p_off);
    out.signal_counts = rng.poisson(out.lambda_expected * eta);
    out.dark_counts = rng.bernoulli(config.detector.dark_per_gate) ? 1 : 0;
    return out;
  });

  auto& t = record.totals;
  t.pulses = total;
  for (const auto& p : record.pulses) {
    t.field_on_pulses += p.field_on ? 1 : 0;
    t.lambda_expected += p.lambda_expected;
    t.signal_counts += p.signal_counts;
    t.dark_counts += p.dark_counts;
  }
  t.expected_detections = t.lambda_expected * eta;
  t.expected_dark_counts = static_cast<double>(total) * config.detector.dark_per_gate;
  return record;
}

double detection_probability_oracle(double eta, std::int64_t n_photons, std::int64_t trials, std::uint64_t seed) {
  if (!(eta > 0.0 && eta < 1.0)) detail::domain_fail("efficiency must lie in (0, 1)");
  if (n_photons < 0) detail::domain_fail("photon count must be non-negative");
  if (trials < 1) detail::domain_fail("at least one trial is required");

  std::vector<std::int64_t> indices(static_cast<std::size_t>(trials));
  std::iota(indices.begin(), indices.end(), std::int64_t{0});
  const auto hits = std::transform_reduce(std::execution::par, indices.begin(), indices.end(), std::int64_t{0},
                                          std::plus<>{}, [&](std::int64_t trial) -> std::int64_t {
                                            CounterRng rng(seed, static_cast<std::uint64_t>(trial));
                                            for (std::int64_t k = 0; k < n_photons; ++k) {
                                              if (rng.bernoulli(eta)) return 1;
                                            }
                                            return 0;
                                          });
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace lsw
