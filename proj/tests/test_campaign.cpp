#include <doctest.h>

#include <cmath>

#include "lsw/campaign.hpp"
#include "lsw/errors.hpp"
#include "lsw/limits.hpp"
#include "test_util.hpp"

using namespace lsw;

namespace {

CampaignConfig luli_campaign() {
  CampaignConfig c;
  c.detector = DetectorSpec{0.48, 0.0, 5.0};
  c.tally = CampaignTally{82, 56, 8e21, 0.85, 0.63};
  c.generation_magnet = MagnetSpec::from_lab(12.0, 0.365);
  c.regeneration_magnet = c.generation_magnet;
  c.path = OpticalPath::from_lab(20.2, 1.5);
  c.omega = 1.17;
  c.seed = 42;
  return c;
}

bool same_record(const CampaignRecord& a, const CampaignRecord& b) {
  if (a.pulses.size() != b.pulses.size()) return false;
  for (std::size_t i = 0; i < a.pulses.size(); ++i) {
    const auto& x = a.pulses[i];
    const auto& y = b.pulses[i];
    if (x.pulse != y.pulse || x.field_on != y.field_on || x.lambda_expected != y.lambda_expected ||
        x.signal_counts != y.signal_counts || x.dark_counts != y.dark_counts) {
      return false;
    }
  }
  return a.totals.signal_counts == b.totals.signal_counts && a.totals.dark_counts == b.totals.dark_counts;
}

}  // namespace

TEST_CASE("counter rng is a pure function of (seed, stream, index)") {
  CounterRng a(1, 7);
  CounterRng b(1, 7);
  CounterRng other_stream(1, 8);
  CounterRng other_seed(2, 7);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != other_stream.next());
    CHECK(x != other_seed.next());
  }
  CounterRng u(3, 0);
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("poisson sampler moments") {
  for (const double mean : {0.0, 0.3, 3.8, 10.0, 60.0}) {
    CAPTURE(mean);
    const int n = 100000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
      CounterRng rng(11, static_cast<std::uint64_t>(i));
      const auto k = static_cast<double>(rng.poisson(mean));
      sum += k;
      sum2 += k * k;
    }
    const double m = sum / n;
    const double var = sum2 / n - m * m;
    CHECK(std::abs(m - mean) <= 4.0 * std::sqrt(std::max(mean, 1e-12) / n) + 1e-12);
    if (mean > 0.0) CHECK(std::abs(var / mean - 1.0) < 0.05);
  }
  CounterRng rng(0, 0);
  CHECK_THROWS_AS(rng.poisson(-1.0), DomainError);
  CHECK_THROWS_AS(rng.poisson(1e4), DomainError);
}

TEST_CASE("field pulses are spread evenly and counted exactly") {
  for (const auto& [total, on] : {std::pair<std::int64_t, std::int64_t>{82, 56}, {10, 0}, {10, 10}, {7, 3}}) {
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < total; ++i) count += pulse_has_field(i, total, on) ? 1 : 0;
    CHECK(count == on);
  }
}

TEST_CASE("null world gives an all-zero record") {
  auto cfg = luli_campaign();
  const auto rec = simulate_campaign(cfg);
  REQUIRE(rec.pulses.size() == 82);
  CHECK(rec.totals.field_on_pulses == 56);
  CHECK(rec.totals.signal_counts == 0);
  CHECK(rec.totals.dark_counts == 0);
  for (const auto& p : rec.pulses) {
    CHECK(p.lambda_expected == 0.0);
    CHECK(p.signal_counts == 0);
    CHECK(p.dark_counts == 0);
  }
}

TEST_CASE("determinism across runs") {
  auto cfg = luli_campaign();
  cfg.detector.dark_per_gate = 0.05;
  cfg.hypothesis = AxionParams{1e-5, 4.5e14};
  const auto a = simulate_campaign(cfg);
  const auto b = simulate_campaign(cfg);
  CHECK(same_record(a, b));

  // Any pulse can be reproduced in isolation from its (seed, index) substream.
  for (const std::int64_t i : {0, 17, 81}) {
    CounterRng rng(cfg.seed, static_cast<std::uint64_t>(i));
    const auto& p = a.pulses[static_cast<std::size_t>(i)];
    CHECK(rng.poisson(p.lambda_expected * cfg.detector.eta_det) == p.signal_counts);
    CHECK((rng.bernoulli(cfg.detector.dark_per_gate) ? 1 : 0) == p.dark_counts);
  }
  cfg.seed = 43;
  CHECK_FALSE(same_record(a, simulate_campaign(cfg)));
}

TEST_CASE("field-off pulses carry no axion signal; paraphoton signal ignores the field") {
  auto cfg = luli_campaign();
  cfg.hypothesis = AxionParams{1e-5, 4.5e14};
  for (const auto& p : simulate_campaign(cfg).pulses) {
    if (!p.field_on) {
      CHECK(p.lambda_expected == 0.0);
      CHECK(p.signal_counts == 0);
    } else {
      CHECK(p.lambda_expected > 0.0);
    }
  }
  cfg.hypothesis = ParaphotonParams{3e-3, 1e-6};
  const auto rec = simulate_campaign(cfg);
  for (const auto& p : rec.pulses) CHECK(p.lambda_expected == rec.pulses.front().lambda_expected);

  cfg.path.reset();
  CHECK_THROWS_AS(simulate_campaign(cfg), DomainError);
}

TEST_CASE("Poisson mean of 10 detections per pulse") {
  // Choose chi so that lambda * eta_det = 10 at a mass where both sines are near 1.
  auto cfg = luli_campaign();
  cfg.tally = CampaignTally{200, 200, 8e21, 0.85, 1.0};
  const double mass = 3e-3;
  const double target_p = 10.0 / (cfg.tally.effective_photons_per_pulse() * cfg.detector.eta_det);
  const auto chi = paraphoton_mixing_bound(target_p, *cfg.path, mass, cfg.omega);
  REQUIRE(chi);
  cfg.hypothesis = ParaphotonParams{mass, *chi};

  double sum = 0.0;
  std::int64_t pulses = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.seed = seed;
    const auto rec = simulate_campaign(cfg);
    CHECK(rec.totals.expected_detections == doctest::Approx(2000.0).epsilon(1e-10));
    sum += static_cast<double>(rec.totals.signal_counts);
    pulses += rec.totals.pulses;
  }
  const double mean = sum / static_cast<double>(pulses);
  CHECK(std::abs(mean - 10.0) < 3.0 * std::sqrt(10.0 / static_cast<double>(pulses)));
}

TEST_CASE("zero-detection fraction matches the Poisson oracle") {
  // Paper-like axion campaign with P_a at the published upper bound.
  auto cfg = luli_campaign();
  const auto m_bound = axion_inverse_coupling_bound(3.3e-23, cfg.generation_magnet, cfg.regeneration_magnet, 1e-5,
                                                    cfg.omega);
  REQUIRE(m_bound);
  cfg.hypothesis = AxionParams{1e-5, *m_bound};
  const int seeds = 10000;
  int zero = 0;
  double expected = 0.0;
  for (int s = 0; s < seeds; ++s) {
    cfg.seed = static_cast<std::uint64_t>(s);
    const auto rec = simulate_campaign(cfg);
    expected = rec.totals.expected_detections;
    zero += rec.totals.signal_counts == 0 ? 1 : 0;
  }
  // 56 * 8e21 * 0.85 * 0.63 * 3.3e-23 * 0.48
  CHECK(expected == doctest::Approx(3.8001e0).epsilon(1e-3));
  const double p0 = std::exp(-expected);
  const double sigma = std::sqrt(p0 * (1.0 - p0) / seeds);
  CHECK(std::abs(static_cast<double>(zero) / seeds - p0) < 3.0 * sigma);
}

TEST_CASE("dark counts follow the per-gate budget") {
  auto cfg = luli_campaign();
  cfg.tally = CampaignTally{100, 0, 8e21, 0.85, 1.0};
  cfg.detector.dark_per_gate = 2.5e-4;
  std::int64_t total = 0;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    cfg.seed = s;
    const auto rec = simulate_campaign(cfg);
    CHECK(rec.totals.expected_dark_counts == doctest::Approx(2.5e-2));
    CHECK(rec.totals.signal_counts == 0);
    total += rec.totals.dark_counts;
  }
  const double mean = static_cast<double>(total) / 4000.0;
  CHECK(std::abs(mean - 2.5e-2) < 3.0 * std::sqrt(2.5e-2 / 4000.0));
}

TEST_CASE("detection probability oracle") {
  const double p = detection_probability_oracle(0.48, 8, 100000, 5);
  const double expected = 1.0 - std::pow(0.52, 8);
  CHECK(expected == doctest::Approx(0.9947).epsilon(1e-4));
  CHECK(std::abs(p - expected) < 3.0 * std::sqrt(expected * (1.0 - expected) / 1e5));
  CHECK(detection_probability_oracle(0.48, 0, 1000, 5) == 0.0);

  // n_missed + 1 photons are detected with probability >= CL.
  const auto n = static_cast<std::int64_t>(std::llround(n_missed(0.997, 0.48) + 1.0));
  CHECK(n == 9);
  const double analytic = 1.0 - std::pow(0.52, static_cast<double>(n));
  CHECK(analytic >= 0.997);
  const double emp = detection_probability_oracle(0.48, n, 100000, 6);
  CHECK(std::abs(emp - analytic) < 3.0 * std::sqrt(analytic * (1.0 - analytic) / 1e5));

  CHECK(detection_probability_oracle(0.3, 4, 1000, 9) == detection_probability_oracle(0.3, 4, 1000, 9));
  CHECK_THROWS_AS(detection_probability_oracle(0.0, 4, 10, 1), DomainError);
  CHECK_THROWS_AS(detection_probability_oracle(0.5, -1, 10, 1), DomainError);
  CHECK_THROWS_AS(detection_probability_oracle(0.5, 4, 0, 1), DomainError);
}
