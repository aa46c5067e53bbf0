#include <doctest.h>

#include <cmath>

#include "lsw/errors.hpp"
#include "lsw/statistics.hpp"
#include "test_util.hpp"

using namespace lsw;
using lsw::test::rel_diff;

namespace {

CampaignTally luli_tally(double extra_loss) { return CampaignTally{82, 56, 8e21, 0.85, extra_loss}; }

}  // namespace

TEST_CASE("n_missed") {
  CHECK(n_missed(0.997, 0.48) == doctest::Approx(7.883480452094066).epsilon(1e-13));
  CHECK(n_missed_bound(0.997, 0.48) == 8);
  CHECK(n_missed(0.75, 0.5) == 1.0);
  // Vanishing confidence: raw value is negative and clamps to zero.
  CHECK(n_missed(1e-12, 0.48) == 0.0);
  CHECK(n_missed_bound(1e-12, 0.48) == 0);

  CHECK_THROWS_AS(n_missed(0.0, 0.48), DomainError);
  CHECK_THROWS_AS(n_missed(1.0, 0.48), DomainError);
  CHECK_THROWS_AS(n_missed(0.9, 0.0), DomainError);
  CHECK_THROWS_AS(n_missed(0.9, 1.0), DomainError);
}

TEST_CASE("effective photons") {
  CHECK(rel_diff(effective_photons(luli_tally(1.0)), 3.808e23) < 1e-15);
  CHECK(rel_diff(effective_photons(luli_tally(0.63)), 2.39904e23) < 1e-15);
  CHECK(rel_diff(effective_photons(luli_tally(1.0), PulseSelection::All), 82 * 8e21 * 0.85) < 1e-15);
  CHECK(effective_photons(CampaignTally{82, 0, 8e21, 0.85, 1.0}) == 0.0);

  CHECK_THROWS_AS(effective_photons(CampaignTally{10, 11, 8e21, 0.85, 1.0}), DomainError);
  CHECK_THROWS_AS(effective_photons(CampaignTally{10, 5, 8e21, 0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(effective_photons(CampaignTally{10, 5, 8e21, 0.85, 1.5}), DomainError);
  CHECK_THROWS_AS(effective_photons(CampaignTally{10, 5, 0.0, 0.85, 1.0}), DomainError);
}

TEST_CASE("upper probability reproduces the published axion bound") {
  const double p = upper_probability(n_missed(0.997, 0.48), effective_photons(luli_tally(0.63)));
  CHECK(p == doctest::Approx(3.3e-23).epsilon(0.02));
  CHECK(upper_probability(7.88, 2.39e23) == doctest::Approx(3.3e-23).epsilon(0.02));
  CHECK(upper_probability(0.0, 1e20) == 0.0);
  CHECK(upper_probability(8.0, 8e23) == doctest::Approx(1e-23).epsilon(1e-15));
  CHECK_THROWS_AS(upper_probability(8.0, 0.0), DomainError);
  CHECK_THROWS_AS(upper_probability(-1.0, 1e20), DomainError);
}

TEST_CASE("detector and tally validation") {
  CHECK_NOTHROW((DetectorSpec{0.48, 2.5e-4, 5.0}.validate()));
  CHECK_THROWS_AS((DetectorSpec{1.2, 2.5e-4, 5.0}.validate()), DomainError);
  CHECK_THROWS_AS((DetectorSpec{0.48, 1.0, 5.0}.validate()), DomainError);
  CHECK_THROWS_AS((DetectorSpec{0.48, 0.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((CampaignTally{-1, 0, 1.0, 1.0, 1.0}.validate()), DomainError);
}

TEST_CASE("property: monotonicity and the survival identity") {
  for (double eta = 0.05; eta < 0.96; eta += 0.05) {
    double prev = -1.0;
    for (double cl = 0.5; cl < 0.9999; cl += 0.01) {
      const double n = n_missed(cl, eta);
      if (n > 0.0) {
        CHECK(n > prev);
        // (1 - eta)^(n + 1) == 1 - CL
        CHECK(rel_diff(std::pow(1.0 - eta, n + 1.0), 1.0 - cl) < 1e-12);
      }
      prev = n;
    }
  }
  for (double cl = 0.9; cl < 0.9999; cl += 0.005) {
    double prev = INFINITY;
    for (double eta = 0.01; eta < 0.99; eta += 0.01) {
      const double n = n_missed(cl, eta);
      if (n > 0.0) CHECK(n < prev);
      prev = n;
    }
  }
  lsw::test::Sampler s(7);
  for (int i = 0; i < 200; ++i) {
    const double n = s.uniform(0.0, 20.0);
    const double neff = s.log_uniform(1e18, 1e25);
    const double p = upper_probability(n, neff);
    CHECK(rel_diff(upper_probability(2.0 * n, neff), 2.0 * p) < 1e-15);
    CHECK(rel_diff(upper_probability(n, 4.0 * neff), p / 4.0) < 1e-15);
  }
}
