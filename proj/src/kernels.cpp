#include "lsw/kernels.hpp"

#include <cmath>
#include <string>

#include "lsw/errors.hpp"
#include "lsw/units.hpp"

namespace lsw {

namespace {

using units::kPi;
using units::kSpeedOfLight;

// Below this |x| the sinc Taylor polynomial 1 - x^2/6 + x^4/120 is exact to
// double precision (next term x^6/5040 < 1e-27).
constexpr double kSincSeriesThreshold = 1e-4;

// 1 - sinc(x) loses ~log10(6/x^2) digits when evaluated directly, so the
// alternating series is summed up to |x| = 1 where fewer than one digit is lost.
constexpr double kOneMinusSincSeriesThreshold = 1.0;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || std::isnan(v)) detail::domain_fail(std::string(what) + " must be positive");
}

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) detail::domain_fail(std::string(what) + " must be finite and positive");
}

void require_non_negative_finite(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) detail::domain_fail(std::string(what) + " must be finite and non-negative");
}

}  // namespace

MagnetSpec MagnetSpec::from_lab(double b0_tesla, double length_m) {
  require_positive_finite(length_m, "magnet length");
  return MagnetSpec{units::tesla_to_ev2(b0_tesla), units::meter_to_inv_ev(length_m)};
}

double MagnetSpec::b0_tesla() const { return field_ev2 / units::kEv2PerTesla; }
double MagnetSpec::length_m() const { return length_inv_ev / units::kInvEvPerMeter; }

void AxionParams::validate() const {
  require_non_negative_finite(mass, "axion mass");
  require_positive(inverse_coupling, "inverse coupling M");
}

void ParaphotonParams::validate() const {
  require_non_negative_finite(mass, "paraphoton mass");
  if (!std::isfinite(mixing) || mixing < 0.0 || mixing >= 1.0) {
    detail::domain_fail("paraphoton mixing must lie in [0, 1)");
  }
}

OpticalPath OpticalPath::from_lab(double l1_m, double l2_m) {
  require_positive_finite(l1_m, "path length L1");
  require_positive_finite(l2_m, "path length L2");
  return OpticalPath{units::meter_to_inv_ev(l1_m), units::meter_to_inv_ev(l2_m)};
}

double OpticalPath::l1_m() const { return l1_inv_ev / units::kInvEvPerMeter; }
double OpticalPath::l2_m() const { return l2_inv_ev / units::kInvEvPerMeter; }

void CavitySpec::validate() const {
  require_positive_finite(length_m, "cavity length");
  require_positive_finite(finesse, "cavity finesse");
}

double CavitySpec::ellipticity_gain() const {
  validate();
  return 2.0 * finesse / kPi;
}

double sinc(double x) {
  if (std::abs(x) < kSincSeriesThreshold) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double one_minus_sinc(double x) {
  if (std::abs(x) >= kOneMinusSincSeriesThreshold) return 1.0 - std::sin(x) / x;
  // sum_{k>=1} (-1)^(k+1) x^(2k) / (2k+1)!
  const double x2 = x * x;
  double term = x2 / 6.0;
  double sum = 0.0;
  for (int k = 1; k <= 20; ++k) {
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    term *= -x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

double delta_m(double field_ev2, double inverse_coupling) {
  require_non_negative_finite(field_ev2, "magnetic field");
  require_positive(inverse_coupling, "inverse coupling M");
  return field_ev2 / (2.0 * inverse_coupling);
}

double delta_osc(double mass, double omega) {
  require_non_negative_finite(mass, "mass");
  require_positive_finite(omega, "photon energy");
  return mass * mass / (2.0 * omega);
}

double axion_conversion_shape(const MagnetSpec& magnet, double mass, double omega) {
  const double half_bl = 0.5 * magnet.field_ev2 * magnet.length_inv_ev;
  const double s = sinc(0.5 * delta_osc(mass, omega) * magnet.length_inv_ev);
  return half_bl * half_bl * s * s;
}

double axion_conversion_probability(const MagnetSpec& magnet, const AxionParams& axion, double omega) {
  axion.validate();
  const double mixing_phase = delta_m(magnet.field_ev2, axion.inverse_coupling) * magnet.length_inv_ev;
  const double s = sinc(0.5 * delta_osc(axion.mass, omega) * magnet.length_inv_ev);
  return mixing_phase * mixing_phase * s * s;
}

double axion_regeneration_probability(const MagnetSpec& gen, const MagnetSpec& regen, const AxionParams& axion,
                                      double omega) {
  return axion_conversion_probability(gen, axion, omega) * axion_conversion_probability(regen, axion, omega);
}

double paraphoton_phase(double mass, double length_inv_ev, double omega) {
  require_non_negative_finite(mass, "paraphoton mass");
  require_positive_finite(omega, "photon energy");
  return mass * mass * length_inv_ev / (4.0 * omega);
}

double paraphoton_regeneration_probability(const OpticalPath& path, const ParaphotonParams& para, double omega) {
  para.validate();
  const double s1 = std::sin(paraphoton_phase(para.mass, path.l1_inv_ev, omega));
  const double s2 = std::sin(paraphoton_phase(para.mass, path.l2_inv_ev, omega));
  const double chi2 = para.mixing * para.mixing;
  return 16.0 * chi2 * chi2 * s1 * s1 * s2 * s2;
}

double axion_ellipticity(const MagnetSpec& magnet, const AxionParams& axion, double omega, const CavitySpec* cavity) {
  axion.validate();
  const double gain = cavity ? cavity->ellipticity_gain() : 1.0;
  const double dm = delta_m(magnet.field_ev2, axion.inverse_coupling);
  const double dosc = delta_osc(axion.mass, omega);
  if (dosc == 0.0) return 0.0;
  const double length = magnet.length_inv_ev;
  return gain * (dm * dm * length / dosc) * one_minus_sinc(dosc * length);
}

double lifetime_from_finesse(const CavitySpec& cavity) {
  cavity.validate();
  return cavity.finesse * cavity.length_m / (kPi * kSpeedOfLight);
}

double finesse_from_lifetime(double tau_s, double length_m) {
  require_positive_finite(tau_s, "photon lifetime");
  require_positive_finite(length_m, "cavity length");
  return kPi * kSpeedOfLight * tau_s / length_m;
}

double qed_vacuum_birefringence(double b_tesla) {
  require_non_negative_finite(b_tesla, "magnetic field");
  return reference::kQedVacuumPerT2 * b_tesla * b_tesla;
}

}  // namespace lsw
