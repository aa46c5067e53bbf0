#include "lsw/units.hpp"

#include <cmath>

#include "lsw/errors.hpp"

namespace lsw::units {

namespace {

void require_non_negative(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    detail::domain_fail(std::string(what) + " must be finite and non-negative");
  }
}

}  // namespace

double tesla_to_ev2(double tesla) {
  require_non_negative(tesla, "magnetic field");
  return kEv2PerTesla * tesla;
}

double meter_to_inv_ev(double meter) {
  require_non_negative(meter, "length");
  return kInvEvPerMeter * meter;
}

double photon_energy_from_wavelength(double wavelength_m) {
  if (!std::isfinite(wavelength_m) || wavelength_m <= 0.0) {
    detail::domain_fail("wavelength must be finite and positive");
  }
  return 2.0 * kPi * kHbarC / wavelength_m;
}

}  // namespace lsw::units
