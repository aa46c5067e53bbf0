#pragma once

// Laboratory <-> natural-unit conversions (hbar = c = 1, energies in eV).
//
// The field and length constants are the rounded definitional values used
// throughout the LULI/BMV analyses (1 T == 195 eV^2, 1 m == 5e6 eV^-1).
// They differ from full-precision values (195.35 eV^2 and 5.0677e6 eV^-1)
// by less than 1.4%, and are kept so published numbers reproduce exactly.

namespace lsw::units {

inline constexpr double kEv2PerTesla = 195.0;
inline constexpr double kInvEvPerMeter = 5.0e6;

/// hbar*c in eV*m (CODATA). Used only for wavelength -> photon energy.
inline constexpr double kHbarC = 197.3269804e-9;

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s
inline constexpr double kPi = 3.14159265358979323846;

enum class Unit { Tesla, Meter, Second, Electronvolt, Dimensionless };

/// A value tagged with its laboratory unit, as read from a config file.
struct LabQuantity {
  double value = 0.0;
  Unit unit = Unit::Dimensionless;
};

/// B [T] -> B [eV^2]. Throws DomainError for negative or non-finite input.
double tesla_to_ev2(double tesla);

/// L [m] -> L [eV^-1]. Throws DomainError for negative or non-finite input.
double meter_to_inv_ev(double meter);

/// Photon energy omega = 2*pi*hbar*c / lambda, in eV.
double photon_energy_from_wavelength(double wavelength_m);

}  // namespace lsw::units
