#pragma once

// Closed-form photon <-> weakly-interacting-particle oscillation physics.
//
// Every quantity handed to a kernel is already in natural units: fields in
// eV^2, lengths in eV^-1, energies and masses in eV. The value types below
// perform the laboratory conversion once, in their `from_lab` factories.

namespace lsw {

/// Pulsed magnet: peak field B0 over an equivalent homogeneous length L.
struct MagnetSpec {
  double field_ev2 = 0.0;
  double length_inv_ev = 0.0;

  static MagnetSpec from_lab(double b0_tesla, double length_m);

  double b0_tesla() const;
  double length_m() const;
};

/// Axion-like particle: mass m_a and inverse two-photon coupling M, both eV.
struct AxionParams {
  double mass = 0.0;
  double inverse_coupling = 0.0;

  void validate() const;
};

/// Paraphoton (hidden photon): mass mu in eV and kinetic mixing chi.
struct ParaphotonParams {
  double mass = 0.0;
  double mixing = 0.0;

  void validate() const;
};

/// Free-propagation distances before (L1) and after (L2) the wall.
struct OpticalPath {
  double l1_inv_ev = 0.0;
  double l2_inv_ev = 0.0;

  static OpticalPath from_lab(double l1_m, double l2_m);

  double l1_m() const;
  double l2_m() const;
};

/// Fabry-Perot cavity. Length stays in meters: it only enters tau = F L / (pi c).
struct CavitySpec {
  double length_m = 0.0;
  double finesse = 0.0;

  void validate() const;
  /// Number of effective passes accumulated by the ellipticity, 2F/pi.
  double ellipticity_gain() const;
};

/// Reference magnetic birefringence values (dimensionless Delta n).
struct Measurement {
  double value;
  double sigma;
};

namespace reference {

/// QED vacuum prediction, Delta n per T^2 (rounded; exact value is ~3.96e-24).
inline constexpr double kQedVacuumPerT2 = 4.0e-24;
/// Molecular nitrogen at 1 atm and 273.15 K, per T^2.
inline constexpr Measurement kNitrogenAt1Atm{-2.49e-13, 0.05e-13};
/// BMV vacuum measurement, Delta n per T^2 (17 pulses, B0 ~ 9 T, F ~ 3000).
inline constexpr Measurement kBmvVacuumPerT2{-10.0e-17, 23.0e-17};

}  // namespace reference

// --- Numerically stable shape functions --------------------------------------

/// sin(x)/x, with sinc(0) == 1.
double sinc(double x);

/// 1 - sin(x)/x without cancellation at small |x|.
double one_minus_sinc(double x);

// --- Oscillation kernels -----------------------------------------------------

/// Delta_M = B0 / (2M) in eV.
double delta_m(double field_ev2, double inverse_coupling);

/// Delta_osc = m^2 / (2 omega) in eV.
double delta_osc(double mass, double omega);

/// Single-magnet photon -> ALP conversion probability p_a.
double axion_conversion_probability(const MagnetSpec& magnet, const AxionParams& axion, double omega);

/// Shape factor f = (B0 L / 2)^2 sinc^2(Delta_osc L / 2), so that p_a = f / M^2.
double axion_conversion_shape(const MagnetSpec& magnet, double mass, double omega);

/// Photon regeneration probability through two magnets, p_a(gen) * p_a(regen).
double axion_regeneration_probability(const MagnetSpec& gen, const MagnetSpec& regen,
                                      const AxionParams& axion, double omega);

/// Phase mu^2 L / (4 omega) of one paraphoton oscillation leg.
double paraphoton_phase(double mass, double length_inv_ev, double omega);

/// P_gamma = 16 chi^4 sin^2(mu^2 L1 / 4w) sin^2(mu^2 L2 / 4w).
double paraphoton_regeneration_probability(const OpticalPath& path, const ParaphotonParams& para,
                                           double omega);

/// ALP-induced ellipticity, in radians.
///
///   psi = (Delta_M^2 L / Delta_osc) * (1 - sin(Delta_osc L) / (Delta_osc L))
///
/// The sine argument is the dimensionless phase Delta_osc * L (the bare
/// Delta_osc would carry units of eV). Multiplied by 2F/pi when `cavity`
/// is non-null. Returns the analytic limit 0 at m_a = 0.
double axion_ellipticity(const MagnetSpec& magnet, const AxionParams& axion, double omega,
                         const CavitySpec* cavity = nullptr);

/// tau = F L / (pi c), seconds.
double lifetime_from_finesse(const CavitySpec& cavity);

/// F = pi c tau / L.
double finesse_from_lifetime(double tau_s, double length_m);

/// QED vacuum birefringence Delta n at field b (tesla).
double qed_vacuum_birefringence(double b_tesla);

}  // namespace lsw
