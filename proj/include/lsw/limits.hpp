#pragma once

// Exclusion curves: per-mass coupling bounds obtained by inverting the
// oscillation kernels at a fixed probability (or ellipticity) bound.
//
// Every kernel factors as (coupling power) x (mass shape), e.g.
// p_a = f(m) / M^2 and P_gamma = 16 chi^4 g(mu), so each inversion is
// closed-form and no root finder is involved.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lsw/kernels.hpp"

namespace lsw {

/// Mass axis of an exclusion curve. Endpoints are reproduced exactly.
struct MassGrid {
  enum class Spacing { Logarithmic, Linear };

  double min_mass = 0.0;
  double max_mass = 0.0;
  std::size_t points = 2000;
  Spacing spacing = Spacing::Logarithmic;

  void validate() const;
  std::vector<double> masses() const;
};

/// Points whose amplitude shape factor falls below this are unconstrained.
inline constexpr double kNodeThreshold = 1e-9;

/// What the `bound` column of a curve measures.
enum class CouplingKind {
  InverseCoupling,  ///< M in eV; larger is stronger exclusion
  Mixing,           ///< chi, dimensionless; smaller is stronger exclusion
};

struct CurvePoint {
  double mass = 0.0;
  std::optional<double> bound;

  bool constrained() const { return bound.has_value(); }
};

struct CurveMetadata {
  std::string experiment_id;
  std::string hypothesis;     ///< "axion", "paraphoton" or "ellipticity"
  std::string bound_input;    ///< "p_upper" or "psi_limit"
  double bound_value = 0.0;   ///< probability or ellipticity bound used
  std::vector<std::string> notes;
};

struct ExclusionCurve {
  CouplingKind kind = CouplingKind::InverseCoupling;
  std::vector<CurvePoint> points;
  CurveMetadata metadata;

  std::size_t constrained_count() const;
};

// --- Single-point inversions ---------------------------------------------------
// Each returns nullopt where the shape factor vanishes (node) or, for chi,
// where the bound would be vacuous (chi >= 1).

std::optional<double> axion_inverse_coupling_bound(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen,
                                                   double mass, double omega);

std::optional<double> paraphoton_mixing_bound(double p_upper, const OpticalPath& path, double mass, double omega);

std::optional<double> ellipticity_inverse_coupling_bound(double psi_limit, const MagnetSpec& magnet,
                                                         const CavitySpec& cavity, double mass, double omega);

// --- Curves --------------------------------------------------------------------
// Grid points are evaluated independently (in parallel); output order follows
// the mass axis regardless of scheduling.

ExclusionCurve axion_limit_curve(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen, double omega,
                                 const MassGrid& grid);
ExclusionCurve axion_limit_curve(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen, double omega,
                                 std::span<const double> masses);

ExclusionCurve paraphoton_limit_curve(double p_upper, const OpticalPath& path, double omega, const MassGrid& grid);
ExclusionCurve paraphoton_limit_curve(double p_upper, const OpticalPath& path, double omega,
                                      std::span<const double> masses);

ExclusionCurve ellipticity_limit_curve(double psi_limit, const MagnetSpec& magnet, const CavitySpec& cavity,
                                       double omega, const MassGrid& grid);
ExclusionCurve ellipticity_limit_curve(double psi_limit, const MagnetSpec& magnet, const CavitySpec& cavity,
                                       double omega, std::span<const double> masses);

// --- Band summaries ------------------------------------------------------------

struct BandConvention {
  enum class Kind { EnvelopeBest, WorstConstrained, Quantile };

  Kind kind = Kind::EnvelopeBest;
  double q = 0.5;  ///< used by Quantile only

  static BandConvention envelope_best() { return {Kind::EnvelopeBest, 0.0}; }
  static BandConvention worst_constrained() { return {Kind::WorstConstrained, 0.0}; }
  static BandConvention quantile(double q) { return {Kind::Quantile, q}; }

  /// Parses "envelope_best", "worst_constrained" or "quantile:<q>".
  static BandConvention parse(const std::string& text);
  std::string tag() const;
};

struct BandSummary {
  double bound = 0.0;
  std::size_t constrained_points = 0;
  std::string convention;
};

/// Aggregates the constrained bounds with masses in [band_min, band_max].
///
/// envelope_best is the strongest bound (min chi / max M), worst_constrained
/// the weakest (max chi / min M). quantile(q) is the linearly interpolated
/// q-quantile of the bound values themselves, so for chi-type curves
/// envelope_best <= quantile <= worst_constrained.
BandSummary band_summary(const ExclusionCurve& curve, double band_min, double band_max,
                         const BandConvention& convention);

}  // namespace lsw
