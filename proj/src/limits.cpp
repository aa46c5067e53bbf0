#include "lsw/limits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <execution>
#include <functional>

#include "lsw/errors.hpp"
#include "lsw/format.hpp"

namespace lsw {

namespace {

void require_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) detail::domain_fail("probability bound must lie in (0, 1)");
}

void require_omega(double omega) {
  if (!std::isfinite(omega) || omega <= 0.0) detail::domain_fail("photon energy must be finite and positive");
}

void require_mass_axis(std::span<const double> masses) {
  if (masses.empty()) detail::domain_fail("mass axis is empty");
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!std::isfinite(masses[i]) || masses[i] < 0.0) detail::domain_fail("masses must be finite and non-negative");
    if (i > 0 && !(masses[i] > masses[i - 1])) detail::domain_fail("masses must be strictly increasing");
  }
}

// Evaluates `bound_at` on every mass. The callable must not throw; all inputs
// are validated before the parallel section.
template <typename BoundAt>
std::vector<CurvePoint> evaluate(std::span<const double> masses, BoundAt bound_at) {
  std::vector<CurvePoint> points(masses.size());
  std::transform(std::execution::par, masses.begin(), masses.end(), points.begin(),
                 [&](double m) { return CurvePoint{m, bound_at(m)}; });
  return points;
}

// Amplitude (B L / 2)|sinc(Delta_osc L / 2)| of one magnet; sqrt of the p_a shape factor.
double conversion_amplitude(const MagnetSpec& magnet, double mass, double omega, double& sinc_abs) {
  sinc_abs = std::abs(sinc(0.5 * delta_osc(mass, omega) * magnet.length_inv_ev));
  return 0.5 * magnet.field_ev2 * magnet.length_inv_ev * sinc_abs;
}

}  // namespace

void MassGrid::validate() const {
  if (!std::isfinite(min_mass) || !std::isfinite(max_mass) || !(min_mass > 0.0) || !(max_mass > min_mass)) {
    detail::domain_fail("mass grid requires 0 < min_mass < max_mass");
  }
  if (points < 2) detail::domain_fail("mass grid requires at least 2 points");
}

std::vector<double> MassGrid::masses() const {
  validate();
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == Spacing::Logarithmic) {
    const double lo = std::log(min_mass);
    const double step = (std::log(max_mass) - lo) / last;
    for (std::size_t i = 0; i < points; ++i) out[i] = std::exp(lo + step * static_cast<double>(i));
  } else {
    const double step = (max_mass - min_mass) / last;
    for (std::size_t i = 0; i < points; ++i) out[i] = min_mass + step * static_cast<double>(i);
  }
  out.front() = min_mass;
  out.back() = max_mass;
  return out;
}

std::size_t ExclusionCurve::constrained_count() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), std::mem_fn(&CurvePoint::constrained)));
}

std::optional<double> axion_inverse_coupling_bound(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen,
                                                   double mass, double omega) {
  double sinc_gen = 0.0;
  double sinc_regen = 0.0;
  const double a_gen = conversion_amplitude(gen, mass, omega, sinc_gen);
  const double a_regen = conversion_amplitude(regen, mass, omega, sinc_regen);
  if (sinc_gen < kNodeThreshold || sinc_regen < kNodeThreshold) return std::nullopt;
  // p_gen * p_regen = (a_gen a_regen)^2 / M^4
  const double bound = std::sqrt(a_gen * a_regen) / std::pow(p_upper, 0.25);
  if (!(bound > 0.0) || !std::isfinite(bound)) return std::nullopt;
  return bound;
}

std::optional<double> paraphoton_mixing_bound(double p_upper, const OpticalPath& path, double mass, double omega) {
  const double shape = std::abs(std::sin(paraphoton_phase(mass, path.l1_inv_ev, omega)) *
                                std::sin(paraphoton_phase(mass, path.l2_inv_ev, omega)));
  if (shape < kNodeThreshold) return std::nullopt;
  // P = 16 chi^4 shape^2
  const double chi = std::pow(p_upper / 16.0, 0.25) / std::sqrt(shape);
  if (!(chi < 1.0)) return std::nullopt;
  return chi;
}

std::optional<double> ellipticity_inverse_coupling_bound(double psi_limit, const MagnetSpec& magnet,
                                                         const CavitySpec& cavity, double mass, double omega) {
  const double dosc = delta_osc(mass, omega);
  if (dosc == 0.0) return std::nullopt;
  const double length = magnet.length_inv_ev;
  // psi = gain (B/2)^2 / M^2 * (L / dosc) * (1 - sinc(dosc L))
  const double response = cavity.ellipticity_gain() * (length / dosc) * one_minus_sinc(dosc * length);
  const double bound = 0.5 * magnet.field_ev2 * std::sqrt(response / psi_limit);
  if (!(bound > 0.0) || !std::isfinite(bound)) return std::nullopt;
  return bound;
}

ExclusionCurve axion_limit_curve(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen, double omega,
                                 std::span<const double> masses) {
  require_probability(p_upper);
  require_omega(omega);
  require_mass_axis(masses);
  ExclusionCurve curve;
  curve.kind = CouplingKind::InverseCoupling;
  curve.points = evaluate(masses, [&](double m) { return axion_inverse_coupling_bound(p_upper, gen, regen, m, omega); });
  curve.metadata.hypothesis = "axion";
  curve.metadata.bound_input = "p_upper";
  curve.metadata.bound_value = p_upper;
  curve.metadata.notes.push_back("bound is M in eV; unconstrained where |sinc| < " + format_number(kNodeThreshold));
  return curve;
}

ExclusionCurve axion_limit_curve(double p_upper, const MagnetSpec& gen, const MagnetSpec& regen, double omega,
                                 const MassGrid& grid) {
  const auto masses = grid.masses();
  return axion_limit_curve(p_upper, gen, regen, omega, std::span<const double>(masses));
}

ExclusionCurve paraphoton_limit_curve(double p_upper, const OpticalPath& path, double omega,
                                      std::span<const double> masses) {
  require_probability(p_upper);
  require_omega(omega);
  require_mass_axis(masses);
  ExclusionCurve curve;
  curve.kind = CouplingKind::Mixing;
  curve.points = evaluate(masses, [&](double m) { return paraphoton_mixing_bound(p_upper, path, m, omega); });
  curve.metadata.hypothesis = "paraphoton";
  curve.metadata.bound_input = "p_upper";
  curve.metadata.bound_value = p_upper;
  curve.metadata.notes.push_back("bound is chi (dimensionless); unconstrained where |sin sin| < " +
                                 format_number(kNodeThreshold) + " or chi >= 1");
  return curve;
}

ExclusionCurve paraphoton_limit_curve(double p_upper, const OpticalPath& path, double omega, const MassGrid& grid) {
  const auto masses = grid.masses();
  return paraphoton_limit_curve(p_upper, path, omega, std::span<const double>(masses));
}

ExclusionCurve ellipticity_limit_curve(double psi_limit, const MagnetSpec& magnet, const CavitySpec& cavity,
                                       double omega, std::span<const double> masses) {
  if (!std::isfinite(psi_limit) || psi_limit <= 0.0) detail::domain_fail("ellipticity limit must be positive");
  require_omega(omega);
  require_mass_axis(masses);
  cavity.validate();
  ExclusionCurve curve;
  curve.kind = CouplingKind::InverseCoupling;
  curve.points = evaluate(masses, [&](double m) {
    return ellipticity_inverse_coupling_bound(psi_limit, magnet, cavity, m, omega);
  });
  curve.metadata.hypothesis = "ellipticity";
  curve.metadata.bound_input = "psi_limit";
  curve.metadata.bound_value = psi_limit;
  curve.metadata.notes.push_back("bound is M in eV; sine argument taken as Delta_osc * L; cavity gain 2F/pi");
  return curve;
}

ExclusionCurve ellipticity_limit_curve(double psi_limit, const MagnetSpec& magnet, const CavitySpec& cavity,
                                       double omega, const MassGrid& grid) {
  const auto masses = grid.masses();
  return ellipticity_limit_curve(psi_limit, magnet, cavity, omega, std::span<const double>(masses));
}

BandConvention BandConvention::parse(const std::string& text) {
  if (text == "envelope_best") return envelope_best();
  if (text == "worst_constrained") return worst_constrained();
  constexpr std::string_view prefix = "quantile:";
  if (text.starts_with(prefix)) {
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    double q = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, q);
    if (ec == std::errc{} && ptr == last && q >= 0.0 && q <= 1.0) return quantile(q);
  }
  throw std::invalid_argument("unknown band convention '" + text +
                              "' (expected envelope_best, worst_constrained or quantile:<q in [0,1]>)");
}

std::string BandConvention::tag() const {
  switch (kind) {
    case Kind::EnvelopeBest:
      return "envelope_best";
    case Kind::WorstConstrained:
      return "worst_constrained";
    case Kind::Quantile:
      return "quantile:" + format_number(q);
  }
  return {};
}

BandSummary band_summary(const ExclusionCurve& curve, double band_min, double band_max,
                         const BandConvention& convention) {
  if (curve.points.empty()) detail::domain_fail("curve is empty");
  if (!(band_min <= band_max)) detail::domain_fail("band requires min <= max");
  if (band_min < curve.points.front().mass || band_max > curve.points.back().mass) {
    detail::domain_fail("band lies outside the curve's mass range");
  }
  if (convention.kind == BandConvention::Kind::Quantile && !(convention.q >= 0.0 && convention.q <= 1.0)) {
    detail::domain_fail("quantile must lie in [0, 1]");
  }

  std::vector<double> bounds;
  for (const auto& p : curve.points) {
    if (p.constrained() && p.mass >= band_min && p.mass <= band_max) bounds.push_back(*p.bound);
  }
  if (bounds.empty()) detail::domain_fail("no constrained points in band");
  std::sort(bounds.begin(), bounds.end());

  const bool larger_is_stronger = curve.kind == CouplingKind::InverseCoupling;
  BandSummary out;
  out.constrained_points = bounds.size();
  out.convention = convention.tag();
  switch (convention.kind) {
    case BandConvention::Kind::EnvelopeBest:
      out.bound = larger_is_stronger ? bounds.back() : bounds.front();
      break;
    case BandConvention::Kind::WorstConstrained:
      out.bound = larger_is_stronger ? bounds.front() : bounds.back();
      break;
    case BandConvention::Kind::Quantile: {
      const double pos = convention.q * static_cast<double>(bounds.size() - 1);
      const auto lo = static_cast<std::size_t>(std::floor(pos));
      const auto hi = std::min(lo + 1, bounds.size() - 1);
      const double frac = pos - static_cast<double>(lo);
      out.bound = bounds[lo] + frac * (bounds[hi] - bounds[lo]);
      break;
    }
  }
  return out;
}

}  // namespace lsw
