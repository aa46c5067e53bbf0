#include "lsw/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#define TOML_ENABLE_FORMATTERS 0
#include <toml.hpp>

#include "lsw/errors.hpp"
#include "lsw/units.hpp"

namespace lsw {

namespace {

// One [section] of the document, with its allowed key set.
class Section {
 public:
  Section(const toml::table* table, std::string name, std::set<std::string> allowed)
      : table_(table), name_(std::move(name)) {
    if (!table_) return;
    for (const auto& [key, node] : *table_) {
      const std::string k(key.str());
      if (!allowed.contains(k)) throw ConfigError(name_ + "." + k, "unknown key");
    }
  }

  bool present() const { return table_ != nullptr; }
  bool has(const std::string& key) const { return table_ && table_->contains(key); }
  std::string key(const std::string& k) const { return name_ + "." + k; }

  double number(const std::string& k) const {
    const auto* node = lookup(k);
    if (auto v = node->value_exact<double>()) return check_finite(k, *v);
    if (auto v = node->value_exact<std::int64_t>()) return static_cast<double>(*v);
    throw ConfigError(key(k), "expected a number");
  }

  std::int64_t integer(const std::string& k) const {
    if (auto v = lookup(k)->value_exact<std::int64_t>()) return *v;
    throw ConfigError(key(k), "expected an integer");
  }

  std::string text(const std::string& k) const {
    if (auto v = lookup(k)->value_exact<std::string>()) return *v;
    throw ConfigError(key(k), "expected a string");
  }

  // Range guards; each names the key on failure.
  double positive(const std::string& k) const {
    const double v = number(k);
    if (!(v > 0.0)) throw ConfigError(key(k), "must be positive");
    return v;
  }
  double non_negative(const std::string& k) const {
    const double v = number(k);
    if (!(v >= 0.0)) throw ConfigError(key(k), "must be non-negative");
    return v;
  }
  double open_unit(const std::string& k) const {
    const double v = number(k);
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(key(k), "must lie in (0, 1)");
    return v;
  }
  double half_open_unit(const std::string& k) const {
    const double v = number(k);
    if (!(v > 0.0 && v <= 1.0)) throw ConfigError(key(k), "must lie in (0, 1]");
    return v;
  }

 private:
  const toml::node* lookup(const std::string& k) const {
    const toml::node* node = table_ ? table_->get(k) : nullptr;
    if (!node) throw ConfigError(key(k), "missing required key");
    return node;
  }

  double check_finite(const std::string& k, double v) const {
    if (!std::isfinite(v)) throw ConfigError(key(k), "must be finite");
    return v;
  }

  const toml::table* table_;
  std::string name_;
};

const std::set<std::string> kSections = {"experiment", "generation_magnet", "regeneration_magnet", "path", "detector",
                                         "tally", "cavity", "ellipticity", "grid"};

Section section(const toml::table& root, const std::string& name, std::set<std::string> allowed) {
  const toml::node* node = root.get(name);
  if (node && !node->is_table()) throw ConfigError(name, "expected a [section]");
  return Section(node ? node->as_table() : nullptr, name, std::move(allowed));
}

MagnetSpec read_magnet(const Section& s) {
  const double b0 = s.non_negative("b0_tesla");
  const double length = s.positive("length_m");
  return MagnetSpec::from_lab(b0, length);
}

ExperimentConfig build(const toml::table& root) {
  for (const auto& [key, node] : root) {
    const std::string k(key.str());
    if (!kSections.contains(k)) throw ConfigError(k, "unknown section");
  }

  ExperimentConfig cfg;

  const auto exp = section(root, "experiment", {"id", "omega_ev", "wavelength_m", "confidence_level"});
  if (!exp.present()) throw ConfigError("experiment", "missing required section");
  cfg.id = exp.text("id");
  if (cfg.id.empty()) throw ConfigError(exp.key("id"), "must not be empty");
  const bool has_omega = exp.has("omega_ev");
  const bool has_wavelength = exp.has("wavelength_m");
  if (has_omega == has_wavelength) {
    throw ConfigError(exp.key("omega_ev"), "exactly one of experiment.omega_ev and experiment.wavelength_m is required");
  }
  if (has_omega) {
    cfg.omega = exp.positive("omega_ev");
  } else {
    cfg.wavelength_m = exp.positive("wavelength_m");
    cfg.omega = units::photon_energy_from_wavelength(*cfg.wavelength_m);
  }
  if (exp.has("confidence_level")) cfg.confidence_level = exp.open_unit("confidence_level");

  const auto gen = section(root, "generation_magnet", {"b0_tesla", "length_m"});
  if (!gen.present()) throw ConfigError("generation_magnet", "missing required section");
  cfg.generation_magnet = read_magnet(gen);
  const auto regen = section(root, "regeneration_magnet", {"b0_tesla", "length_m"});
  cfg.regeneration_magnet = regen.present() ? read_magnet(regen) : cfg.generation_magnet;

  if (const auto s = section(root, "path", {"l1_m", "l2_m"}); s.present()) {
    cfg.path = OpticalPath::from_lab(s.positive("l1_m"), s.positive("l2_m"));
  }

  if (const auto s = section(root, "detector", {"eta_det", "dark_per_gate", "gate_ns"}); s.present()) {
    DetectorSpec d;
    d.eta_det = s.open_unit("eta_det");
    d.dark_per_gate = s.non_negative("dark_per_gate");
    if (!(d.dark_per_gate < 1.0)) throw ConfigError(s.key("dark_per_gate"), "must lie in [0, 1)");
    d.gate_ns = s.positive("gate_ns");
    cfg.detector = d;
  }

  if (const auto s = section(root, "tally", {"pulses_total", "pulses_with_field", "photons_per_pulse", "eta_coupling",
                                             "extra_loss"});
      s.present()) {
    CampaignTally t;
    t.pulses_total = s.integer("pulses_total");
    if (t.pulses_total < 0) throw ConfigError(s.key("pulses_total"), "must be non-negative");
    t.pulses_with_field = s.integer("pulses_with_field");
    if (t.pulses_with_field < 0 || t.pulses_with_field > t.pulses_total) {
      throw ConfigError(s.key("pulses_with_field"), "must lie in [0, tally.pulses_total]");
    }
    t.photons_per_pulse = s.positive("photons_per_pulse");
    t.eta_coupling = s.half_open_unit("eta_coupling");
    t.extra_loss = s.has("extra_loss") ? s.half_open_unit("extra_loss") : 1.0;
    cfg.tally = t;
  }

  if (const auto s = section(root, "cavity", {"length_m", "finesse"}); s.present()) {
    cfg.cavity = CavitySpec{s.positive("length_m"), s.positive("finesse")};
  }

  if (const auto s = section(root, "ellipticity", {"psi_limit"}); s.present()) {
    cfg.psi_limit = s.positive("psi_limit");
  }

  if (const auto s = section(root, "grid", {"min_mass_ev", "max_mass_ev", "points", "spacing"}); s.present()) {
    MassGrid g;
    g.min_mass = s.positive("min_mass_ev");
    g.max_mass = s.positive("max_mass_ev");
    if (!(g.max_mass > g.min_mass)) throw ConfigError(s.key("max_mass_ev"), "must exceed grid.min_mass_ev");
    const auto points = s.has("points") ? s.integer("points") : std::int64_t{2000};
    if (points < 2) throw ConfigError(s.key("points"), "must be at least 2");
    g.points = static_cast<std::size_t>(points);
    const std::string spacing = s.has("spacing") ? s.text("spacing") : "log";
    if (spacing == "log") {
      g.spacing = MassGrid::Spacing::Logarithmic;
    } else if (spacing == "linear") {
      g.spacing = MassGrid::Spacing::Linear;
    } else {
      throw ConfigError(s.key("spacing"), "must be \"log\" or \"linear\"");
    }
    cfg.grid = g;
  }

  return cfg;
}

}  // namespace

double ExperimentConfig::require_confidence_level() const {
  if (!confidence_level) throw ConfigError("experiment.confidence_level", "missing required key");
  return *confidence_level;
}

const OpticalPath& ExperimentConfig::require_path() const {
  if (!path) throw ConfigError("path", "missing required section");
  return *path;
}

const DetectorSpec& ExperimentConfig::require_detector() const {
  if (!detector) throw ConfigError("detector", "missing required section");
  return *detector;
}

const CampaignTally& ExperimentConfig::require_tally() const {
  if (!tally) throw ConfigError("tally", "missing required section");
  return *tally;
}

const CavitySpec& ExperimentConfig::require_cavity() const {
  if (!cavity) throw ConfigError("cavity", "missing required section");
  return *cavity;
}

double ExperimentConfig::require_psi_limit() const {
  if (!psi_limit) throw ConfigError("ellipticity.psi_limit", "missing required key");
  return *psi_limit;
}

ExperimentConfig parse_config(std::string_view text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << source << ":" << e.source().begin.line << ":" << e.source().begin.column << ": " << e.description();
    throw ConfigError("", msg.str());
  }
  return build(root);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace lsw
