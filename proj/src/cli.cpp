#include "lsw/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "lsw/campaign.hpp"
#include "lsw/config.hpp"
#include "lsw/errors.hpp"
#include "lsw/format.hpp"
#include "lsw/io.hpp"
#include "lsw/kernels.hpp"
#include "lsw/limits.hpp"
#include "lsw/statistics.hpp"

namespace lsw::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundOptions {
  std::optional<double> p_upper;
  std::optional<double> psi_limit;
  std::optional<double> confidence;
  std::string pulses;  // "with_field", "all" or empty for the hypothesis default
};

struct ResolvedBound {
  double value = 0.0;
  std::vector<std::string> notes;
};

void add_bound_options(CLI::App* cmd, BoundOptions& opts) {
  cmd->add_option("--p-upper", opts.p_upper, "Upper regeneration probability (default: derived from config)");
  cmd->add_option("--psi-limit", opts.psi_limit, "Ellipticity bound in radians (default: ellipticity.psi_limit)");
  cmd->add_option("--confidence", opts.confidence, "Override experiment.confidence_level when deriving p_upper");
  cmd->add_option("--pulses", opts.pulses, "Pulses entering N_eff (default: with_field for axion, all for paraphoton)")
      ->check(CLI::IsMember({"with_field", "all"}));
}

ResolvedBound resolve_probability(const ExperimentConfig& cfg, const BoundOptions& opts,
                                  PulseSelection default_selection) {
  if (opts.p_upper) {
    if (!std::isfinite(*opts.p_upper) || !(*opts.p_upper > 0.0 && *opts.p_upper < 1.0)) {
      throw UsageError("--p-upper must lie in (0, 1)");
    }
    return {*opts.p_upper, {"p_upper supplied on the command line"}};
  }
  PulseSelection selection = default_selection;
  if (!opts.pulses.empty()) selection = opts.pulses == "all" ? PulseSelection::All : PulseSelection::WithField;
  const double cl = opts.confidence ? *opts.confidence : cfg.require_confidence_level();
  const auto& detector = cfg.require_detector();
  const double missed = n_missed(cl, detector.eta_det);
  const double n_eff = effective_photons(cfg.require_tally(), selection);
  const double p = upper_probability(missed, n_eff);
  std::ostringstream note;
  note << "p_upper = n_missed / N_eff with CL = " << format_number(cl) << ", eta_det = "
       << format_number(detector.eta_det) << ", n_missed = " << format_number(missed)
       << ", N_eff = " << format_number(n_eff) << ", pulses = "
       << (selection == PulseSelection::All ? "all" : "with_field");
  return {p, {note.str()}};
}

ExclusionCurve build_curve(const std::string& hypothesis, const ExperimentConfig& cfg, const BoundOptions& opts) {
  ExclusionCurve curve;
  std::vector<std::string> notes;
  if (hypothesis == "axion") {
    auto bound = resolve_probability(cfg, opts, PulseSelection::WithField);
    curve = axion_limit_curve(bound.value, cfg.generation_magnet, cfg.regeneration_magnet, cfg.omega, cfg.grid);
    notes = std::move(bound.notes);
  } else if (hypothesis == "paraphoton") {
    auto bound = resolve_probability(cfg, opts, PulseSelection::All);
    curve = paraphoton_limit_curve(bound.value, cfg.require_path(), cfg.omega, cfg.grid);
    notes = std::move(bound.notes);
  } else {
    double psi = 0.0;
    if (opts.psi_limit) {
      if (!std::isfinite(*opts.psi_limit) || !(*opts.psi_limit > 0.0)) throw UsageError("--psi-limit must be positive");
      psi = *opts.psi_limit;
      notes.emplace_back("psi_limit supplied on the command line");
    } else {
      psi = cfg.require_psi_limit();
    }
    curve = ellipticity_limit_curve(psi, cfg.generation_magnet, cfg.require_cavity(), cfg.omega, cfg.grid);
  }
  curve.metadata.experiment_id = cfg.id;
  curve.metadata.notes.insert(curve.metadata.notes.end(), notes.begin(), notes.end());
  return curve;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  return file;
}

OutputFormat parse_format(const std::string& text) { return text == "json" ? OutputFormat::Json : OutputFormat::Csv; }

double require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw UsageError(std::string(flag) + " must be finite");
  return v;
}

// Validates --coupling for the given hypothesis: M finite and positive, chi finite and non-negative.
double require_coupling(const std::string& hypothesis, double coupling) {
  if (!std::isfinite(coupling)) throw UsageError("--coupling must be finite");
  if (hypothesis == "paraphoton") {
    if (coupling < 0.0) throw UsageError("--coupling (chi) must be non-negative");
  } else if (!(coupling > 0.0)) {
    throw UsageError("--coupling (M) must be positive");
  }
  return coupling;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon regeneration and ellipticity exclusion-limit workbench", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  std::string config_path;
  std::string hypothesis;
  double mass = 0.0;
  double coupling = 0.0;
  std::string out_path;
  std::string format = "csv";
  BoundOptions bound_opts;
  double band_min = 0.0;
  double band_max = 0.0;
  std::string convention = "envelope_best";
  std::uint64_t seed = 0;
  std::optional<double> finesse;
  std::optional<double> lifetime;
  std::optional<double> cavity_length;

  const auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Experiment config file (TOML)")->required();
  };
  const auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* prob = app.add_subcommand("prob", "Print the photon regeneration probability");
  add_config(prob);
  prob->add_option("hypothesis", hypothesis)->required()->check(CLI::IsMember({"axion", "paraphoton"}));
  prob->add_option("--mass", mass, "Particle mass, eV")->required();
  prob->add_option("--coupling", coupling, "M in eV (axion) or chi (paraphoton)")->required();

  auto* ellip = app.add_subcommand("ellipticity", "Print the axion-induced ellipticity (with cavity gain if configured)");
  add_config(ellip);
  ellip->add_option("--mass", mass, "Axion mass, eV")->required();
  ellip->add_option("--coupling", coupling, "Inverse coupling M, eV")->required();

  auto* nmiss = app.add_subcommand("nmissed", "Print the missed-photon bound and derived probabilities");
  add_config(nmiss);
  nmiss->add_option("--confidence", bound_opts.confidence, "Override experiment.confidence_level");

  auto* limit = app.add_subcommand("limit", "Write an exclusion curve");
  add_config(limit);
  limit->add_option("hypothesis", hypothesis)->required()->check(CLI::IsMember({"axion", "paraphoton", "ellipticity"}));
  limit->add_option("--out", out_path, "Output file")->required();
  add_format(limit);
  add_bound_options(limit, bound_opts);

  auto* band = app.add_subcommand("band", "Summarize an exclusion curve over a mass band");
  add_config(band);
  band->add_option("hypothesis", hypothesis, "axion, paraphoton or ellipticity (default paraphoton)")
      ->check(CLI::IsMember({"axion", "paraphoton", "ellipticity"}));
  band->add_option("--min", band_min, "Band lower mass, eV")->required();
  band->add_option("--max", band_max, "Band upper mass, eV")->required();
  band->add_option("--convention", convention, "envelope_best | worst_constrained | quantile:<q>");
  add_bound_options(band, bound_opts);

  std::string sim_hypothesis = "none";
  auto* sim = app.add_subcommand("simulate", "Monte Carlo campaign simulation");
  add_config(sim);
  sim->add_option("--seed", seed, "64-bit seed");
  sim->add_option("--out", out_path, "Output file")->required();
  add_format(sim);
  sim->add_option("--hypothesis", sim_hypothesis)->check(CLI::IsMember({"none", "axion", "paraphoton"}));
  auto* sim_mass = sim->add_option("--mass", mass, "Particle mass, eV");
  auto* sim_coupling = sim->add_option("--coupling", coupling, "M in eV (axion) or chi (paraphoton)");

  auto* cav = app.add_subcommand("cavity", "Convert between cavity finesse and photon lifetime");
  add_config(cav);
  auto* f_opt = cav->add_option("--finesse", finesse, "Finesse F");
  auto* t_opt = cav->add_option("--lifetime", lifetime, "Photon lifetime tau, s");
  f_opt->excludes(t_opt);
  cav->add_option("--length", cavity_length, "Cavity length in m (default: cavity.length_m)");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back(kToolName);
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    const ExperimentConfig cfg = load_config(config_path);

    if (prob->parsed()) {
      require_finite(mass, "--mass");
      require_coupling(hypothesis, coupling);
      double p = 0.0;
      if (hypothesis == "axion") {
        p = axion_regeneration_probability(cfg.generation_magnet, cfg.regeneration_magnet, AxionParams{mass, coupling},
                                           cfg.omega);
      } else {
        p = paraphoton_regeneration_probability(cfg.require_path(), ParaphotonParams{mass, coupling}, cfg.omega);
      }
      out << "probability = " << format_number(p) << '\n';
    } else if (ellip->parsed()) {
      require_finite(mass, "--mass");
      require_coupling("axion", coupling);
      const CavitySpec* cavity = cfg.cavity ? &*cfg.cavity : nullptr;
      const double psi = axion_ellipticity(cfg.generation_magnet, AxionParams{mass, coupling}, cfg.omega, cavity);
      out << "ellipticity_rad = " << format_number(psi) << '\n';
      out << "cavity_gain = " << format_number(cavity ? cavity->ellipticity_gain() : 1.0) << '\n';
    } else if (nmiss->parsed()) {
      const double cl = bound_opts.confidence ? *bound_opts.confidence : cfg.require_confidence_level();
      const double eta = cfg.require_detector().eta_det;
      const double n = n_missed(cl, eta);
      out << "confidence_level = " << format_number(cl) << '\n';
      out << "eta_det = " << format_number(eta) << '\n';
      out << "n_missed = " << std::fixed << std::setprecision(3) << n << std::defaultfloat << '\n';
      out << "n_missed_exact = " << format_number(n) << '\n';
      out << "integer_bound = " << n_missed_bound(cl, eta) << '\n';
      if (cfg.tally) {
        for (const auto selection : {PulseSelection::WithField, PulseSelection::All}) {
          const char* tag = selection == PulseSelection::All ? "all" : "with_field";
          const double n_eff = effective_photons(*cfg.tally, selection);
          out << "n_eff_" << tag << " = " << format_number(n_eff) << '\n';
          if (n_eff > 0.0) out << "p_upper_" << tag << " = " << format_number(upper_probability(n, n_eff)) << '\n';
        }
      }
    } else if (limit->parsed()) {
      const auto curve = build_curve(hypothesis, cfg, bound_opts);
      auto file = open_output(out_path);
      write_curve(file, curve, parse_format(format));
      if (!file.flush()) throw UsageError("failed writing '" + out_path + "'");
      out << "wrote " << curve.points.size() << " points (" << curve.constrained_count() << " constrained) to "
          << out_path << '\n';
    } else if (band->parsed()) {
      BandConvention conv;
      try {
        conv = BandConvention::parse(convention);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const auto curve = build_curve(hypothesis.empty() ? "paraphoton" : hypothesis, cfg, bound_opts);
      const auto summary = band_summary(curve, band_min, band_max, conv);
      out << "bound = " << format_number(summary.bound) << '\n';
      out << "convention = " << summary.convention << '\n';
      out << "constrained_points = " << summary.constrained_points << '\n';
      out << curve.metadata.bound_input << " = " << format_number(curve.metadata.bound_value) << '\n';
    } else if (sim->parsed()) {
      CampaignConfig sc;
      sc.detector = cfg.require_detector();
      sc.tally = cfg.require_tally();
      sc.generation_magnet = cfg.generation_magnet;
      sc.regeneration_magnet = cfg.regeneration_magnet;
      sc.path = cfg.path;
      sc.omega = cfg.omega;
      sc.seed = seed;
      MetadataLines meta = {{"experiment", cfg.id}, {"hypothesis", sim_hypothesis}};
      if (sim_hypothesis != "none") {
        if (sim_mass->count() == 0 || sim_coupling->count() == 0) {
          throw UsageError("--hypothesis " + sim_hypothesis + " requires --mass and --coupling");
        }
        require_finite(mass, "--mass");
        require_coupling(sim_hypothesis, coupling);
        if (sim_hypothesis == "axion") {
          sc.hypothesis = AxionParams{mass, coupling};
        } else {
          cfg.require_path();
          sc.hypothesis = ParaphotonParams{mass, coupling};
        }
        meta.emplace_back("mass_ev", format_number(mass));
        meta.emplace_back("coupling", format_number(coupling));
      }
      const auto record = simulate_campaign(sc);
      auto file = open_output(out_path);
      write_record(file, record, meta, parse_format(format));
      if (!file.flush()) throw UsageError("failed writing '" + out_path + "'");
      out << "signal_counts = " << record.totals.signal_counts << '\n';
      out << "dark_counts = " << record.totals.dark_counts << '\n';
      out << "expected_detections = " << format_number(record.totals.expected_detections) << '\n';
    } else if (cav->parsed()) {
      if (!finesse && !lifetime) throw UsageError("cavity requires --finesse or --lifetime");
      const double length = cavity_length ? *cavity_length : cfg.require_cavity().length_m;
      if (finesse) {
        out << "lifetime_s = " << format_number(lifetime_from_finesse(CavitySpec{length, *finesse})) << '\n';
      } else {
        out << "finesse = " << format_number(finesse_from_lifetime(*lifetime, length)) << '\n';
      }
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternalError;
  }
  return kSuccess;
}

}  // namespace lsw::cli
