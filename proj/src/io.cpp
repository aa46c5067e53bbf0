#include "lsw/io.hpp"

#include <ostream>

#include <json.hpp>

#include "lsw/format.hpp"

namespace lsw {

namespace {

void write_metadata_comments(std::ostream& out, const MetadataLines& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << ": " << value << '\n';
}

nlohmann::ordered_json metadata_json(const MetadataLines& metadata) {
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) {
    if (key == "note") {
      meta["notes"].push_back(value);
    } else {
      meta[key] = value;
    }
  }
  return meta;
}

}  // namespace

MetadataLines curve_metadata(const ExclusionCurve& curve) {
  const auto& m = curve.metadata;
  MetadataLines lines = {
      {"tool", std::string(kToolName) + " " + kToolVersion},
      {"experiment", m.experiment_id},
      {"hypothesis", m.hypothesis},
      {"coupling", curve.kind == CouplingKind::InverseCoupling ? "M_ev" : "chi"},
      {m.bound_input, format_number(m.bound_value)},
      {"points", std::to_string(curve.points.size())},
      {"constrained_points", std::to_string(curve.constrained_count())},
  };
  for (const auto& note : m.notes) lines.emplace_back("note", note);
  return lines;
}

void write_curve(std::ostream& out, const ExclusionCurve& curve, OutputFormat format) {
  const auto metadata = curve_metadata(curve);
  if (format == OutputFormat::Csv) {
    write_metadata_comments(out, metadata);
    out << "mass_ev,bound,constrained\n";
    for (const auto& p : curve.points) {
      out << format_number(p.mass) << ',';
      if (p.bound) out << format_number(*p.bound);
      out << ',' << (p.constrained() ? 1 : 0) << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_json(metadata);
  auto& rows = doc["points"] = nlohmann::ordered_json::array();
  for (const auto& p : curve.points) {
    nlohmann::ordered_json row;
    row["mass_ev"] = p.mass;
    row["bound"] = p.bound ? nlohmann::ordered_json(*p.bound) : nlohmann::ordered_json(nullptr);
    row["constrained"] = p.constrained();
    rows.push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void write_record(std::ostream& out, const CampaignRecord& record, const MetadataLines& metadata,
                  OutputFormat format) {
  const auto& t = record.totals;
  MetadataLines meta = {{"tool", std::string(kToolName) + " " + kToolVersion}, {"seed", std::to_string(record.seed)}};
  meta.insert(meta.end(), metadata.begin(), metadata.end());
  meta.emplace_back("pulses", std::to_string(t.pulses));
  meta.emplace_back("field_on_pulses", std::to_string(t.field_on_pulses));
  meta.emplace_back("expected_detections", format_number(t.expected_detections));
  meta.emplace_back("expected_dark_counts", format_number(t.expected_dark_counts));
  meta.emplace_back("signal_counts", std::to_string(t.signal_counts));
  meta.emplace_back("dark_counts", std::to_string(t.dark_counts));

  if (format == OutputFormat::Csv) {
    write_metadata_comments(out, meta);
    out << "pulse,field_on,lambda_expected,signal_counts,dark_counts\n";
    for (const auto& p : record.pulses) {
      out << p.pulse << ',' << (p.field_on ? 1 : 0) << ',' << format_number(p.lambda_expected) << ','
          << p.signal_counts << ',' << p.dark_counts << '\n';
    }
    return;
  }
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_json(meta);
  auto& rows = doc["pulses"] = nlohmann::ordered_json::array();
  for (const auto& p : record.pulses) {
    rows.push_back({{"pulse", p.pulse},
                    {"field_on", p.field_on},
                    {"lambda_expected", p.lambda_expected},
                    {"signal_counts", p.signal_counts},
                    {"dark_counts", p.dark_counts}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace lsw
