#pragma once

// Output schemas shared with downstream consumers (plotting, spreadsheets).
//
// Curve CSV:
//   # key: value            metadata lines
//   mass_ev,bound,constrained
//   1e-05,891234567890123,1
//   0.00284,,0               unconstrained rows: empty bound, flag 0
//
// Campaign CSV:
//   # key: value
//   pulse,field_on,lambda_expected,signal_counts,dark_counts
//
// Numbers use the shortest round-trip representation; lines end in '\n'.
// JSON output carries the same content.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lsw/campaign.hpp"
#include "lsw/limits.hpp"

namespace lsw {

inline constexpr const char* kToolName = "lsw-bench";
inline constexpr const char* kToolVersion = "1.0.0";

using MetadataLines = std::vector<std::pair<std::string, std::string>>;

enum class OutputFormat { Csv, Json };

MetadataLines curve_metadata(const ExclusionCurve& curve);

void write_curve(std::ostream& out, const ExclusionCurve& curve, OutputFormat format);
void write_record(std::ostream& out, const CampaignRecord& record, const MetadataLines& metadata,
                  OutputFormat format);

}  // namespace lsw
