#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "npi/correlations.hpp"
#include "npi/countsim.hpp"
#include "npi/optics.hpp"
#include "npi/states.hpp"

namespace npi::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// {"basis": "HH,HV,VH,VV", "rho": 4x4 of [re, im], "label": ...}
Json to_json(const states::PolarizationState& state);
states::PolarizationState state_from_json(const Json& j);

/// Sixteen channel keys in Alice-major order (HA0HB0, HA0VB0, HA0HB1, ...),
/// then "kind", optional "singles" (HA0 ... VB1) and optional "variance".
Json to_json(const optics::CoincidenceTable& table);
optics::CoincidenceTable table_from_json(const Json& j);

/// Count table keys plus "duration_s", "accidental_corrected", "normalized".
Json to_json(const countsim::CountsRecord& record);
countsim::CountsRecord counts_from_json(const Json& j);

/// Sixteen channel factors, optional "variance", and "source_tag".
Json to_json(const countsim::CalibrationRecord& calibration);
countsim::CalibrationRecord calibration_from_json(const Json& j);

Json to_json(const countsim::ExperimentConfig& config);
Json to_json(const optics::InterferometerConfig& config);
Json to_json(const correlations::AnalysisReport& report);

/// CSV with header "detector,timestamp_ns", detector ids 0-7.
void write_timestamps_csv(std::ostream& out, const countsim::TimestampStream& stream);
/// Throws FormatError on a malformed file and UnsortedStream when timestamps
/// decrease. `duration_s` <= 0 infers the duration from the last timestamp.
countsim::TimestampStream read_timestamps_csv(std::istream& in, double duration_s = 0.0);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string_view to_string(optics::Variant variant);
std::string_view to_string(correlations::Configuration configuration);
std::string_view to_string(correlations::Verdict verdict);
std::string_view to_string(correlations::Bound bound);

}  // namespace npi::io
