#include "npi/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "npi/errors.hpp"

namespace npi::io {
namespace {

using optics::CoincidenceTable;
using optics::TableKind;

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

Json estimate_json(const correlations::Estimate& e) { return Json{{"value", e.value}, {"sigma", e.sigma}}; }

void put_channels(Json& j, const std::array<double, kChannelCount>& values) {
  for (std::size_t c = 0; c < kChannelCount; ++c) j[channel_name(c)] = values[c];
}

std::array<double, kChannelCount> get_channels(const Json& j) {
  std::array<double, kChannelCount> values{};
  for (std::size_t c = 0; c < kChannelCount; ++c) values[c] = j.at(channel_name(c)).get<double>();
  return values;
}

Json detectors_json(const std::array<double, kDetectorCount>& values) {
  Json j = Json::object();
  for (std::size_t d = 0; d < kDetectorCount; ++d) j[detector_name(d)] = values[d];
  return j;
}

std::array<double, kDetectorCount> get_detectors(const Json& j) {
  std::array<double, kDetectorCount> values{};
  for (std::size_t d = 0; d < kDetectorCount; ++d) values[d] = j.at(detector_name(d)).get<double>();
  return values;
}

Json table_fields(const CoincidenceTable& table) {
  Json j = Json::object();
  put_channels(j, table.values);
  j["kind"] = table.kind == TableKind::Probability ? "probability" : "count";
  if (table.singles) j["singles"] = detectors_json(*table.singles);
  if (table.variances) {
    Json v = Json::object();
    put_channels(v, *table.variances);
    j["variance"] = v;
  }
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

Json to_json(const states::PolarizationState& state) {
  Json rho = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(Json::array({state.rho()(r, c).real(), state.rho()(r, c).imag()}));
    rho.push_back(row);
  }
  return Json{{"basis", "HH,HV,VH,VV"}, {"rho", rho}, {"label", state.label()}};
}

states::PolarizationState state_from_json(const Json& j) {
  return guarded("state", [&] {
    if (j.at("basis").get<std::string>() != "HH,HV,VH,VV") throw FormatError("unsupported basis");
    const Json& rows = j.at("rho");
    if (!rows.is_array() || rows.size() != 4) throw FormatError("rho must be 4x4");
    Matrix4c rho;
    for (int r = 0; r < 4; ++r) {
      if (!rows[r].is_array() || rows[r].size() != 4) throw FormatError("rho must be 4x4");
      for (int c = 0; c < 4; ++c) {
        const Json& z = rows[r][c];
        if (!z.is_array() || z.size() != 2) throw FormatError("complex entries are [re, im] pairs");
        rho(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    return states::PolarizationState(rho, j.value("label", std::string{}));
  });
}

Json to_json(const CoincidenceTable& table) { return table_fields(table); }

CoincidenceTable table_from_json(const Json& j) {
  return guarded("coincidence table", [&] {
    CoincidenceTable table;
    table.values = get_channels(j);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "probability") {
      table.kind = TableKind::Probability;
    } else if (kind == "count") {
      table.kind = TableKind::Count;
    } else {
      throw FormatError("unknown table kind '" + kind + "'");
    }
    if (j.contains("singles")) table.singles = get_detectors(j.at("singles"));
    if (j.contains("variance")) table.variances = get_channels(j.at("variance"));
    optics::validate(table);
    return table;
  });
}

Json to_json(const countsim::CountsRecord& record) {
  Json j = table_fields(record.coincidences);
  j["duration_s"] = record.duration_s;
  j["accidental_corrected"] = record.accidental_corrected;
  j["normalized"] = record.normalized;
  return j;
}

countsim::CountsRecord counts_from_json(const Json& j) {
  return guarded("counts", [&] {
    countsim::CountsRecord record;
    record.coincidences = table_from_json(j);
    if (record.coincidences.kind != TableKind::Count) throw FormatError("counts file must have kind 'count'");
    record.duration_s = j.at("duration_s").get<double>();
    if (!(record.duration_s > 0.0)) throw FormatError("duration_s must be > 0");
    record.accidental_corrected = j.at("accidental_corrected").get<bool>();
    record.normalized = j.at("normalized").get<bool>();
    if (record.normalized && !record.accidental_corrected) {
      throw FormatError("normalized counts must also be accidental-corrected");
    }
    return record;
  });
}

Json to_json(const countsim::CalibrationRecord& calibration) {
  Json j = Json::object();
  put_channels(j, calibration.relative_efficiency);
  if (calibration.variance) {
    Json v = Json::object();
    put_channels(v, *calibration.variance);
    j["variance"] = v;
  }
  j["source_tag"] = calibration.source_tag;
  return j;
}

countsim::CalibrationRecord calibration_from_json(const Json& j) {
  return guarded("calibration", [&] {
    countsim::CalibrationRecord cal;
    cal.relative_efficiency = get_channels(j);
    if (j.contains("variance")) cal.variance = get_channels(j.at("variance"));
    cal.source_tag = j.value("source_tag", std::string{});
    return cal;
  });
}

Json to_json(const countsim::ExperimentConfig& config) {
  return Json{
      {"pair_rate", config.pair_rate},
      {"duration_s", config.duration_s},
      {"efficiency", config.efficiency},
      {"dark_rate", config.dark_rate},
      {"bin_width_ns", config.bin_width_ns},
      {"rng_seed", config.rng_seed},
  };
}

Json to_json(const optics::InterferometerConfig& config) {
  return Json{
      {"variant", to_string(config.variant)},
      {"alpha", config.alpha},
      {"beta", config.beta},
      {"pre_phase", config.pre_phase},
      {"pre_phase_party", config.pre_phase_party == Party::Alice ? "alice" : "bob"},
  };
}

Json to_json(const correlations::AnalysisReport& report) {
  const auto& set = report.correlations;
  Json j = Json::object();
  j["configuration"] = to_string(set.configuration);
  j["variant"] = to_string(set.variant);
  j["correlations"] = Json{{"E_HH", estimate_json(set.hh)},
                           {"E_VV", estimate_json(set.vv)},
                           {"E_HV", estimate_json(set.hv)},
                           {"E_VH", estimate_json(set.vh)}};
  if (report.antidiagonals) {
    const auto& a = *report.antidiagonals;
    j["antidiagonals"] = Json{{"f_plus", estimate_json(a.f_plus)},
                              {"d_plus", estimate_json(a.d_plus)},
                              {"f_minus_im", estimate_json(a.f_minus_im)},
                              {"d_minus_im", estimate_json(a.d_minus_im)}};
  }
  if (report.verdict) {
    const auto& v = *report.verdict;
    j["entanglement"] = Json{{"verdict", to_string(v.entangled)},
                             {"z_score", v.z_score},
                             {"which_bound", to_string(v.which_bound)},
                             {"f_plus", estimate_json(v.f_plus)},
                             {"d_plus", estimate_json(v.d_plus)}};
  }
  if (report.identification) {
    const auto& id = *report.identification;
    j["bell_identification"] = Json{
        {"best", id.best ? Json(std::string(states::to_string(*id.best))) : Json(nullptr)},
        {"nearest", states::to_string(id.nearest)},
        {"distance", id.distance},
    };
  }
  if (report.fidelity) {
    const auto& f = *report.fidelity;
    j["fidelity_bounds"] = Json{{"psi+", f.psi_plus}, {"psi-", f.psi_minus}, {"phi+", f.phi_plus}, {"phi-", f.phi_minus}};
  }
  if (report.bell_parameters) {
    j["bell_parameters"] = Json{{"S_psi", estimate_json(report.bell_parameters->s_psi)},
                                {"S_phi", estimate_json(report.bell_parameters->s_phi)}};
  }
  if (report.chsh) {
    auto verdict = [](const correlations::ParameterVerdict& v) {
      return Json{{"violates_local_bound", v.violates_local_bound},
                  {"exceeds_separable_bound", v.exceeds_separable_bound},
                  {"z_local", v.z_local},
                  {"z_separable", v.z_separable}};
    };
    j["chsh_verdict"] = Json{{"S_psi", verdict(report.chsh->psi)}, {"S_phi", verdict(report.chsh->phi)}};
  }
  return j;
}

void write_timestamps_csv(std::ostream& out, const countsim::TimestampStream& stream) {
  out << "detector,timestamp_ns\n";
  for (const auto& e : stream.events) out << static_cast<unsigned>(e.detector) << ',' << e.timestamp_ns << '\n';
}

countsim::TimestampStream read_timestamps_csv(std::istream& in, double duration_s) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty timestamp file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "detector,timestamp_ns") throw FormatError("expected header 'detector,timestamp_ns'");

  countsim::TimestampStream stream;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    unsigned detector = 0;
    std::uint64_t ts = 0;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    bool ok = comma != std::string::npos;
    if (ok) {
      auto r1 = std::from_chars(begin, begin + comma, detector);
      auto r2 = std::from_chars(begin + comma + 1, end, ts);
      ok = r1.ec == std::errc{} && r1.ptr == begin + comma && r2.ec == std::errc{} && r2.ptr == end;
    }
    if (!ok || detector >= kDetectorCount) {
      throw FormatError("bad timestamp record on line " + std::to_string(line_no));
    }
    if (!stream.events.empty() && ts < stream.events.back().timestamp_ns) {
      throw UnsortedStream("timestamps decrease on line " + std::to_string(line_no));
    }
    stream.events.push_back({static_cast<std::uint8_t>(detector), ts});
  }
  if (duration_s > 0.0) {
    stream.duration_s = duration_s;
  } else {
    const double last = stream.events.empty() ? 0.0 : static_cast<double>(stream.events.back().timestamp_ns);
    stream.duration_s = (last + 1.0) * 1e-9;
  }
  return stream;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

std::string_view to_string(optics::Variant variant) {
  return variant == optics::Variant::Sagnac ? "sagnac" : "mz";
}

std::string_view to_string(correlations::Configuration configuration) {
  return configuration == correlations::Configuration::StandardPi4 ? "standard_pi4" : "chsh_pi4";
}

std::string_view to_string(correlations::Verdict verdict) {
  switch (verdict) {
    case correlations::Verdict::Detected: return "detected";
    case correlations::Verdict::NotDetected: return "not_detected";
    case correlations::Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(correlations::Bound bound) {
  switch (bound) {
    case correlations::Bound::FBound: return "f_bound";
    case correlations::Bound::DBound: return "d_bound";
    case correlations::Bound::None: return "none";
  }
  return "?";
}

}  // namespace npi::io
