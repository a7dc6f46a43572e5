#include "npi/countsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "npi/errors.hpp"

namespace npi::countsim {
namespace {

using optics::CoincidenceTable;
using optics::TableKind;

std::uint64_t draw_poisson(std::mt19937_64& rng, double mean) {
  if (!(mean > 0.0)) return 0;
  return static_cast<std::uint64_t>(std::poisson_distribution<std::int64_t>(mean)(rng));
}

constexpr std::size_t alice_detector(std::size_t channel) { return channel / 4; }
constexpr std::size_t bob_detector(std::size_t channel) { return 4 + channel % 4; }

void require_probabilities(const CoincidenceTable& table) {
  if (table.kind != TableKind::Probability) throw ConfigError("expected a probability table");
  optics::validate(table);
}

std::array<double, kChannelCount> variances_of(const CoincidenceTable& table) {
  std::array<double, kChannelCount> out{};
  for (std::size_t c = 0; c < kChannelCount; ++c) out[c] = table.variance(c);
  return out;
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (!std::isfinite(config.pair_rate) || config.pair_rate < 0.0) throw ConfigError("pair_rate must be >= 0");
  if (!std::isfinite(config.duration_s) || config.duration_s <= 0.0) throw ConfigError("duration must be > 0");
  for (double eta : config.efficiency) {
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("efficiencies must lie in (0, 1]");
  }
  for (double dark : config.dark_rate) {
    if (!std::isfinite(dark) || dark < 0.0) throw ConfigError("dark rates must be >= 0");
  }
  if (config.bin_width_ns < 1) throw ConfigError("bin width must be >= 1 ns");
}

ExperimentConfig reference_experiment() {
  ExperimentConfig config;
  config.pair_rate = 1.4e6;
  config.duration_s = 100.0;
  config.efficiency.fill(0.01);
  config.dark_rate.fill(500.0);
  config.bin_width_ns = 5;
  return config;
}

CountsRecord simulate_counts(const CoincidenceTable& probabilities, const ExperimentConfig& config) {
  require_probabilities(probabilities);
  validate(config);

  std::mt19937_64 rng(config.rng_seed);
  const double emitted = config.pair_rate * config.duration_s;
  const auto& eta = config.efficiency;

  std::array<double, kChannelCount> pairs{};
  std::array<double, kDetectorCount> singles{};
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const std::size_t a = alice_detector(c);
    const std::size_t b = bob_detector(c);
    const double mean = emitted * probabilities.values[c];
    const auto both = draw_poisson(rng, mean * eta[a] * eta[b]);
    const auto alice_only = draw_poisson(rng, mean * eta[a] * (1.0 - eta[b]));
    const auto bob_only = draw_poisson(rng, mean * (1.0 - eta[a]) * eta[b]);
    pairs[c] = static_cast<double>(both);
    singles[a] += static_cast<double>(both + alice_only);
    singles[b] += static_cast<double>(both + bob_only);
  }
  for (std::size_t d = 0; d < kDetectorCount; ++d) {
    singles[d] += static_cast<double>(draw_poisson(rng, config.dark_rate[d] * config.duration_s));
  }

  CountsRecord record;
  record.duration_s = config.duration_s;
  record.coincidences.kind = TableKind::Count;
  record.coincidences.singles = singles;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const std::size_t a = alice_detector(c);
    const std::size_t b = bob_detector(c);
    const double accidentals = static_cast<double>(draw_poisson(
        rng, accidental_estimate(singles[a], singles[b], config.bin_width_ns, config.duration_s)));
    record.coincidences.values[c] = std::min({pairs[c] + accidentals, singles[a], singles[b]});
  }
  return record;
}

GeneratedStream generate_timestamps_with_truth(const CoincidenceTable& probabilities,
                                               const ExperimentConfig& config) {
  require_probabilities(probabilities);
  validate(config);

  std::mt19937_64 rng(config.rng_seed);
  const auto& eta = config.efficiency;
  GeneratedStream out;
  out.stream.duration_s = config.duration_s;
  auto& events = out.stream.events;
  auto& truth = out.truth;

  // Only emissions with at least one detected photon produce events; thin the
  // pair process accordingly.
  std::array<double, kChannelCount> weight{};
  double detectable = 0.0;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const double q = 1.0 - (1.0 - eta[alice_detector(c)]) * (1.0 - eta[bob_detector(c)]);
    weight[c] = probabilities.values[c] * q;
    detectable += weight[c];
  }
  const double event_rate = config.pair_rate * detectable;
  if (event_rate > 0.0) {
    std::exponential_distribution<double> gap(event_rate);
    std::discrete_distribution<std::size_t> channel(weight.begin(), weight.end());
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double t = 0.0;
    while (true) {
      t += gap(rng);
      if (t >= config.duration_s) break;
      const std::size_t c = channel(rng);
      const std::size_t a = alice_detector(c);
      const std::size_t b = bob_detector(c);
      const double q = 1.0 - (1.0 - eta[a]) * (1.0 - eta[b]);
      const double u = uniform(rng) * q;
      const auto ts = static_cast<std::uint64_t>(std::floor(t * 1e9));
      const bool alice_hit = u < eta[a];
      const bool bob_hit = u < eta[a] * eta[b] || u >= eta[a];
      if (alice_hit) events.push_back({static_cast<std::uint8_t>(a), ts});
      if (bob_hit) events.push_back({static_cast<std::uint8_t>(b), ts});
      if (alice_hit && bob_hit) ++truth.pair_coincidences[c];
      ++truth.detected_pair_events;
    }
  }

  for (std::size_t d = 0; d < kDetectorCount; ++d) {
    const auto n = draw_poisson(rng, config.dark_rate[d] * config.duration_s);
    std::uniform_real_distribution<double> when(0.0, config.duration_s);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto ts = static_cast<std::uint64_t>(std::floor(when(rng) * 1e9));
      events.push_back({static_cast<std::uint8_t>(d), ts});
    }
  }

  std::unordered_map<std::uint64_t, std::array<std::uint64_t, kDetectorCount>> occupancy;
  for (const auto& e : events) {
    ++truth.singles[e.detector];
    ++occupancy[e.timestamp_ns / config.bin_width_ns][e.detector];
  }
  for (const auto& [bin, hits] : occupancy) {
    for (std::size_t c = 0; c < kChannelCount; ++c) {
      truth.binned_coincidences[c] += hits[alice_detector(c)] * hits[bob_detector(c)];
    }
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const DetectionEvent& x, const DetectionEvent& y) { return x.timestamp_ns < y.timestamp_ns; });
  return out;
}

TimestampStream generate_timestamps(const CoincidenceTable& probabilities, const ExperimentConfig& config) {
  return generate_timestamps_with_truth(probabilities, config).stream;
}

CountsRecord bin_and_count(const TimestampStream& stream, std::uint64_t bin_width_ns) {
  if (bin_width_ns < 1) throw ConfigError("bin width must be >= 1 ns");

  CountsRecord record;
  record.duration_s = stream.duration_s;
  record.coincidences.kind = TableKind::Count;
  std::array<double, kDetectorCount> singles{};

  const auto& events = stream.events;
  const auto decrease = std::adjacent_find(events.begin(), events.end(), [](const auto& x, const auto& y) {
    return y.timestamp_ns < x.timestamp_ns;
  });
  if (decrease != events.end()) {
    throw UnsortedStream("timestamps decrease after event " + std::to_string(decrease - events.begin()));
  }

  std::size_t begin = 0;
  while (begin < events.size()) {
    const std::uint64_t bin = events[begin].timestamp_ns / bin_width_ns;
    std::array<std::uint64_t, kDetectorCount> hits{};
    std::size_t end = begin;
    for (; end < events.size() && events[end].timestamp_ns / bin_width_ns == bin; ++end) {
      if (events[end].detector >= kDetectorCount) throw FormatError("detector id out of range");
      ++hits[events[end].detector];
    }
    for (std::size_t a = 0; a < 4; ++a) {
      singles[a] += static_cast<double>(hits[a]);
      singles[4 + a] += static_cast<double>(hits[4 + a]);
      for (std::size_t b = 4; b < kDetectorCount; ++b) {
        record.coincidences.values[channel_from_detectors(a, b)] += static_cast<double>(hits[a] * hits[b]);
      }
    }
    begin = end;
  }
  record.coincidences.singles = singles;
  return record;
}

double accidental_estimate(double singles_a, double singles_b, std::uint64_t bin_width_ns, double duration_s) {
  if (!(duration_s > 0.0)) throw ConfigError("duration must be > 0");
  return singles_a * singles_b * static_cast<double>(bin_width_ns) * 1e-9 / duration_s;
}

CountsRecord accidental_correction(const CountsRecord& record, std::uint64_t bin_width_ns) {
  if (record.accidental_corrected) throw AlreadyCorrected("accidentals were already subtracted");
  if (record.normalized) throw PipelineOrderError("correct accidentals before normalizing");
  optics::validate(record.coincidences);

  CountsRecord out = record;
  const auto& s = record.singles();
  const double tau_over_t = static_cast<double>(bin_width_ns) * 1e-9 / record.duration_s;
  std::array<double, kChannelCount> variance = variances_of(record.coincidences);
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const double sa = s[alice_detector(c)];
    const double sb = s[bob_detector(c)];
    const double estimate = accidental_estimate(sa, sb, bin_width_ns, record.duration_s);
    out.coincidences.values[c] = std::max(0.0, record.coincidences.values[c] - estimate);
    // Poisson singles propagated through S_a S_b tau / T.
    variance[c] += tau_over_t * tau_over_t * (sb * sb * sa + sa * sa * sb);
  }
  out.coincidences.variances = variance;
  out.accidental_corrected = true;
  return out;
}

CalibrationRecord calibrate(const CountsRecord& record, std::string source_tag) {
  if (!record.accidental_corrected) throw PipelineOrderError("calibration needs accidental-corrected counts");
  if (record.normalized) throw PipelineOrderError("calibration needs un-normalized counts");
  const auto& table = record.coincidences;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (!(table.values[c] > 0.0)) throw EmptyChannel("channel " + channel_name(c) + " has no counts");
  }
  const double total = table.total();
  CalibrationRecord cal;
  cal.source_tag = std::move(source_tag);
  std::array<double, kChannelCount> variance{};
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const double factor = table.values[c] * kChannelCount / total;
    cal.relative_efficiency[c] = factor;
    variance[c] = factor * factor * table.variance(c) / (table.values[c] * table.values[c]);
  }
  cal.variance = variance;
  return cal;
}

CountsRecord normalize(const CountsRecord& record, const CalibrationRecord& calibration) {
  if (!record.accidental_corrected) throw PipelineOrderError("correct accidentals before normalizing");
  if (record.normalized) throw PipelineOrderError("counts are already normalized");
  for (double f : calibration.relative_efficiency) {
    if (!std::isfinite(f) || f <= 0.0) throw InvalidCalibration("factors must be positive and finite");
  }

  CountsRecord out = record;
  std::array<double, kChannelCount> variance = variances_of(record.coincidences);
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const double f = calibration.relative_efficiency[c];
    const double v = record.coincidences.values[c];
    const double factor_variance = calibration.variance ? (*calibration.variance)[c] : 0.0;
    out.coincidences.values[c] = v / f;
    variance[c] = variance[c] / (f * f) + v * v * factor_variance / (f * f * f * f);
  }
  out.coincidences.variances = variance;
  out.normalized = true;
  return out;
}

const CoincidenceTable& analysis_table(const CountsRecord& record) {
  if (!record.accidental_corrected) throw PipelineOrderError("analysis needs accidental-corrected counts");
  return record.coincidences;
}

}  // namespace npi::countsim
