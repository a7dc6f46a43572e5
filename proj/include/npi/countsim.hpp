#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "npi/detectors.hpp"
#include "npi/optics.hpp"

namespace npi::countsim {

/// Forward-model parameters. Rates are per second, the bin width in integer
/// nanoseconds. Efficiencies and dark rates are per detector id (HA0 ... VB1).
struct ExperimentConfig {
  double pair_rate = 0.0;
  double duration_s = 100.0;
  std::array<double, kDetectorCount> efficiency{1, 1, 1, 1, 1, 1, 1, 1};
  std::array<double, kDetectorCount> dark_rate{};
  std::uint64_t bin_width_ns = 5;
  std::uint64_t rng_seed = 1;

  double bin_width_s() const { return static_cast<double>(bin_width_ns) * 1e-9; }
};

/// Throws ConfigError: pair_rate >= 0, duration > 0, efficiencies in (0, 1],
/// dark rates >= 0, bin width >= 1 ns.
void validate(const ExperimentConfig& config);

/// 1.4e6 pairs/s, 1% detection efficiency and 500/s dark counts per detector,
/// 5 ns bins: singles land at a few kcps and coincidences at a few cps per
/// channel.
ExperimentConfig reference_experiment();

/// Coincidence counts with their singles and pipeline flags. The singles live
/// in `coincidences.singles` and are always present.
struct CountsRecord {
  optics::CoincidenceTable coincidences;
  double duration_s = 0.0;
  bool accidental_corrected = false;
  bool normalized = false;

  const std::array<double, kDetectorCount>& singles() const { return *coincidences.singles; }
};

struct DetectionEvent {
  std::uint8_t detector = 0;
  std::uint64_t timestamp_ns = 0;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct TimestampStream {
  std::vector<DetectionEvent> events;
  double duration_s = 0.0;
};

/// Ground truth the generator keeps about a stream it produced.
struct StreamTruth {
  /// Pair events with both photons detected, per channel.
  std::array<std::uint64_t, kChannelCount> pair_coincidences{};
  /// Every cross-party pairing that shares a time bin, per channel; computed from
  /// a bin -> occupancy map while generating.
  std::array<std::uint64_t, kChannelCount> binned_coincidences{};
  std::array<std::uint64_t, kDetectorCount> singles{};
  std::uint64_t detected_pair_events = 0;
};

struct GeneratedStream {
  TimestampStream stream;
  StreamTruth truth;
};

/// Poisson counts: per channel, detected pairs ~ Poisson(R T P eta_A eta_B); singles
/// add pairs whose partner was lost and dark counts; accidentals
/// ~ Poisson(S_i S_j tau / T) are added to each channel and the total is capped at
/// the smaller of the two singles. Deterministic in rng_seed.
CountsRecord simulate_counts(const optics::CoincidenceTable& probabilities, const ExperimentConfig& config);

/// Raw detection events: pair emission as a Poisson process (thinned to events
/// with at least one detected photon), channel drawn from the probabilities,
/// photons surviving independently with their detector efficiency; independent
/// Poisson dark counts per detector. Sorted by timestamp; deterministic in
/// rng_seed.
GeneratedStream generate_timestamps_with_truth(const optics::CoincidenceTable& probabilities,
                                               const ExperimentConfig& config);
TimestampStream generate_timestamps(const optics::CoincidenceTable& probabilities,
                                    const ExperimentConfig& config);

/// Coincidences are cross-party detections sharing floor(t / bin_width); every
/// Alice x Bob pairing in a bin counts. Throws UnsortedStream.
CountsRecord bin_and_count(const TimestampStream& stream, std::uint64_t bin_width_ns);

/// Expected accidentals per channel, S_i S_j tau / T.
double accidental_estimate(double singles_a, double singles_b, std::uint64_t bin_width_ns, double duration_s);

/// Subtracts accidental_estimate per channel, clamping at zero. Throws
/// AlreadyCorrected.
CountsRecord accidental_correction(const CountsRecord& record, std::uint64_t bin_width_ns);

/// Relative efficiency per channel, normalized to mean 1.
struct CalibrationRecord {
  std::array<double, kChannelCount> relative_efficiency{};
  std::optional<std::array<double, kChannelCount>> variance;
  std::string source_tag;
};

/// From corrected counts of an unentangled equal-flux source:
/// factor = 16 count / sum. Throws EmptyChannel or PipelineOrderError.
CalibrationRecord calibrate(const CountsRecord& record, std::string source_tag = "unentangled");

/// Divides each channel by its factor; requires corrected, not yet normalized
/// counts. Throws InvalidCalibration or PipelineOrderError.
CountsRecord normalize(const CountsRecord& record, const CalibrationRecord& calibration);

/// The table correlation analysis may consume. Throws PipelineOrderError unless
/// accidentals have been corrected.
const optics::CoincidenceTable& analysis_table(const CountsRecord& record);

}  // namespace npi::countsim
