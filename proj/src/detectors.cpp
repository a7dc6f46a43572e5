#include "npi/detectors.hpp"

namespace npi {

std::string detector_name(std::size_t detector) {
  const Mode mode = Mode::from_index(detector % 4);
  std::string name;
  name += mode.polarization == Polarization::H ? 'H' : 'V';
  name += detector_party(detector) == Party::Alice ? 'A' : 'B';
  name += static_cast<char>('0' + mode.port);
  return name;
}

std::string channel_name(std::size_t channel) {
  return detector_name(channel / 4) + detector_name(4 + channel % 4);
}

std::optional<std::size_t> parse_detector_name(std::string_view name) {
  for (std::size_t d = 0; d < kDetectorCount; ++d) {
    if (detector_name(d) == name) return d;
  }
  return std::nullopt;
}

std::optional<std::size_t> parse_channel_name(std::string_view name) {
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    if (channel_name(c) == name) return c;
  }
  return std::nullopt;
}

}  // namespace npi
