#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace npi {

enum class Polarization { H = 0, V = 1 };
enum class Party { Alice = 0, Bob = 1 };

/// One party's optical mode (port, polarization). The per-party order is
/// (p0H, p0V, p1H, p1V), i.e. index = 2*port + polarization.
struct Mode {
  Polarization polarization = Polarization::H;
  int port = 0;

  constexpr std::size_t index() const {
    return 2 * static_cast<std::size_t>(port) + static_cast<std::size_t>(polarization);
  }
  static constexpr Mode from_index(std::size_t i) {
    return Mode{static_cast<Polarization>(i % 2), static_cast<int>(i / 2)};
  }
};

inline constexpr std::size_t kModesPerParty = 4;
inline constexpr std::size_t kDetectorCount = 8;
inline constexpr std::size_t kChannelCount = 16;

/// Detector ids 0-7: HA0, VA0, HA1, VA1, HB0, VB0, HB1, VB1.
constexpr std::size_t detector_id(Party party, Mode mode) {
  return 4 * static_cast<std::size_t>(party) + mode.index();
}
constexpr Party detector_party(std::size_t detector) {
  return detector < 4 ? Party::Alice : Party::Bob;
}

/// Coincidence channel (Alice mode, Bob mode) -> 0-based index 4*iA + iB, which is
/// also the diagonal position in the propagated 16x16 density matrix.
constexpr std::size_t channel_index(Mode alice, Mode bob) {
  return 4 * alice.index() + bob.index();
}
constexpr std::size_t channel_index(Polarization j, int y, Polarization s, int z) {
  return channel_index(Mode{j, y}, Mode{s, z});
}
constexpr std::size_t channel_from_detectors(std::size_t alice_detector, std::size_t bob_detector) {
  return 4 * alice_detector + (bob_detector - 4);
}

std::string detector_name(std::size_t detector);
std::string channel_name(std::size_t channel);
std::optional<std::size_t> parse_detector_name(std::string_view name);
std::optional<std::size_t> parse_channel_name(std::string_view name);

}  // namespace npi
