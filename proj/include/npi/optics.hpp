#pragma once

#include <array>
#include <optional>

#include "npi/detectors.hpp"
#include "npi/linalg.hpp"
#include "npi/states.hpp"

namespace npi::optics {

enum class Variant { Sagnac, MachZehnder };

/// Phases are in radians. `pre_phase` is a phase applied to the vertical
/// component of one party's photon in its input port, before its interferometer.
/// It is 0 in the standard configuration and pi/4 on Alice in the CHSH
/// configuration.
struct InterferometerConfig {
  Variant variant = Variant::Sagnac;
  double alpha = kPi / 4;
  double beta = kPi / 4;
  double pre_phase = 0.0;
  Party pre_phase_party = Party::Alice;
};

InterferometerConfig standard_configuration(Variant variant = Variant::Sagnac);
InterferometerConfig chsh_configuration(Variant variant = Variant::Sagnac);

/// Beam splitter on the port factor, (1/sqrt 2)[[i, 1], [1, i]].
Matrix2c beam_splitter();

/// Single-party interferometer M(phi) = (B x I)(e^{i phi} P (+) X)(B x I) over
/// modes (p0H, p0V, p1H, p1V), with P = Z for the Sagnac device and P = I for the
/// Mach-Zehnder. Port 0 is the reflected arm and carries the phase; port 1 is the
/// transmitted arm and flips the polarization.
Matrix4c build_M(double phi, Variant variant);

/// Diagonal phase on the input-port vertical mode of one party.
Matrix4c pre_phase_operator(double phase);

/// U = M(alpha) D_A (x) M(beta) D_B, where D_A, D_B carry the pre-phase on the
/// configured party and are the identity otherwise.
Matrix16c build_U(const InterferometerConfig& config);

/// Joint (Alice mode) x (Bob mode) density matrix, 16x16; validated like
/// PolarizationState and throws InvalidState on failure.
class ModeState {
 public:
  explicit ModeState(const Matrix16c& rho);
  const Matrix16c& rho() const { return rho_; }

 private:
  Matrix16c rho_;
};

/// Places both photons in input port 0: polarization basis index 0..3 maps to
/// joint rows/columns {0, 1, 4, 5}.
ModeState embed(const states::PolarizationState& state);
inline constexpr std::array<int, 4> kEmbeddingIndices = {0, 1, 4, 5};

ModeState propagate(const ModeState& mode_state, const InterferometerConfig& config);

enum class TableKind { Probability, Count };

/// Sixteen coincidence values indexed by channel_index(alice mode, bob mode),
/// optionally with eight per-detector singles and per-channel variances.
struct CoincidenceTable {
  std::array<double, kChannelCount> values{};
  TableKind kind = TableKind::Probability;
  std::optional<std::array<double, kDetectorCount>> singles;
  /// Per-channel variance for counts; when absent, Poisson (variance = value).
  std::optional<std::array<double, kChannelCount>> variances;

  double value(Polarization j, int y, Polarization s, int z) const {
    return values[channel_index(j, y, s, z)];
  }
  double total() const;
  double variance(std::size_t channel) const;
};

/// Throws InvalidTable on negative or non-finite values, a probability table
/// that does not sum to 1 within 1e-9, or a count table without singles.
void validate(const CoincidenceTable& table);

/// Channel probabilities with per-detector singles filled in.
CoincidenceTable detection_probabilities(const ModeState& propagated);

/// Per-detector marginals, ordered by detector id (HA0 ... VB1).
std::array<double, kDetectorCount> singles_probabilities(const ModeState& propagated);

/// Convenience: embed, propagate, read out.
CoincidenceTable coincidence_probabilities(const states::PolarizationState& state,
                                           const InterferometerConfig& config);

/// Closed form for the four unshifted Bell states,
///     P = (1/16){1 + k l (-1)^{y+z} cos(alpha +- m beta)},
/// '+' for j != s and '-' for j == s, with (l, m) = psi+:(1,1), psi-:(-1,1),
/// phi+:(1,-1), phi-:(-1,-1). k = 1 except for the Sagnac device with j != s,
/// where the single vertical photon on the reflected arm picks up the pi from Z
/// and k = -1. Throws UnsupportedState for shifted kinds or a nonzero pre-phase.
CoincidenceTable analytic_bell_probabilities(states::BellKind kind, const InterferometerConfig& config);

/// Single-photon interference terms at alpha = beta = pi/4.
struct MarginalCoherences {
  double sigma_HA = 0.0;
  double sigma_VA = 0.0;
  double sigma_HB = 0.0;
  double sigma_VB = 0.0;
};

/// sigma_HA = e^{i pi/4}{-w + i w*}, sigma_VA = e^{i pi/4}{w* - i w} with
/// w = c + g (Alice's marginal coherence), and the same for Bob with
/// w = b + j.
MarginalCoherences marginal_coherences(const states::PolarizationState& state);

}  // namespace npi::optics
