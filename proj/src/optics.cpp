#include "npi/optics.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "npi/errors.hpp"

namespace npi::optics {
namespace {

constexpr double kClampTolerance = 1e-10;

Matrix4c direct_sum(const Matrix2c& upper, const Matrix2c& lower) {
  Matrix4c out = Matrix4c::Zero();
  out.topLeftCorner<2, 2>() = upper;
  out.bottomRightCorner<2, 2>() = lower;
  return out;
}

double clamp_probability(double p) {
  if (p < -kClampTolerance) {
    throw NegativeProbability("diagonal entry " + std::to_string(p) + " is below -1e-10");
  }
  return p < 0.0 ? 0.0 : p;
}

}  // namespace

InterferometerConfig standard_configuration(Variant variant) {
  return InterferometerConfig{.variant = variant};
}

InterferometerConfig chsh_configuration(Variant variant) {
  return InterferometerConfig{.variant = variant, .pre_phase = kPi / 4, .pre_phase_party = Party::Alice};
}

Matrix2c beam_splitter() {
  Matrix2c b;
  b << kI, 1.0, 1.0, kI;
  return b / kSqrt2;
}

Matrix4c build_M(double phi, Variant variant) {
  const Matrix2c identity = Matrix2c::Identity();
  Matrix2c pauli_x;
  pauli_x << 0.0, 1.0, 1.0, 0.0;
  Matrix2c reflected = Matrix2c::Identity();
  if (variant == Variant::Sagnac) reflected(1, 1) = -1.0;

  const Matrix4c splitter = Eigen::kroneckerProduct(beam_splitter(), identity).eval();
  return splitter * direct_sum(std::polar(1.0, phi) * reflected, pauli_x) * splitter;
}

Matrix4c pre_phase_operator(double phase) {
  Matrix4c d = Matrix4c::Identity();
  d(Mode{Polarization::V, 0}.index(), Mode{Polarization::V, 0}.index()) = std::polar(1.0, phase);
  return d;
}

Matrix16c build_U(const InterferometerConfig& config) {
  Matrix4c alice = build_M(config.alpha, config.variant);
  Matrix4c bob = build_M(config.beta, config.variant);
  if (config.pre_phase != 0.0) {
    Matrix4c& target = config.pre_phase_party == Party::Alice ? alice : bob;
    target = target * pre_phase_operator(config.pre_phase);
  }
  return Eigen::kroneckerProduct(alice, bob).eval();
}

ModeState::ModeState(const Matrix16c& rho) : rho_(rho) {
  linalg::require_density_matrix<InvalidState>(rho_, "mode density matrix");
}

ModeState embed(const states::PolarizationState& state) {
  Matrix16c rho = Matrix16c::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) rho(kEmbeddingIndices[r], kEmbeddingIndices[c]) = state.rho()(r, c);
  }
  return ModeState(rho);
}

ModeState propagate(const ModeState& mode_state, const InterferometerConfig& config) {
  const Matrix16c u = build_U(config);
  return ModeState(u * mode_state.rho() * u.adjoint());
}

double CoincidenceTable::total() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

double CoincidenceTable::variance(std::size_t channel) const {
  if (variances) return (*variances)[channel];
  return kind == TableKind::Count ? values[channel] : 0.0;
}

void validate(const CoincidenceTable& table) {
  for (double v : table.values) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidTable("coincidence values must be finite and >= 0");
  }
  if (table.singles) {
    for (double v : *table.singles) {
      if (!std::isfinite(v) || v < 0.0) throw InvalidTable("singles must be finite and >= 0");
    }
  }
  if (table.variances) {
    for (double v : *table.variances) {
      if (!std::isfinite(v) || v < 0.0) throw InvalidTable("variances must be finite and >= 0");
    }
  }
  if (table.kind == TableKind::Probability && std::abs(table.total() - 1.0) > 1e-9) {
    throw InvalidTable("probability table does not sum to 1");
  }
  if (table.kind == TableKind::Count && !table.singles) {
    throw InvalidTable("count table requires singles");
  }
}

namespace {

std::array<double, kDetectorCount> marginals(const std::array<double, kChannelCount>& values) {
  std::array<double, kDetectorCount> singles{};
  for (std::size_t a = 0; a < kModesPerParty; ++a) {
    for (std::size_t b = 0; b < kModesPerParty; ++b) {
      singles[a] += values[4 * a + b];
      singles[4 + b] += values[4 * a + b];
    }
  }
  return singles;
}

}  // namespace

CoincidenceTable detection_probabilities(const ModeState& propagated) {
  CoincidenceTable table;
  table.kind = TableKind::Probability;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    table.values[c] = clamp_probability(propagated.rho()(c, c).real());
  }
  table.singles = marginals(table.values);
  return table;
}

std::array<double, kDetectorCount> singles_probabilities(const ModeState& propagated) {
  return marginals(detection_probabilities(propagated).values);
}

CoincidenceTable coincidence_probabilities(const states::PolarizationState& state,
                                           const InterferometerConfig& config) {
  return detection_probabilities(propagate(embed(state), config));
}

CoincidenceTable analytic_bell_probabilities(states::BellKind kind, const InterferometerConfig& config) {
  using states::BellKind;
  int ell = 0;
  int m = 0;
  switch (kind) {
    case BellKind::PsiPlus: ell = 1; m = 1; break;
    case BellKind::PsiMinus: ell = -1; m = 1; break;
    case BellKind::PhiPlus: ell = 1; m = -1; break;
    case BellKind::PhiMinus: ell = -1; m = -1; break;
    default:
      throw UnsupportedState("no closed form for shifted Bell states");
  }
  if (config.pre_phase != 0.0) throw UnsupportedState("closed form assumes no pre-phase");

  CoincidenceTable table;
  table.kind = TableKind::Probability;
  for (std::size_t c = 0; c < kChannelCount; ++c) {
    const Mode alice = Mode::from_index(c / 4);
    const Mode bob = Mode::from_index(c % 4);
    const bool orthogonal = alice.polarization != bob.polarization;
    const double arg = orthogonal ? config.alpha + m * config.beta : config.alpha - m * config.beta;
    const double parity = ((alice.port + bob.port) % 2 == 0) ? 1.0 : -1.0;
    const double sagnac_sign = (orthogonal && config.variant == Variant::Sagnac) ? -1.0 : 1.0;
    table.values[c] = (1.0 + sagnac_sign * ell * parity * std::cos(arg)) / 16.0;
  }
  table.singles = marginals(table.values);
  return table;
}

MarginalCoherences marginal_coherences(const states::PolarizationState& state) {
  const Matrix4c& rho = state.rho();
  const Complex phase = std::polar(1.0, kPi / 4);
  const Complex alice = rho(0, 2) + rho(1, 3);  // c + g
  const Complex bob = rho(0, 1) + rho(2, 3);    // b + j
  return MarginalCoherences{
      .sigma_HA = (phase * (-alice + kI * std::conj(alice))).real(),
      .sigma_VA = (phase * (std::conj(alice) - kI * alice)).real(),
      .sigma_HB = (phase * (-bob + kI * std::conj(bob))).real(),
      .sigma_VB = (phase * (std::conj(bob) - kI * bob)).real(),
  };
}

}  // namespace npi::optics
