#include "npi/states.hpp"

#include <cmath>
#include <numeric>

#include "npi/errors.hpp"

namespace npi::states {
namespace {

Matrix4c projector(const Vector4c& psi) { return psi * psi.adjoint(); }

Vector4c two_term(int first, int second, Complex relative) {
  Vector4c psi = Vector4c::Zero();
  psi(first) = 1.0 / kSqrt2;
  psi(second) = relative / kSqrt2;
  return psi;
}

// Basis positions.
constexpr int kHH = 0;
constexpr int kHV = 1;
constexpr int kVH = 2;
constexpr int kVV = 3;

}  // namespace

bool is_shifted(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlusShifted:
    case BellKind::PsiMinusShifted:
    case BellKind::PhiPlusShifted:
    case BellKind::PhiMinusShifted:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlusShifted: return "psi+s";
    case BellKind::PsiMinusShifted: return "psi-s";
    case BellKind::PhiPlusShifted: return "phi+s";
    case BellKind::PhiMinusShifted: return "phi-s";
  }
  return "?";
}

std::optional<BellKind> parse_bell_kind(std::string_view name) {
  for (BellKind kind : kAllBellKinds) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

PolarizationState::PolarizationState(const Matrix4c& rho, std::string label)
    : rho_(rho), label_(std::move(label)) {
  linalg::require_density_matrix<InvalidState>(rho_, "polarization density matrix");
}

PolarizationState bell_state(BellKind kind) {
  Vector4c psi;
  switch (kind) {
    case BellKind::PsiPlus: psi = two_term(kHV, kVH, 1.0); break;
    case BellKind::PsiMinus: psi = two_term(kHV, kVH, -1.0); break;
    case BellKind::PhiPlus: psi = two_term(kHH, kVV, 1.0); break;
    case BellKind::PhiMinus: psi = two_term(kHH, kVV, -1.0); break;
    case BellKind::PsiPlusShifted: psi = two_term(kHV, kVH, kI); break;
    case BellKind::PsiMinusShifted: psi = two_term(kHV, kVH, -kI); break;
    case BellKind::PhiPlusShifted: psi = two_term(kHH, kVV, kI); break;
    case BellKind::PhiMinusShifted: psi = two_term(kHH, kVV, -kI); break;
  }
  return PolarizationState(projector(psi), std::string(to_string(kind)));
}

PolarizationState separable_pure(double a, double theta_a, double b, double theta_b) {
  const Complex alice[2] = {std::sin(a), std::cos(a) * std::polar(1.0, theta_a)};
  const Complex bob[2] = {std::sin(b), std::cos(b) * std::polar(1.0, theta_b)};
  Vector4c psi;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) psi(2 * i + j) = alice[i] * bob[j];
  }
  return PolarizationState(projector(psi), "separable");
}

PolarizationState maximally_mixed() {
  return PolarizationState(Matrix4c::Identity() / 4.0, "maximally_mixed");
}

PolarizationState psi_theta(double theta) {
  return PolarizationState(projector(two_term(kHV, kVH, std::polar(1.0, theta))), "psi_theta");
}

PolarizationState phi_gamma(double gamma) {
  return PolarizationState(projector(two_term(kHH, kVV, std::polar(1.0, gamma))), "phi_gamma");
}

PolarizationState mix(std::span<const PolarizationState> states, std::span<const double> weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw WeightError("need the same, nonzero number of states and weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw WeightError("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw WeightError("weights must sum to 1");

  Matrix4c rho = Matrix4c::Zero();
  for (std::size_t i = 0; i < states.size(); ++i) rho += (weights[i] / total) * states[i].rho();
  return PolarizationState(rho, "mixture");
}

PolarizationState white_noise(const PolarizationState& state, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw RangeError("noise parameter must lie in [0, 1]");
  Matrix4c rho = p * state.rho() + (1.0 - p) * Matrix4c::Identity() / 4.0;
  return PolarizationState(rho, state.label().empty() ? "white_noise" : state.label() + "+noise");
}

AntidiagonalSummary antidiagonal_summary(const PolarizationState& state) {
  const Complex d = state.d();
  const Complex f = state.f();
  // i(x - x*) = -2 Im x
  return AntidiagonalSummary{
      .f_plus = 2.0 * f.real(),
      .d_plus = 2.0 * d.real(),
      .f_minus_im = -2.0 * f.imag(),
      .d_minus_im = -2.0 * d.imag(),
  };
}

Matrix4c partial_transpose_bob(const Matrix4c& rho) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int a2 = 0; a2 < 2; ++a2) {
        for (int b2 = 0; b2 < 2; ++b2) out(2 * a + b, 2 * a2 + b2) = rho(2 * a + b2, 2 * a2 + b);
      }
    }
  }
  return out;
}

double negativity(const PolarizationState& state) {
  const Eigen::VectorXd eig = linalg::hermitian_eigenvalues(partial_transpose_bob(state.rho()));
  double sum = 0.0;
  for (double e : eig) {
    if (e < 0.0) sum -= e;
  }
  return sum;
}

}  // namespace npi::states
