#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "npi/linalg.hpp"

namespace npi::states {

/// The four Bell states and their "shifted" partners, which carry a relative
/// phase of +-i instead of +-1 between the two terms.
enum class BellKind {
  PsiPlus,
  PsiMinus,
  PhiPlus,
  PhiMinus,
  PsiPlusShifted,
  PsiMinusShifted,
  PhiPlusShifted,
  PhiMinusShifted,
};

inline constexpr std::array<BellKind, 8> kAllBellKinds = {
    BellKind::PsiPlus,        BellKind::PsiMinus,        BellKind::PhiPlus,
    BellKind::PhiMinus,       BellKind::PsiPlusShifted,  BellKind::PsiMinusShifted,
    BellKind::PhiPlusShifted, BellKind::PhiMinusShifted,
};

bool is_shifted(BellKind kind);
/// Short names used on the CLI and in files: psi+, psi-, phi+, phi-, psi+s, ...
std::string_view to_string(BellKind kind);
std::optional<BellKind> parse_bell_kind(std::string_view name);

/// Two-photon polarization density matrix in the basis (HH, HV, VH, VV), first
/// letter Alice. With the generic element labels
///
///     a  b  c  d
///     .  e  f  g
///     .  .  h  j
///     .  .  .  k
///
/// the anti-diagonal coherences are d = rho(0,3) and f = rho(1,2).
///
/// Construction validates Hermiticity (1e-12), unit trace (1e-12) and positive
/// semi-definiteness (eigenvalues >= -1e-10) and throws InvalidState otherwise.
class PolarizationState {
 public:
  explicit PolarizationState(const Matrix4c& rho, std::string label = {});

  const Matrix4c& rho() const { return rho_; }
  const std::string& label() const { return label_; }

  Complex d() const { return rho_(0, 3); }
  Complex f() const { return rho_(1, 2); }

 private:
  Matrix4c rho_;
  std::string label_;
};

/// Real observables built from the anti-diagonal coherences:
/// f+f*, d+d*, i(f-f*), i(d-d*).
struct AntidiagonalSummary {
  double f_plus = 0.0;
  double d_plus = 0.0;
  double f_minus_im = 0.0;
  double d_minus_im = 0.0;
};

PolarizationState bell_state(BellKind kind);

/// Product of |A> = (sin a, cos a e^{i theta_A}) and |B> = (sin b, cos b e^{i theta_B})
/// in the (H, V) basis.
PolarizationState separable_pure(double a, double theta_a, double b, double theta_b);

PolarizationState maximally_mixed();

/// psi(theta) ~ HV + e^{i theta} VH, for which f+f* = cos(theta).
PolarizationState psi_theta(double theta);
/// phi(gamma) ~ HH + e^{i gamma} VV, for which d+d* = cos(gamma).
PolarizationState phi_gamma(double gamma);

/// Convex combination. Weights must be nonnegative and sum to 1 within 1e-9;
/// they are renormalized before mixing so the result has unit trace.
PolarizationState mix(std::span<const PolarizationState> states, std::span<const double> weights);

/// p * state + (1 - p) * I/4.
PolarizationState white_noise(const PolarizationState& state, double p);

AntidiagonalSummary antidiagonal_summary(const PolarizationState& state);

/// Sum of |negative eigenvalues| of the partial transpose on Bob's qubit. Nonzero
/// exactly for entangled two-qubit states.
double negativity(const PolarizationState& state);

Matrix4c partial_transpose_bob(const Matrix4c& rho);

}  // namespace npi::states
