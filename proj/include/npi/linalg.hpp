#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace npi {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Vector4c = Eigen::Matrix<Complex, 4, 1>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr Complex kI{0.0, 1.0};

namespace linalg {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTolerance) {
  return max_abs(m - m.adjoint()) <= tol;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
  using Plain = typename Derived::PlainObject;
  return max_abs(m * m.adjoint() - Plain::Identity(m.rows(), m.cols())) <= tol;
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  const Plain h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Plain> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

/// Throws E when `m` is not a density matrix (Hermitian, unit trace, PSD) at the
/// library-wide tolerances.
template <typename E, typename Derived>
void require_density_matrix(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw E(std::string(what) + " has non-finite entries");
  if (!is_hermitian(m)) throw E(std::string(what) + " is not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTolerance) {
    throw E(std::string(what) + " does not have unit trace");
  }
  if (hermitian_eigenvalues(m).minCoeff() < -kPsdTolerance) {
    throw E(std::string(what) + " is not positive semi-definite");
  }
}

}  // namespace linalg
}  // namespace npi
