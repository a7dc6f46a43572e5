// Worked cases with known answers, one TEST per operation.

#include <gtest/gtest.h>

#include <random>

#include "npi/correlations.hpp"
#include "npi/countsim.hpp"
#include "oracles.hpp"

using namespace npi;
using correlations::Configuration;
using optics::Variant;
using states::BellKind;

namespace {

const double kRt2 = std::sqrt(2.0);

optics::CoincidenceTable standard_table(const states::PolarizationState& s, Variant v = Variant::Sagnac) {
  return optics::coincidence_probabilities(s, optics::standard_configuration(v));
}

correlations::AntidiagonalEstimate with_sigma(double f, double d, double fm, double dm, double sigma) {
  correlations::AntidiagonalEstimate e;
  e.f_plus = {f, sigma};
  e.d_plus = {d, sigma};
  e.f_minus_im = {fm, sigma};
  e.d_minus_im = {dm, sigma};
  return e;
}

// (B x I)(P + X)(B x I) assembled from literal blocks
Matrix4c literal_interferometer(double phi, const Matrix2c& p) {
  const double r = 1.0 / kRt2;
  oracle::Dyn b(2, 2);
  b << Complex(0, r), r, r, Complex(0, r);
  const oracle::Dyn bi = oracle::kron(b, oracle::Dyn::Identity(2, 2));
  oracle::Dyn mid = oracle::Dyn::Zero(4, 4);
  mid.topLeftCorner(2, 2) = std::polar(1.0, phi) * p;
  mid(2, 3) = 1.0;
  mid(3, 2) = 1.0;
  return bi * mid * bi;
}

Matrix2c diag2(double a, double b) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST(ReferenceStates, BellMatrices) {
  const Matrix4c psi = states::bell_state(BellKind::PsiPlus).rho();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool inner = (r == 1 || r == 2) && (c == 1 || c == 2);
      EXPECT_NEAR(std::abs(psi(r, c) - Complex(inner ? 0.5 : 0.0, 0.0)), 0.0, 1e-15) << r << "," << c;
    }
  const auto phi_minus = states::antidiagonal_summary(states::bell_state(BellKind::PhiMinus));
  EXPECT_NEAR(phi_minus.d_plus, -1.0, 1e-15);
  EXPECT_NEAR(phi_minus.f_plus, 0.0, 1e-15);

  // (|HV> + i|VH>)/sqrt2 written out by hand
  Eigen::Vector4cd v(0, 1 / kRt2, Complex(0, 1 / kRt2), 0);
  const Matrix4c shifted = v * v.adjoint();
  const auto s = states::antidiagonal_summary(states::bell_state(BellKind::PsiPlusShifted));
  EXPECT_NEAR(s.f_plus, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.f_minus_im), 1.0, 1e-15);
  EXPECT_NEAR(s.f_minus_im, oracle::antidiagonals(shifted)[2], 1e-15);
}

TEST(ReferenceStates, SeparableCases) {
  auto sum = [](double a, double ta, double b, double tb) {
    return states::antidiagonal_summary(states::separable_pure(a, ta, b, tb));
  };
  EXPECT_NEAR(sum(M_PI / 4, 0, M_PI / 4, 0).f_plus, 0.5, 1e-15);
  EXPECT_NEAR(sum(M_PI / 4, 0, M_PI / 4, 0).d_plus, 0.5, 1e-15);
  EXPECT_NEAR(sum(M_PI / 2, 0, 0.3, 1.0).f_plus, 0.0, 1e-15);
  EXPECT_NEAR(sum(M_PI / 2, 0, 0.3, 1.0).d_plus, 0.0, 1e-15);
  EXPECT_NEAR(sum(M_PI / 4, 0, M_PI / 4, M_PI).f_plus, -0.5, 1e-15);

  // brute-force outer product of (sin a, cos a e^{i tA}) x (sin b, cos b e^{i tB})
  const Eigen::Vector2cd a(std::sin(M_PI / 4), std::cos(M_PI / 4));
  const Eigen::Vector2cd b(std::sin(M_PI / 4), std::cos(M_PI / 4) * std::polar(1.0, M_PI));
  Eigen::Vector4cd ab;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) ab(2 * i + k) = a(i) * b(k);
  EXPECT_NEAR(oracle::antidiagonals(ab * ab.adjoint())[0], -0.5, 1e-15);
}

TEST(ReferenceStates, Mixtures) {
  const std::vector<states::PolarizationState> one = {states::bell_state(BellKind::PsiPlus)};
  const std::vector<double> unit = {1.0};
  EXPECT_EQ(states::mix(one, unit).rho(), one[0].rho());

  const std::vector<states::PolarizationState> sep = {states::separable_pure(M_PI / 4, 0, M_PI / 4, 0),
                                                      states::separable_pure(M_PI / 4, M_PI, M_PI / 4, 0)};
  const std::vector<double> half = {0.5, 0.5};
  EXPECT_NEAR(states::antidiagonal_summary(states::mix(sep, half)).f_plus, 0.0, 1e-15);
  EXPECT_NEAR(oracle::antidiagonals(0.5 * (sep[0].rho() + sep[1].rho()))[0], 0.0, 1e-15);

  const std::vector<states::PolarizationState> noisy = {states::bell_state(BellKind::PsiPlus), states::maximally_mixed()};
  const std::vector<double> w = {0.6, 0.4};
  EXPECT_NEAR(states::antidiagonal_summary(states::mix(noisy, w)).f_plus, 0.6, 1e-15);
}

TEST(ReferenceStates, WhiteNoiseEndpoints) {
  const auto psi = states::bell_state(BellKind::PsiPlus);
  EXPECT_LT(linalg::max_abs(states::white_noise(psi, 1.0).rho() - psi.rho()), 1e-16);
  const auto zero = states::antidiagonal_summary(states::white_noise(psi, 0.0));
  EXPECT_EQ(zero.f_plus, 0.0);
  EXPECT_EQ(zero.d_plus, 0.0);
  EXPECT_NEAR(states::antidiagonal_summary(states::white_noise(psi, 0.96)).f_plus, 0.96, 1e-15);
}

TEST(ReferenceStates, SummariesAndNegativity) {
  const auto psi_minus = states::antidiagonal_summary(states::bell_state(BellKind::PsiMinus));
  EXPECT_NEAR(psi_minus.f_plus, -1.0, 1e-15);
  EXPECT_NEAR(psi_minus.d_plus, 0.0, 1e-15);
  EXPECT_NEAR(states::antidiagonal_summary(states::psi_theta(M_PI / 3)).f_plus, 0.5, 1e-15);
  for (double p = 0.0; p <= 1.0; p += 0.01) {
    const double n = states::negativity(states::white_noise(states::bell_state(BellKind::PsiPlus), p));
    if (p > 1.0 / 3.0 + 1e-9) EXPECT_GT(n, 1e-12) << p;
    if (p < 1.0 / 3.0 - 1e-9) EXPECT_LT(n, 1e-12) << p;
  }
}

TEST(ReferenceOptics, InterferometerFromLiteralBlocks) {
  EXPECT_LT(linalg::max_abs(optics::build_M(0.0, Variant::Sagnac) - literal_interferometer(0.0, diag2(1, -1))), 1e-15);
  const Matrix4c sag = optics::build_M(M_PI / 2, Variant::Sagnac);
  const Matrix4c mz = optics::build_M(M_PI / 2, Variant::MachZehnder);
  EXPECT_LT(linalg::max_abs(sag - literal_interferometer(M_PI / 2, diag2(1, -1))), 1e-15);
  EXPECT_LT(linalg::max_abs(mz - literal_interferometer(M_PI / 2, diag2(1, 1))), 1e-15);
  // the Z <-> I swap moves only the V-polarized arm-0 amplitude
  EXPECT_LT(linalg::max_abs((mz - sag) - (literal_interferometer(M_PI / 2, diag2(0, 2)) -
                                         literal_interferometer(M_PI / 2, diag2(0, 0)))),
            1e-15);
}

TEST(ReferenceOptics, TwoPartyOperator) {
  optics::InterferometerConfig c{Variant::MachZehnder, 0.4, -1.3, 0.0, Party::Bob};
  const oracle::Dyn mm = oracle::kron(optics::build_M(0.4, Variant::MachZehnder), optics::build_M(-1.3, Variant::MachZehnder));
  EXPECT_EQ((optics::build_U(c) - mm).cwiseAbs().maxCoeff(), 0.0);
  optics::InterferometerConfig z{Variant::Sagnac, 0.0, 0.0, 0.0, Party::Alice};
  const oracle::Dyn lit = oracle::kron(literal_interferometer(0, diag2(1, -1)), literal_interferometer(0, diag2(1, -1)));
  EXPECT_LT((optics::build_U(z) - lit).cwiseAbs().maxCoeff(), 1e-15);
  std::mt19937_64 rng(157);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 100; ++i) {
    optics::InterferometerConfig r{i % 2 ? Variant::Sagnac : Variant::MachZehnder, u(rng), u(rng), u(rng),
                                   i % 3 ? Party::Alice : Party::Bob};
    EXPECT_TRUE(linalg::is_unitary(optics::build_U(r)));
  }
}

TEST(ReferenceOptics, Embedding) {
  const auto& psi = optics::embed(states::bell_state(BellKind::PsiPlus)).rho();
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      const bool hit = (r == 1 || r == 4) && (c == 1 || c == 4);
      EXPECT_NEAR(std::abs(psi(r, c) - Complex(hit ? 0.5 : 0.0, 0.0)), 0.0, 1e-15);
    }
  const auto& mixed = optics::embed(states::maximally_mixed()).rho();
  for (int i : {0, 1, 4, 5}) EXPECT_EQ(mixed(i, i), Complex(0.25, 0));
  std::mt19937_64 rng(166);
  const Matrix4c rho = oracle::random_density(rng);
  const auto& e = optics::embed(states::PolarizationState(rho)).rho();
  const int idx[4] = {0, 1, 4, 5};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_EQ(e(idx[r], idx[c]), rho(r, c));
  EXPECT_NEAR(e.trace().real(), 1.0, 1e-15);
}

TEST(ReferenceOptics, Propagation) {
  // Mach-Zehnder at zero phase: orthogonal polarizations leave through equal ports
  const auto t = optics::coincidence_probabilities(states::bell_state(BellKind::PsiPlus),
                                                   {Variant::MachZehnder, 0.0, 0.0, 0.0, Party::Alice});
  for (int y = 0; y < 2; ++y)
    for (int z = 0; z < 2; ++z) {
      EXPECT_NEAR(t.value(Polarization::H, y, Polarization::V, z), y == z ? 0.125 : 0.0, 1e-15);
      EXPECT_NEAR(t.value(Polarization::V, y, Polarization::H, z), y == z ? 0.125 : 0.0, 1e-15);
    }

  std::mt19937_64 rng(175);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 20; ++i) {
    const optics::InterferometerConfig c{i % 2 ? Variant::Sagnac : Variant::MachZehnder, u(rng), u(rng), u(rng),
                                         Party::Alice};
    const auto in = optics::embed(states::PolarizationState(oracle::random_density(rng)));
    const auto out = optics::propagate(in, c);
    const Matrix16c uu = optics::build_U(c);
    EXPECT_LT(linalg::max_abs(Matrix16c(uu.adjoint() * out.rho() * uu) - in.rho()), 1e-12);
    // independent dense triple product with a loop-built Kronecker operator
    const oracle::Dyn u_dense = oracle::kron(optics::build_M(c.alpha, c.variant) * optics::pre_phase_operator(c.pre_phase),
                                             optics::build_M(c.beta, c.variant));
    const oracle::Dyn direct = u_dense * oracle::Dyn(in.rho()) * u_dense.adjoint();
    const auto table = optics::detection_probabilities(out);
    for (int ch = 0; ch < 16; ++ch) EXPECT_NEAR(table.values[ch], direct(ch, ch).real(), 1e-14);
  }
}

TEST(ReferenceOptics, ClosedFormPhiPlus) {
  const double a = M_PI / 3, b = M_PI / 5;
  const auto t = optics::coincidence_probabilities(states::bell_state(BellKind::PhiPlus),
                                                   {Variant::Sagnac, a, b, 0.0, Party::Alice});
  for (int j = 0; j < 2; ++j)
    for (int s = 0; s < 2; ++s)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          const double parity = (y + z) % 2 ? -1.0 : 1.0;
          // l = 1, m = -1; the orthogonal terms of the Sagnac device carry the extra sign
          const double expected =
              j == s ? (1 + parity * std::cos(a + b)) / 16 : (1 - parity * std::cos(a - b)) / 16;
          EXPECT_NEAR(t.value(static_cast<Polarization>(j), y, static_cast<Polarization>(s), z), expected, 1e-15);
        }
}

TEST(ReferenceOptics, PsiMinusIsPsiPlusWithCosineFlipped) {
  const auto plus = optics::analytic_bell_probabilities(BellKind::PsiPlus, optics::standard_configuration());
  const auto minus = optics::analytic_bell_probabilities(BellKind::PsiMinus, optics::standard_configuration());
  EXPECT_NEAR(plus.value(Polarization::H, 0, Polarization::H, 0), 0.125, 1e-15);
  for (int ch = 0; ch < 16; ++ch) EXPECT_NEAR(minus.values[ch], 0.125 - plus.values[ch], 1e-15);
}

TEST(ReferenceOptics, SinglePhotonMarginals) {
  std::mt19937_64 rng(200);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (BellKind k : states::kAllBellKinds) {
    for (int i = 0; i < 5; ++i) {
      const optics::InterferometerConfig c{i % 2 ? Variant::Sagnac : Variant::MachZehnder, u(rng), u(rng), u(rng),
                                           Party::Bob};
      for (double s : optics::singles_probabilities(optics::propagate(optics::embed(states::bell_state(k)), c))) {
        EXPECT_NEAR(s, 0.25, 1e-12);
      }
    }
  }
  const auto sep = optics::coincidence_probabilities(states::separable_pure(M_PI / 4, 0, M_PI / 4, 0),
                                                     optics::standard_configuration());
  const auto& sg = *sep.singles;
  const auto m = optics::marginal_coherences(states::separable_pure(M_PI / 4, 0, M_PI / 4, 0));
  EXPECT_GT(std::abs(sg[0] - 0.25), 0.1);
  EXPECT_NEAR(sg[0] - sg[2], m.sigma_HA / 2, 1e-15);
  EXPECT_NEAR(sg[0] + sg[2], 0.5, 1e-15);  // H weight of Alice's input
  EXPECT_NEAR(sg[1] + sg[3], 0.5, 1e-15);
}

TEST(ReferenceCorrelations, StandardCoefficients) {
  const auto psi = correlations::correlation_set(
      optics::analytic_bell_probabilities(BellKind::PsiPlus, optics::standard_configuration()), Configuration::StandardPi4);
  EXPECT_NEAR(psi.hh.value, 1, 1e-15);
  EXPECT_NEAR(psi.vv.value, 1, 1e-15);
  EXPECT_NEAR(psi.hv.value, 0, 1e-15);
  EXPECT_NEAR(psi.vh.value, 0, 1e-15);
  const auto phi = correlations::correlation_set(standard_table(states::bell_state(BellKind::PhiMinus)),
                                                 Configuration::StandardPi4);
  EXPECT_NEAR(phi.hv.value, 1, 1e-15);
  EXPECT_NEAR(phi.vh.value, 1, 1e-15);
  EXPECT_NEAR(phi.hh.value, 0, 1e-15);
  EXPECT_NEAR(phi.vv.value, 0, 1e-15);
  const auto flat = correlations::correlation_set(standard_table(states::maximally_mixed()), Configuration::StandardPi4);
  EXPECT_EQ(flat.hh.value, 0.0);
  EXPECT_EQ(flat.hv.value, 0.0);
  const auto zero = correlations::estimate_antidiagonals(correlations::CorrelationSet{});
  EXPECT_EQ(zero.f_plus.value, 0.0);
  EXPECT_EQ(zero.d_minus_im.value, 0.0);
}

TEST(ReferenceCorrelations, Verdicts) {
  const auto v = correlations::entanglement_test(with_sigma(0.96, 0.0, 0.0, 0.0, 0.01));
  EXPECT_EQ(v.entangled, correlations::Verdict::Detected);
  EXPECT_EQ(v.which_bound, correlations::Bound::FBound);
  EXPECT_NEAR(v.z_score, 46.0, 1e-9);
  EXPECT_EQ(correlations::entanglement_test(with_sigma(0, 0, 0, 0, 0)).entangled, correlations::Verdict::NotDetected);
  auto exact_noise = [](double p) {
    return correlations::exact(states::antidiagonal_summary(states::white_noise(states::bell_state(BellKind::PsiPlus), p)));
  };
  EXPECT_EQ(correlations::entanglement_test(exact_noise(0.5)).entangled, correlations::Verdict::NotDetected);
  EXPECT_EQ(correlations::entanglement_test(exact_noise(0.51)).entangled, correlations::Verdict::Detected);
}

TEST(ReferenceCorrelations, Identification) {
  const auto id = correlations::identify_bell(with_sigma(0.96, 0.08, 0.0, 0.0, 0.05));
  ASSERT_TRUE(id.best.has_value());
  EXPECT_EQ(*id.best, BellKind::PsiPlus);
  EXPECT_FALSE(correlations::identify_bell(with_sigma(0, 0, 0, 0, 0)).best.has_value());
  const auto shifted = correlations::estimate_antidiagonals(correlations::correlation_set(
      standard_table(states::bell_state(BellKind::PhiPlusShifted)), Configuration::StandardPi4));
  const auto sid = correlations::identify_bell(shifted);
  EXPECT_EQ(sid.best, BellKind::PhiPlusShifted);
  EXPECT_EQ(correlations::bell_signature(BellKind::PhiPlusShifted).first, 3);  // d_minus_im
}

TEST(ReferenceCorrelations, FidelityBounds) {
  const auto psi = correlations::fidelity_bounds(states::antidiagonal_summary(states::bell_state(BellKind::PsiPlus)));
  EXPECT_NEAR(psi.psi_plus, 1, 1e-15);
  EXPECT_EQ(psi.psi_minus, 0.0);
  EXPECT_EQ(psi.phi_plus, 0.0);
  EXPECT_EQ(psi.phi_minus, 0.0);
  const auto none = correlations::fidelity_bounds({});
  EXPECT_EQ(none.psi_plus + none.psi_minus + none.phi_plus + none.phi_minus, 0.0);

  std::mt19937_64 rng(297);
  for (int i = 0; i < 500; ++i) {
    const Matrix4c rho = oracle::random_density(rng, 1 + i % 4);
    const states::PolarizationState s(rho);
    const auto b = correlations::fidelity_bounds(states::antidiagonal_summary(s));
    const double bounds[4] = {b.psi_plus, b.psi_minus, b.phi_plus, b.phi_minus};
    for (int k = 0; k < 4; ++k) {
      const Matrix4c bell = states::bell_state(states::kAllBellKinds[k]).rho();
      const double fidelity = (bell * rho).trace().real();
      EXPECT_LE(bounds[k], fidelity + 1e-12);
    }
    const auto a = oracle::antidiagonals(rho);
    EXPECT_GE(rho(0, 0).real() + rho(3, 3).real(), std::abs(a[1]) - 1e-12);
    EXPECT_GE(rho(1, 1).real() + rho(2, 2).real(), std::abs(a[0]) - 1e-12);
  }
}

TEST(ReferenceCorrelations, ChshParameters) {
  auto params = [](const states::PolarizationState& s) {
    return correlations::chsh_bell_parameters(correlations::correlation_set(
        optics::coincidence_probabilities(s, optics::chsh_configuration()), Configuration::ChshPi4));
  };
  const auto psi = params(states::bell_state(BellKind::PsiPlus));
  EXPECT_NEAR(psi.s_psi.value, 2 * kRt2, 1e-12);
  EXPECT_NEAR(psi.s_phi.value, 0.0, 1e-12);
  const auto flat = params(states::maximally_mixed());
  EXPECT_NEAR(flat.s_psi.value, 0.0, 1e-15);
  EXPECT_NEAR(flat.s_phi.value, 0.0, 1e-15);
  EXPECT_NEAR(params(states::bell_state(BellKind::PhiMinus)).s_phi.value, -2 * kRt2, 1e-12);

  // primed coefficients against their closed forms, for random states
  std::mt19937_64 rng(307);
  for (int i = 0; i < 50; ++i) {
    const Matrix4c rho = i == 0 ? states::bell_state(BellKind::PhiMinus).rho() : oracle::random_density(rng);
    const auto e = oracle::antidiagonals(rho);
    const double fp = e[0], dp = e[1], fm = e[2], dm = e[3];
    const auto c = correlations::correlation_set(
        optics::coincidence_probabilities(states::PolarizationState(rho), optics::chsh_configuration()),
        Configuration::ChshPi4);
    EXPECT_NEAR(c.hh.value, (fp - fm + dp + dm) / kRt2, 1e-12);
    EXPECT_NEAR(c.vv.value, (fp - fm - dp - dm) / kRt2, 1e-12);
    EXPECT_NEAR(c.hv.value, (-fp - fm - dp + dm) / kRt2, 1e-12);
    EXPECT_NEAR(c.vh.value, (fp + fm - dp + dm) / kRt2, 1e-12);
  }
}

TEST(ReferenceCorrelations, ChshVerdicts) {
  const auto v = correlations::chsh_verdict({{2.46, 0.26}, {0.0, 0.0}});
  EXPECT_NEAR(v.psi.z_local, 1.77, 0.01);
  EXPECT_NEAR(v.psi.z_separable, 4.0, 0.03);
  EXPECT_FALSE(v.psi.violates_local_bound);
  EXPECT_TRUE(v.psi.exceeds_separable_bound);
  EXPECT_FALSE(v.phi.violates_local_bound);
  EXPECT_FALSE(v.phi.exceeds_separable_bound);
  for (double p = 0.5; p <= 1.0; p += 0.01) {
    const double s = 2 * kRt2 * p;
    const auto w = correlations::chsh_verdict({{s, 0.0}, {0.0, 0.0}});
    EXPECT_EQ(w.psi.violates_local_bound, p > 1 / kRt2) << p;
  }
}

TEST(ReferenceCorrelations, PolarizerSinglet) {
  EXPECT_DOUBLE_EQ(correlations::standard_chsh_correlation({0.5, 0.5, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(correlations::standard_chsh_correlation({0.3, 0.3, 0.3, 0.3}), 0.0);
  // singlet (|HV> - |VH>)/sqrt2 analysed at angles a = 0, b = pi/8
  const Eigen::Vector4cd singlet(0, 1 / kRt2, -1 / kRt2, 0);
  auto pol = [](double angle, bool pass) {
    return pass ? Eigen::Vector2cd(std::cos(angle), std::sin(angle)) : Eigen::Vector2cd(-std::sin(angle), std::cos(angle));
  };
  auto prob = [&](bool pa, bool pb) {
    const auto a = pol(0.0, pa), b = pol(M_PI / 8, pb);
    Eigen::Vector4cd ab;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) ab(2 * i + k) = a(i) * b(k);
    return std::norm(ab.dot(singlet));
  };
  const double e = correlations::standard_chsh_correlation({prob(true, true), prob(false, false), prob(true, false),
                                                            prob(false, true)});
  EXPECT_NEAR(e, -std::cos(M_PI / 4), 1e-15);
}

TEST(ReferenceCountsim, IdealCountsSplitByProbability) {
  const auto p = standard_table(states::bell_state(BellKind::PsiPlus));
  const double n = 1e4;
  double total = 0.0, hh = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    countsim::ExperimentConfig c;
    c.pair_rate = n / 10.0;
    c.duration_s = 10.0;
    c.bin_width_ns = 1;
    c.rng_seed = 1000 + s;
    const auto r = countsim::simulate_counts(p, c);
    total += r.coincidences.total() / seeds;
    hh += r.coincidences.values[0] / seeds;
  }
  // Poisson totals: standard error of the mean is sqrt(N / seeds)
  EXPECT_NEAR(total, n, 4 * std::sqrt(n / seeds));
  EXPECT_NEAR(hh, n / 8, 4 * std::sqrt(n / 8 / seeds));

  countsim::ExperimentConfig dark;
  dark.pair_rate = 0.0;
  dark.duration_s = 10.0;
  dark.dark_rate.fill(100.0);
  const auto r = countsim::simulate_counts(p, dark);
  for (double s : r.singles()) EXPECT_NEAR(s, 1000.0, 5 * std::sqrt(1000.0));
  dark.dark_rate.fill(0.0);
  EXPECT_EQ(countsim::simulate_counts(p, dark).coincidences.total(), 0.0);
  for (double s : countsim::simulate_counts(p, dark).singles()) EXPECT_EQ(s, 0.0);
}

TEST(ReferenceCountsim, IdealStreamHasTwoEntriesPerPair) {
  countsim::ExperimentConfig c;
  c.pair_rate = 1e3;
  c.duration_s = 2.0;
  const auto g = countsim::generate_timestamps_with_truth(standard_table(states::bell_state(BellKind::PhiPlus)), c);
  ASSERT_EQ(g.stream.events.size(), 2 * g.truth.detected_pair_events);
  std::uint64_t pairs = 0;
  for (auto v : g.truth.pair_coincidences) pairs += v;
  EXPECT_EQ(pairs, g.truth.detected_pair_events);
  // each pair's two photons share a timestamp, hence a bin
  for (std::size_t i = 0; i + 1 < g.stream.events.size(); i += 2) {
    EXPECT_EQ(g.stream.events[i].timestamp_ns / c.bin_width_ns, g.stream.events[i + 1].timestamp_ns / c.bin_width_ns);
  }
  c.duration_s = 1e-9;
  EXPECT_TRUE(countsim::generate_timestamps(standard_table(states::maximally_mixed()), c).events.empty());
}

TEST(ReferenceCountsim, BinBoundaries) {
  countsim::TimestampStream same{{{0, 12}, {4, 14}}, 1.0};
  EXPECT_EQ(countsim::bin_and_count(same, 5).coincidences.values[channel_from_detectors(0, 4)], 1.0);
  countsim::TimestampStream split{{{0, 14}, {4, 16}}, 1.0};
  EXPECT_EQ(countsim::bin_and_count(split, 5).coincidences.total(), 0.0);
}
