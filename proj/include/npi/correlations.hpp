#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "npi/optics.hpp"
#include "npi/states.hpp"

namespace npi::correlations {

struct Estimate {
  double value = 0.0;
  double sigma = 0.0;
};

enum class Configuration { StandardPi4, ChshPi4 };

inline constexpr double kDefaultSignificance = 3.0;

/// Port-parity correlation coefficients for the four polarization pairs (Alice
/// polarization first). `variant` records which device produced the data; the
/// orthogonal coefficients of the Mach-Zehnder device carry the opposite sign
/// to the Sagnac device and are normalized during recovery.
struct CorrelationSet {
  Estimate hh;
  Estimate vv;
  Estimate hv;
  Estimate vh;
  Configuration configuration = Configuration::StandardPi4;
  optics::Variant variant = optics::Variant::Sagnac;
};

/// E_js = [v(0,0) + v(1,1) - v(0,1) - v(1,0)] / [sum of the four], where v(y,z)
/// is the (jAy, sBz) entry. For count tables sigma comes from first-order
/// propagation of the per-channel variances. Throws ZeroDenominator.
CorrelationSet correlation_set(const optics::CoincidenceTable& table, Configuration configuration,
                               optics::Variant variant = optics::Variant::Sagnac);

/// Poisson-resampled standard deviations of the four coefficients; the point
/// values are those of correlation_set.
CorrelationSet bootstrap_correlation_set(const optics::CoincidenceTable& counts, Configuration configuration,
                                         optics::Variant variant, int resamples, std::uint64_t seed);

struct AntidiagonalEstimate {
  Estimate f_plus;
  Estimate d_plus;
  Estimate f_minus_im;
  Estimate d_minus_im;

  states::AntidiagonalSummary point() const {
    return {f_plus.value, d_plus.value, f_minus_im.value, d_minus_im.value};
  }
};

/// Recovers f+f*, d+d*, i(f-f*), i(d-d*) from a standard-configuration set.
/// Throws ConfigurationError on a CHSH set.
AntidiagonalEstimate estimate_antidiagonals(const CorrelationSet& set);

/// Exact summary with zero uncertainty.
AntidiagonalEstimate exact(const states::AntidiagonalSummary& summary);

enum class Verdict { Detected, NotDetected, Inconclusive };
enum class Bound { FBound, DBound, None };

struct EntanglementVerdict {
  Estimate f_plus;
  Estimate d_plus;
  Verdict entangled = Verdict::Inconclusive;
  double z_score = 0.0;
  Bound which_bound = Bound::None;
};

/// Separable states obey |f+f*| <= 1/2 and |d+d*| <= 1/2. Detected when either
/// magnitude exceeds 1/2 by at least z_star sigma (strictly, for sigma = 0);
/// NotDetected when both are below by at least z_star sigma (or <= 1/2 exactly).
EntanglementVerdict entanglement_test(const AntidiagonalEstimate& estimate,
                                      double z_star = kDefaultSignificance);

struct BellIdentification {
  std::optional<states::BellKind> best;
  states::BellKind nearest = states::BellKind::PsiPlus;
  double distance = 0.0;
  AntidiagonalEstimate estimates;
};

/// Nearest of the eight Bell signatures in (f+f*, d+d*, i(f-f*), i(d-d*)) space.
/// `best` is set only when the winning coordinate exceeds 1/2 in magnitude at
/// significance z_star.
BellIdentification identify_bell(const AntidiagonalEstimate& estimate, double z_star = kDefaultSignificance);

/// Signature of a Bell kind: the coordinate (0 f+, 1 d+, 2 i(f-f*), 3 i(d-d*))
/// and its sign.
std::pair<int, int> bell_signature(states::BellKind kind);

struct FidelityBounds {
  double psi_plus = 0.0;
  double psi_minus = 0.0;
  double phi_plus = 0.0;
  double phi_minus = 0.0;
};

FidelityBounds fidelity_bounds(const states::AntidiagonalSummary& summary);

struct BellParameters {
  Estimate s_psi;
  Estimate s_phi;
};

/// S_psi = E'_HH + E'_VV - E'_HV + E'_VH = 2 sqrt2 (f+f*) and
/// S_phi = E'_HH - E'_VV - E'_HV - E'_VH = 2 sqrt2 (d+d*).
/// Throws ConfigurationError on a standard set.
BellParameters chsh_bell_parameters(const CorrelationSet& set);

struct ParameterVerdict {
  bool violates_local_bound = false;
  bool exceeds_separable_bound = false;
  double z_local = 0.0;
  double z_separable = 0.0;
};

struct ChshVerdict {
  ParameterVerdict psi;
  ParameterVerdict phi;
};

/// |S| > 2 rules out local realism; |S| > sqrt2 rules out separable states.
/// With sigma > 0 a bound counts as exceeded when its z-score reaches z_star;
/// with sigma = 0 the comparison is strict.
ChshVerdict chsh_verdict(const BellParameters& params, double z_star = kDefaultSignificance);

/// Coincidence probabilities (or counts) of a conventional polarizer-based
/// CHSH measurement at one pair of settings.
struct PolarizerOutcomes {
  double hh = 0.0;
  double vv = 0.0;
  double hv = 0.0;
  double vh = 0.0;
};

/// E(a,b) = (P_HH + P_VV - P_HV - P_VH) / (sum). Throws ZeroDenominator.
double standard_chsh_correlation(const PolarizerOutcomes& outcomes);

/// Same estimator treating the inputs as Poisson counts.
Estimate standard_chsh_correlation_counts(const PolarizerOutcomes& counts);

/// Everything derived from one table: the standard report (anti-diagonals,
/// verdict, Bell ID, fidelity bounds) or the CHSH report (S parameters and
/// verdicts).
struct AnalysisReport {
  CorrelationSet correlations;
  std::optional<AntidiagonalEstimate> antidiagonals;
  std::optional<EntanglementVerdict> verdict;
  std::optional<BellIdentification> identification;
  std::optional<FidelityBounds> fidelity;
  std::optional<BellParameters> bell_parameters;
  std::optional<ChshVerdict> chsh;
};

AnalysisReport analyze(const optics::CoincidenceTable& table, Configuration configuration,
                       optics::Variant variant = optics::Variant::Sagnac,
                       double z_star = kDefaultSignificance);

}  // namespace npi::correlations
