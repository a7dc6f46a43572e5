#include "npi/correlations.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "npi/errors.hpp"

namespace npi::correlations {
namespace {

using optics::CoincidenceTable;
using states::BellKind;

constexpr double kInf = std::numeric_limits<double>::infinity();

double quadrature(double a, double b) { return std::hypot(a, b); }

Estimate coefficient(const CoincidenceTable& table, Polarization j, Polarization s) {
  const std::array<std::size_t, 4> channels = {
      channel_index(j, 0, s, 0), channel_index(j, 1, s, 1),  // same parity
      channel_index(j, 0, s, 1), channel_index(j, 1, s, 0),  // opposite parity
  };
  constexpr std::array<double, 4> sign = {1.0, 1.0, -1.0, -1.0};

  double numerator = 0.0;
  double denominator = 0.0;
  for (int k = 0; k < 4; ++k) {
    numerator += sign[k] * table.values[channels[k]];
    denominator += table.values[channels[k]];
  }
  if (!(denominator > 0.0)) throw ZeroDenominator("coincidence quadruple sums to zero");
  const double e = numerator / denominator;

  // dE/dv_k = (sign_k - E) / denominator
  double variance = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double grad = (sign[k] - e) / denominator;
    variance += grad * grad * table.variance(channels[k]);
  }
  return Estimate{e, std::sqrt(variance)};
}

// Orthogonal coefficients of the Mach-Zehnder device have the opposite sign.
double orthogonal_sign(optics::Variant variant) {
  return variant == optics::Variant::MachZehnder ? -1.0 : 1.0;
}

// z-score of |value| against `bound`; for exact inputs only the sign matters.
double z_against(double magnitude, double bound, double sigma) {
  if (sigma > 0.0) return (magnitude - bound) / sigma;
  if (magnitude > bound) return kInf;
  if (magnitude < bound) return -kInf;
  return 0.0;
}

bool exceeds(double magnitude, double bound, double sigma, double z_star) {
  return sigma > 0.0 ? (magnitude - bound) / sigma >= z_star : magnitude > bound;
}

bool clearly_below(double magnitude, double bound, double sigma, double z_star) {
  return sigma > 0.0 ? (bound - magnitude) / sigma >= z_star : magnitude <= bound;
}

}  // namespace

CorrelationSet correlation_set(const CoincidenceTable& table, Configuration configuration,
                               optics::Variant variant) {
  optics::validate(table);
  using P = Polarization;
  return CorrelationSet{
      .hh = coefficient(table, P::H, P::H),
      .vv = coefficient(table, P::V, P::V),
      .hv = coefficient(table, P::H, P::V),
      .vh = coefficient(table, P::V, P::H),
      .configuration = configuration,
      .variant = variant,
  };
}

CorrelationSet bootstrap_correlation_set(const CoincidenceTable& counts, Configuration configuration,
                                         optics::Variant variant, int resamples, std::uint64_t seed) {
  if (resamples < 2) throw RangeError("bootstrap needs at least two resamples");
  CorrelationSet result = correlation_set(counts, configuration, variant);

  std::mt19937_64 rng(seed);
  std::array<double, 4> sum{};
  std::array<double, 4> sum_sq{};
  int accepted = 0;
  for (int r = 0; r < resamples; ++r) {
    CoincidenceTable draw = counts;
    draw.variances.reset();
    for (double& v : draw.values) {
      v = v > 0.0 ? static_cast<double>(std::poisson_distribution<std::int64_t>(v)(rng)) : 0.0;
    }
    try {
      const CorrelationSet s = correlation_set(draw, configuration, variant);
      const std::array<double, 4> e = {s.hh.value, s.vv.value, s.hv.value, s.vh.value};
      for (int k = 0; k < 4; ++k) {
        sum[k] += e[k];
        sum_sq[k] += e[k] * e[k];
      }
      ++accepted;
    } catch (const ZeroDenominator&) {
      // an empty resampled quadruple carries no information about the spread
    }
  }
  if (accepted < 2) throw ZeroDenominator("too few usable bootstrap resamples");
  std::array<Estimate*, 4> targets = {&result.hh, &result.vv, &result.hv, &result.vh};
  for (int k = 0; k < 4; ++k) {
    const double mean = sum[k] / accepted;
    const double var = (sum_sq[k] - accepted * mean * mean) / (accepted - 1);
    targets[k]->sigma = std::sqrt(std::max(var, 0.0));
  }
  return result;
}

AntidiagonalEstimate estimate_antidiagonals(const CorrelationSet& set) {
  if (set.configuration != Configuration::StandardPi4) {
    throw ConfigurationError("anti-diagonal recovery needs the standard configuration");
  }
  const double k = orthogonal_sign(set.variant);
  const double hv = k * set.hv.value;
  const double vh = k * set.vh.value;
  // Signs of the imaginary parts are fixed against direct propagation:
  //   E_HH - E_VV = 2 i(d-d*),  E_VH - E_HV = 2 i(f-f*).
  const double parallel_sigma = quadrature(set.hh.sigma, set.vv.sigma) / 2.0;
  const double orthogonal_sigma = quadrature(set.hv.sigma, set.vh.sigma) / 2.0;
  return AntidiagonalEstimate{
      .f_plus = {(set.hh.value + set.vv.value) / 2.0, parallel_sigma},
      .d_plus = {(-hv - vh) / 2.0, orthogonal_sigma},
      .f_minus_im = {(vh - hv) / 2.0, orthogonal_sigma},
      .d_minus_im = {(set.hh.value - set.vv.value) / 2.0, parallel_sigma},
  };
}

AntidiagonalEstimate exact(const states::AntidiagonalSummary& summary) {
  return AntidiagonalEstimate{
      .f_plus = {summary.f_plus, 0.0},
      .d_plus = {summary.d_plus, 0.0},
      .f_minus_im = {summary.f_minus_im, 0.0},
      .d_minus_im = {summary.d_minus_im, 0.0},
  };
}

EntanglementVerdict entanglement_test(const AntidiagonalEstimate& estimate, double z_star) {
  const Estimate f = estimate.f_plus;
  const Estimate d = estimate.d_plus;
  if (f.sigma < 0.0 || d.sigma < 0.0) throw RangeError("standard deviations must be nonnegative");

  EntanglementVerdict verdict{.f_plus = f, .d_plus = d};
  const double z_f = z_against(std::abs(f.value), 0.5, f.sigma);
  const double z_d = z_against(std::abs(d.value), 0.5, d.sigma);
  const bool f_detected = exceeds(std::abs(f.value), 0.5, f.sigma, z_star);
  const bool d_detected = exceeds(std::abs(d.value), 0.5, d.sigma, z_star);

  if (f_detected || d_detected) {
    verdict.entangled = Verdict::Detected;
    const bool use_f = f_detected && (!d_detected || z_f >= z_d);
    verdict.which_bound = use_f ? Bound::FBound : Bound::DBound;
    verdict.z_score = use_f ? z_f : z_d;
    return verdict;
  }
  verdict.z_score = std::max(z_f, z_d);
  const bool below = clearly_below(std::abs(f.value), 0.5, f.sigma, z_star) &&
                     clearly_below(std::abs(d.value), 0.5, d.sigma, z_star);
  verdict.entangled = below ? Verdict::NotDetected : Verdict::Inconclusive;
  return verdict;
}

std::pair<int, int> bell_signature(BellKind kind) {
  switch (kind) {
    case BellKind::PsiPlus: return {0, 1};
    case BellKind::PsiMinus: return {0, -1};
    case BellKind::PhiPlus: return {1, 1};
    case BellKind::PhiMinus: return {1, -1};
    case BellKind::PsiPlusShifted: return {2, 1};
    case BellKind::PsiMinusShifted: return {2, -1};
    case BellKind::PhiPlusShifted: return {3, 1};
    case BellKind::PhiMinusShifted: return {3, -1};
  }
  return {0, 1};
}

BellIdentification identify_bell(const AntidiagonalEstimate& estimate, double z_star) {
  const std::array<Estimate, 4> coords = {estimate.f_plus, estimate.d_plus, estimate.f_minus_im,
                                          estimate.d_minus_im};
  BellIdentification id;
  id.estimates = estimate;
  double best_distance = kInf;
  for (BellKind kind : states::kAllBellKinds) {
    const auto [axis, sign] = bell_signature(kind);
    double d2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double target = (k == axis) ? sign : 0.0;
      d2 += (coords[k].value - target) * (coords[k].value - target);
    }
    if (d2 < best_distance) {
      best_distance = d2;
      id.nearest = kind;
    }
  }
  id.distance = std::sqrt(best_distance);

  const auto [axis, sign] = bell_signature(id.nearest);
  const Estimate winner = coords[axis];
  if (sign * winner.value > 0.0 && exceeds(std::abs(winner.value), 0.5, winner.sigma, z_star)) {
    id.best = id.nearest;
  }
  return id;
}

FidelityBounds fidelity_bounds(const states::AntidiagonalSummary& summary) {
  const double f = summary.f_plus;
  const double d = summary.d_plus;
  return FidelityBounds{
      .psi_plus = (std::abs(f) + f) / 2.0,
      .psi_minus = (std::abs(f) - f) / 2.0,
      .phi_plus = (std::abs(d) + d) / 2.0,
      .phi_minus = (std::abs(d) - d) / 2.0,
  };
}

BellParameters chsh_bell_parameters(const CorrelationSet& set) {
  if (set.configuration != Configuration::ChshPi4) {
    throw ConfigurationError("Bell parameters need the CHSH configuration");
  }
  const double k = orthogonal_sign(set.variant);
  const double hh = set.hh.value;
  const double vv = set.vv.value;
  const double hv = k * set.hv.value;
  const double vh = k * set.vh.value;
  const double sigma = std::sqrt(set.hh.sigma * set.hh.sigma + set.vv.sigma * set.vv.sigma +
                                 set.hv.sigma * set.hv.sigma + set.vh.sigma * set.vh.sigma);
  return BellParameters{
      .s_psi = {hh + vv - hv + vh, sigma},
      .s_phi = {hh - vv - hv - vh, sigma},
  };
}

ChshVerdict chsh_verdict(const BellParameters& params, double z_star) {
  auto judge = [z_star](const Estimate& s) {
    const double magnitude = std::abs(s.value);
    return ParameterVerdict{
        .violates_local_bound = exceeds(magnitude, 2.0, s.sigma, z_star),
        .exceeds_separable_bound = exceeds(magnitude, kSqrt2, s.sigma, z_star),
        .z_local = z_against(magnitude, 2.0, s.sigma),
        .z_separable = z_against(magnitude, kSqrt2, s.sigma),
    };
  };
  return ChshVerdict{.psi = judge(params.s_psi), .phi = judge(params.s_phi)};
}

double standard_chsh_correlation(const PolarizerOutcomes& p) {
  if (p.hh < 0 || p.vv < 0 || p.hv < 0 || p.vh < 0) throw RangeError("outcomes must be nonnegative");
  const double total = p.hh + p.vv + p.hv + p.vh;
  if (!(total > 0.0)) throw ZeroDenominator("polarizer outcomes sum to zero");
  return (p.hh + p.vv - p.hv - p.vh) / total;
}

Estimate standard_chsh_correlation_counts(const PolarizerOutcomes& c) {
  const double e = standard_chsh_correlation(c);
  const double total = c.hh + c.vv + c.hv + c.vh;
  const double same = c.hh + c.vv;
  const double opposite = c.hv + c.vh;
  return Estimate{e, 2.0 * std::sqrt(same * opposite / (total * total * total))};
}

AnalysisReport analyze(const CoincidenceTable& table, Configuration configuration, optics::Variant variant,
                       double z_star) {
  AnalysisReport report;
  report.correlations = correlation_set(table, configuration, variant);
  if (configuration == Configuration::StandardPi4) {
    report.antidiagonals = estimate_antidiagonals(report.correlations);
    report.verdict = entanglement_test(*report.antidiagonals, z_star);
    report.identification = identify_bell(*report.antidiagonals, z_star);
    report.fidelity = fidelity_bounds(report.antidiagonals->point());
  } else {
    report.bell_parameters = chsh_bell_parameters(report.correlations);
    report.chsh = chsh_verdict(*report.bell_parameters, z_star);
  }
  return report;
}

}  // namespace npi::correlations
