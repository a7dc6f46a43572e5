#include "npi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "npi/correlations.hpp"
#include "npi/countsim.hpp"
#include "npi/errors.hpp"
#include "npi/optics.hpp"
#include "npi/serialization.hpp"
#include "npi/states.hpp"

namespace npi::cli {
namespace {

using io::Json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
  bool quiet = false;
  std::string manifest;
};

struct Context {
  const std::vector<std::string>& argv;
  const Globals& globals;
  CLI::App* command = nullptr;
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> inputs;

  void warn(const std::string& message) const {
    if (!globals.quiet) err << "warning: " << message << '\n';
  }
};

Json option_value(const CLI::Option* opt) {
  if (opt->count() == 0) {
    const std::string def = opt->get_default_str();
    if (opt->get_expected_min() == 0) return Json(false);
    return def.empty() ? Json(nullptr) : Json(def);
  }
  if (opt->get_expected_min() == 0) return Json(true);
  const auto& results = opt->results();
  if (results.size() == 1 && opt->get_expected_max() <= 1) return Json(results.front());
  return Json(results);
}

Json manifest(const Context& ctx, const std::vector<std::string>& outputs) {
  Json params = Json::object();
  for (const CLI::Option* opt : ctx.command->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    params[name] = option_value(opt);
  }
  return Json{
      {"command", ctx.command->get_name()},
      {"argv", ctx.argv},
      {"parameters", params},
      {"inputs", ctx.inputs},
      {"outputs", outputs},
      {"rng_seed", ctx.globals.seed},
      {"tool_version", kToolVersion},
  };
}

void emit_json(const Context& ctx, Json body) {
  const std::string& path = ctx.globals.out;
  body["manifest"] = manifest(ctx, path.empty() ? std::vector<std::string>{} : std::vector<std::string>{path});
  const std::string text = body.dump(2) + "\n";
  if (path.empty()) {
    ctx.out << text;
  } else {
    io::write_text_file(path, text);
  }
}

// CSV outputs carry their manifest in a sibling "<path>.manifest.json".
void emit_csv(const Context& ctx, const std::string& text, const std::string& path,
              std::vector<std::string> outputs = {}) {
  if (path.empty()) {
    ctx.out << text;
    return;
  }
  io::write_text_file(path, text);
  if (outputs.empty()) outputs.push_back(path);
  io::write_text_file(path + ".manifest.json", manifest(ctx, outputs).dump(2) + "\n");
}

states::PolarizationState load_state(Context& ctx, const std::string& path) {
  ctx.inputs.push_back(path);
  return io::state_from_json(io::read_json_file(path));
}

CLI::Option* number(CLI::App* app, const std::string& name, double& value, const std::string& description = {}) {
  return app->add_option(name, value, description)->default_str(io::format_double(value));
}

optics::Variant parse_variant(const std::string& name) {
  return name == "mz" ? optics::Variant::MachZehnder : optics::Variant::Sagnac;
}

// Either one value shared by all eight detectors or one per detector.
std::array<double, kDetectorCount> per_detector(const std::vector<double>& values, const char* flag) {
  std::array<double, kDetectorCount> out{};
  if (values.size() == 1) {
    out.fill(values.front());
  } else if (values.size() == kDetectorCount) {
    std::copy(values.begin(), values.end(), out.begin());
  } else {
    throw UsageError(std::string(flag) + " takes 1 or 8 values");
  }
  return out;
}

struct InterferometerArgs {
  std::string variant = "sagnac";
  double alpha = kPi / 4.0;
  double beta = kPi / 4.0;
  bool chsh = false;

  void add_to(CLI::App* app) {
    app->add_option("--variant", variant, "interferometer type")
        ->check(CLI::IsMember({"sagnac", "mz"}))
        ->capture_default_str();
    number(app, "--alpha", alpha, "Alice's phase (rad)");
    number(app, "--beta", beta, "Bob's phase (rad)");
    app->add_flag("--chsh", chsh, "add the pi/4 phase on the vertical input component");
  }

  optics::InterferometerConfig config() const {
    const auto v = parse_variant(variant);
    auto c = chsh ? optics::chsh_configuration(v) : optics::standard_configuration(v);
    c.alpha = alpha;
    c.beta = beta;
    return c;
  }
};

struct ExperimentArgs {
  double pair_rate;
  double duration;
  std::vector<double> efficiency;
  std::vector<double> dark;
  std::uint64_t bin_ns;

  explicit ExperimentArgs(double default_duration) {
    const auto ref = countsim::reference_experiment();
    pair_rate = ref.pair_rate;
    duration = default_duration;
    efficiency = {ref.efficiency[0]};
    dark = {ref.dark_rate[0]};
    bin_ns = ref.bin_width_ns;
  }

  void add_to(CLI::App* app) {
    number(app, "--pairs-per-sec", pair_rate, "pair emission rate");
    number(app, "--duration", duration, "integration time (s)");
    app->add_option("--efficiency", efficiency, "detector efficiency, 1 or 8 values")
        ->delimiter(',')
        ->default_str(io::format_double(efficiency.front()));
    app->add_option("--dark", dark, "dark count rate (1/s), 1 or 8 values")
        ->delimiter(',')
        ->default_str(io::format_double(dark.front()));
    app->add_option("--bin-ns", bin_ns, "coincidence bin width (ns)")->capture_default_str();
  }

  countsim::ExperimentConfig config(std::uint64_t seed) const {
    countsim::ExperimentConfig c;
    c.pair_rate = pair_rate;
    c.duration_s = duration;
    c.efficiency = per_detector(efficiency, "--efficiency");
    c.dark_rate = per_detector(dark, "--dark");
    c.bin_width_ns = bin_ns;
    c.rng_seed = seed;
    countsim::validate(c);
    return c;
  }
};

std::string fmt(double x) { return io::format_double(x); }

// --- state -----------------------------------------------------------------

struct StateArgs {
  std::string bell;
  std::optional<double> psi_theta;
  std::optional<double> phi_gamma;
  std::vector<double> separable;
  bool maximally_mixed = false;
  std::vector<std::string> mix;
  std::vector<double> weights;
  std::optional<double> white_noise;
  std::string label;
};

void cmd_state(Context& ctx, const StateArgs& a) {
  const int bases = !a.bell.empty() + a.psi_theta.has_value() + a.phi_gamma.has_value() + !a.separable.empty() +
                    a.maximally_mixed + !a.mix.empty();
  if (bases != 1) {
    throw UsageError("give exactly one of --bell, --psi-theta, --phi-gamma, --separable, --maximally-mixed, --mix");
  }
  if (!a.weights.empty() && a.mix.empty()) throw UsageError("--weights needs --mix");

  std::optional<states::PolarizationState> state;
  if (!a.bell.empty()) {
    const auto kind = states::parse_bell_kind(a.bell);
    if (!kind) throw UsageError("unknown Bell kind '" + a.bell + "'");
    state = states::bell_state(*kind);
  } else if (a.psi_theta) {
    state = states::psi_theta(*a.psi_theta);
  } else if (a.phi_gamma) {
    state = states::phi_gamma(*a.phi_gamma);
  } else if (!a.separable.empty()) {
    state = states::separable_pure(a.separable[0], a.separable[1], a.separable[2], a.separable[3]);
  } else if (a.maximally_mixed) {
    state = states::maximally_mixed();
  } else {
    std::vector<states::PolarizationState> parts;
    for (const auto& path : a.mix) parts.push_back(load_state(ctx, path));
    std::vector<double> w = a.weights;
    if (w.empty()) w.assign(parts.size(), 1.0 / static_cast<double>(parts.size()));
    if (w.size() != parts.size()) throw UsageError("--weights must match the number of --mix files");
    state = states::mix(parts, w);
  }
  if (a.white_noise) state = states::white_noise(*state, *a.white_noise);
  if (!a.label.empty()) state = states::PolarizationState(state->rho(), a.label);
  emit_json(ctx, io::to_json(*state));
}

std::string describe_state(const StateArgs& a) {
  std::string base;
  if (!a.bell.empty()) base = a.bell;
  else if (a.psi_theta) base = "psi_theta(" + fmt(*a.psi_theta) + ")";
  else if (a.phi_gamma) base = "phi_gamma(" + fmt(*a.phi_gamma) + ")";
  else if (!a.separable.empty()) base = "separable";
  else if (a.maximally_mixed) base = "maximally_mixed";
  else base = "mixture";
  if (a.white_noise) base = "white_noise(" + fmt(*a.white_noise) + ", " + base + ")";
  return base;
}

// --- simulate --------------------------------------------------------------

void cmd_simulate(Context& ctx, const std::string& state_path, const InterferometerArgs& ia) {
  const auto state = load_state(ctx, state_path);
  const auto config = ia.config();
  Json body = io::to_json(optics::coincidence_probabilities(state, config));
  body["interferometer"] = io::to_json(config);
  emit_json(ctx, std::move(body));
}

// --- mc --------------------------------------------------------------------

void cmd_mc(Context& ctx, const std::string& state_path, const InterferometerArgs& ia, const ExperimentArgs& ea,
            const std::string& emit, const std::string& timestamps_out) {
  const auto state = load_state(ctx, state_path);
  const auto interferometer = ia.config();
  const auto experiment = ea.config(ctx.globals.seed);
  const auto probabilities = optics::coincidence_probabilities(state, interferometer);

  auto counts_json = [&](const countsim::CountsRecord& record) {
    Json body = io::to_json(record);
    body["bin_width_ns"] = experiment.bin_width_ns;
    body["experiment"] = io::to_json(experiment);
    body["interferometer"] = io::to_json(interferometer);
    return body;
  };

  if (emit == "counts") {
    emit_json(ctx, counts_json(countsim::simulate_counts(probabilities, experiment)));
    return;
  }

  const auto stream = countsim::generate_timestamps(probabilities, experiment);
  std::ostringstream csv;
  io::write_timestamps_csv(csv, stream);
  if (emit == "timestamps") {
    emit_csv(ctx, csv.str(), ctx.globals.out);
    return;
  }
  if (timestamps_out.empty()) throw UsageError("--emit both needs --timestamps-out");
  if (ctx.globals.out.empty()) throw UsageError("--emit both needs --out for the counts file");
  io::write_text_file(timestamps_out, csv.str());
  Json body = counts_json(countsim::bin_and_count(stream, experiment.bin_width_ns));
  body["timestamps_file"] = timestamps_out;
  emit_json(ctx, std::move(body));
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string counts;
  std::string timestamps;
  double duration = 0.0;
  std::uint64_t bin_ns = 5;
  std::string calibration;
  std::string mode = "standard";
  std::string variant = "sagnac";
  double z = correlations::kDefaultSignificance;
};

void cmd_analyze(Context& ctx, const AnalyzeArgs& a) {
  if (a.counts.empty() == a.timestamps.empty()) throw UsageError("give exactly one of --counts, --timestamps");
  const auto configuration =
      a.mode == "chsh" ? correlations::Configuration::ChshPi4 : correlations::Configuration::StandardPi4;
  const auto variant = parse_variant(a.variant);

  Json pipeline;
  std::optional<correlations::AnalysisReport> report;
  countsim::CountsRecord record;
  Json counts_json;
  if (!a.counts.empty()) {
    ctx.inputs.push_back(a.counts);
    counts_json = io::read_json_file(a.counts);
  }
  if (counts_json.is_object() && counts_json.value("kind", "") == "probability") {
    // A simulated probability table goes straight to the estimators.
    if (!a.calibration.empty()) throw UsageError("--calibration applies to counts, not probability tables");
    report = correlations::analyze(io::table_from_json(counts_json), configuration, variant, a.z);
    pipeline = Json{{"source", "probability"}};
  } else {
    if (!a.counts.empty()) {
      record = io::counts_from_json(counts_json);
    } else {
      ctx.inputs.push_back(a.timestamps);
      std::ifstream in(a.timestamps);
      if (!in) throw FormatError("cannot open " + a.timestamps);
      record = countsim::bin_and_count(io::read_timestamps_csv(in, a.duration), a.bin_ns);
    }
    if (!record.accidental_corrected) record = countsim::accidental_correction(record, a.bin_ns);
    if (!a.calibration.empty()) {
      ctx.inputs.push_back(a.calibration);
      record = countsim::normalize(record, io::calibration_from_json(io::read_json_file(a.calibration)));
    } else if (!record.normalized) {
      ctx.warn("no calibration given; analysing un-normalized counts");
    }
    report = correlations::analyze(countsim::analysis_table(record), configuration, variant, a.z);
    pipeline = Json{{"source", a.counts.empty() ? "timestamps" : "counts"},
                    {"accidental_corrected", record.accidental_corrected},
                    {"normalized", record.normalized},
                    {"coincidence_total", record.coincidences.total()},
                    {"duration_s", record.duration_s}};
  }

  Json body = io::to_json(*report);
  body["pipeline"] = pipeline;
  emit_json(ctx, std::move(body));
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string family = "psi";
  double start = 0.0;
  double stop = kPi;
  std::size_t points = 25;
  std::vector<double> phases;
  std::string mode = "analytic";
  std::string calibration;
  ExperimentArgs experiment{5.0};
  std::string variant = "sagnac";
};

void cmd_sweep(Context& ctx, const SweepArgs& a) {
  std::vector<double> grid = a.phases;
  if (grid.empty()) {
    if (a.points == 0) throw UsageError("empty grid");
    for (std::size_t i = 0; i < a.points; ++i) {
      grid.push_back(a.points == 1 ? a.start
                                   : a.start + (a.stop - a.start) * static_cast<double>(i) /
                                                   static_cast<double>(a.points - 1));
    }
  }

  std::optional<countsim::CalibrationRecord> calibration;
  if (!a.calibration.empty()) {
    ctx.inputs.push_back(a.calibration);
    calibration = io::calibration_from_json(io::read_json_file(a.calibration));
  }
  const auto variant = parse_variant(a.variant);
  const auto interferometer = optics::standard_configuration(variant);
  const bool psi = a.family == "psi";

  std::ostringstream csv;
  csv << "phase_rad,estimate,sigma\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto state = psi ? states::psi_theta(grid[i]) : states::phi_gamma(grid[i]);
    const auto probabilities = optics::coincidence_probabilities(state, interferometer);
    correlations::CorrelationSet set;
    if (a.mode == "analytic") {
      set = correlations::correlation_set(probabilities, correlations::Configuration::StandardPi4, variant);
    } else {
      auto record = countsim::simulate_counts(probabilities, a.experiment.config(derive_seed(ctx.globals.seed, i)));
      record = countsim::accidental_correction(record, a.experiment.bin_ns);
      if (calibration) record = countsim::normalize(record, *calibration);
      set = correlations::correlation_set(countsim::analysis_table(record), correlations::Configuration::StandardPi4,
                                          variant);
    }
    const auto est = correlations::estimate_antidiagonals(set);
    const auto& e = psi ? est.f_plus : est.d_plus;
    csv << fmt(grid[i]) << ',' << fmt(e.value) << ',' << fmt(e.sigma) << '\n';
  }
  emit_csv(ctx, csv.str(), ctx.globals.out);
}

// --- calibrate -------------------------------------------------------------

void cmd_calibrate(Context& ctx, const std::string& counts, bool correct, std::uint64_t bin_ns,
                   const std::string& tag) {
  ctx.inputs.push_back(counts);
  auto record = io::counts_from_json(io::read_json_file(counts));
  if (!record.accidental_corrected) {
    if (!correct) throw PipelineOrderError("counts are not accidental-corrected (pass --correct to correct them)");
    record = countsim::accidental_correction(record, bin_ns);
  }
  emit_json(ctx, io::to_json(countsim::calibrate(record, tag)));
}

// --- driver ----------------------------------------------------------------

bool is_flag(const std::string& arg, const std::string& name) {
  return arg == name || arg.rfind(name + "=", 0) == 0;
}

// Pulls "--name value" or "--name=value" out of args.
std::optional<std::string> take_option(std::vector<std::string>& args, const std::string& name) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == name) {
      if (i + 1 >= args.size()) throw UsageError(name + " needs a value");
      std::string value = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      return value;
    }
    if (is_flag(args[i], name)) {
      std::string value = args[i].substr(name.size() + 1);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      return value;
    }
  }
  return std::nullopt;
}

std::vector<std::string> expand_manifest(std::vector<std::string> args) {
  const auto path = take_option(args, "--manifest");
  if (!path) return args;
  const auto out = take_option(args, "--out");
  const bool quiet = std::erase(args, std::string("--quiet")) > 0;
  if (!args.empty()) throw UsageError("--manifest combines only with --out and --quiet");

  const Json file = io::read_json_file(*path);
  const Json& m = file.contains("manifest") ? file.at("manifest") : file;
  std::vector<std::string> argv;
  try {
    argv = m.at("argv").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw FormatError(*path + ": not a run manifest (" + e.what() + ")");
  }
  if (out) {
    take_option(argv, "--out");
    argv.push_back("--out");
    argv.push_back(*out);
  }
  if (quiet && std::find(argv.begin(), argv.end(), "--quiet") == argv.end()) argv.push_back("--quiet");
  return argv;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlocal polarization interferometer simulation and analysis"};
  app.name("npi");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  Globals globals;
  app.add_option("--out", globals.out, "output file (default: stdout)");
  app.add_option("--seed", globals.seed, "random seed")->capture_default_str();
  app.add_flag("--quiet", globals.quiet, "suppress warnings");
  app.add_option("--manifest", globals.manifest, "rerun the command recorded in a manifest");

  StateArgs state_args;
  auto* state = app.add_subcommand("state", "write a two-photon polarization state");
  state->add_option("--bell", state_args.bell, "psi+ psi- phi+ phi- psi+s psi-s phi+s phi-s");
  state->add_option("--psi-theta", state_args.psi_theta, "(|HV> + e^{i theta}|VH>)/sqrt2");
  state->add_option("--phi-gamma", state_args.phi_gamma, "(|HH> + e^{i gamma}|VV>)/sqrt2");
  state->add_option("--separable", state_args.separable, "a,theta_a,b,theta_b")->expected(4)->delimiter(',');
  state->add_flag("--maximally-mixed", state_args.maximally_mixed);
  state->add_option("--mix", state_args.mix, "state files to mix")->expected(1, -1)->check(CLI::ExistingFile);
  state->add_option("--weights", state_args.weights, "mixture weights")->expected(1, -1);
  state->add_option("--white-noise", state_args.white_noise, "keep weight p, add (1-p) I/4");
  state->add_option("--label", state_args.label);

  std::string state_path;
  InterferometerArgs sim_ia;
  auto* simulate = app.add_subcommand("simulate", "coincidence probabilities for a state");
  simulate->add_option("--state", state_path, "state JSON")->required();
  sim_ia.add_to(simulate);

  InterferometerArgs mc_ia;
  ExperimentArgs mc_ea{100.0};
  std::string emit = "counts";
  std::string timestamps_out;
  auto* mc = app.add_subcommand("mc", "Monte Carlo counts or detection timestamps");
  mc->add_option("--state", state_path, "state JSON")->required();
  mc_ia.add_to(mc);
  mc_ea.add_to(mc);
  mc->add_option("--emit", emit)->check(CLI::IsMember({"counts", "timestamps", "both"}))->capture_default_str();
  mc->add_option("--timestamps-out", timestamps_out, "timestamp CSV path for --emit both");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "correlation analysis of counts or timestamps");
  auto* counts_opt = analyze->add_option("--counts", analyze_args.counts, "counts or probability table JSON");
  analyze->add_option("--timestamps", analyze_args.timestamps, "timestamp CSV")->excludes(counts_opt);
  analyze->add_option("--duration", analyze_args.duration, "timestamp run length (s); default from last event");
  analyze->add_option("--bin-ns", analyze_args.bin_ns, "coincidence bin width (ns)")->capture_default_str();
  analyze->add_option("--calibration", analyze_args.calibration, "calibration JSON");
  analyze->add_option("--mode", analyze_args.mode)->check(CLI::IsMember({"standard", "chsh"}))->capture_default_str();
  analyze->add_option("--variant", analyze_args.variant)
      ->check(CLI::IsMember({"sagnac", "mz"}))
      ->capture_default_str();
  number(analyze, "--z", analyze_args.z, "significance in standard deviations");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "estimate versus phase for psi(theta) or phi(gamma)");
  sweep->add_option("--family", sweep_args.family)->check(CLI::IsMember({"psi", "phi"}))->capture_default_str();
  number(sweep, "--start", sweep_args.start);
  number(sweep, "--stop", sweep_args.stop);
  sweep->add_option("--points", sweep_args.points)->capture_default_str();
  sweep->add_option("--phases", sweep_args.phases, "explicit grid (rad)")->delimiter(',');
  sweep->add_option("--mode", sweep_args.mode)->check(CLI::IsMember({"analytic", "mc"}))->capture_default_str();
  sweep->add_option("--calibration", sweep_args.calibration, "calibration JSON for mc mode");
  sweep->add_option("--variant", sweep_args.variant)->check(CLI::IsMember({"sagnac", "mz"}))->capture_default_str();
  sweep_args.experiment.add_to(sweep);

  std::string cal_counts;
  bool cal_correct = false;
  std::uint64_t cal_bin_ns = 5;
  std::string cal_tag = "unentangled";
  auto* calibrate = app.add_subcommand("calibrate", "relative channel efficiencies from an unentangled run");
  calibrate->add_option("--counts", cal_counts, "counts JSON")->required();
  calibrate->add_flag("--correct", cal_correct, "apply the accidental correction first");
  calibrate->add_option("--bin-ns", cal_bin_ns)->capture_default_str();
  calibrate->add_option("--tag", cal_tag)->capture_default_str();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<const char*> argv{"npi"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Context ctx{args, globals, nullptr, out, err, {}};
  ctx.command = app.get_subcommands().front();
  const std::string name = ctx.command->get_name();
  if (name == "state") {
    if (state_args.label.empty()) state_args.label = describe_state(state_args);
    cmd_state(ctx, state_args);
  } else if (name == "simulate") {
    cmd_simulate(ctx, state_path, sim_ia);
  } else if (name == "mc") {
    cmd_mc(ctx, state_path, mc_ia, mc_ea, emit, timestamps_out);
  } else if (name == "analyze") {
    cmd_analyze(ctx, analyze_args);
  } else if (name == "sweep") {
    cmd_sweep(ctx, sweep_args);
  } else {
    cmd_calibrate(ctx, cal_counts, cal_correct, cal_bin_ns, cal_tag);
  }
  return kSuccess;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over (seed, index)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(expand_manifest(args), out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace npi::cli
