#include "phimap/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "phimap/criteria.hpp"
#include "phimap/random.hpp"
#include "phimap/spin.hpp"
#include "phimap/state_io.hpp"
#include "phimap/states.hpp"
#include "phimap/witness.hpp"

namespace phimap::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct GlobalFlags {
  double tol = kDefaultTolerance;
  bool json = false;
  std::uint64_t seed = 1;
  std::string out;
};

// Argument problems detected after parsing; mapped to kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.6e", x);
  return buf;
}

std::string join(const std::vector<std::string>& args) {
  std::string s = "phimap";
  for (const auto& a : args) s += " " + a;
  return s;
}

json to_json(const CriterionReport& r) {
  json j{{"criterion", std::string(to_string(r.criterion))},
         {"verdict", r.skipped ? "Skipped" : std::string(to_string(r.verdict))},
         {"detail", r.detail}};
  if (r.skipped) {
    j["score"] = nullptr;
  } else {
    j["score"] = r.score;
  }
  return j;
}

void print_reports(std::ostream& out, const std::vector<CriterionReport>& reps) {
  out << std::left << std::setw(14) << "criterion" << std::setw(14) << "verdict" << std::setw(16)
      << "score" << "detail\n";
  for (const auto& r : reps) {
    out << std::setw(14) << to_string(r.criterion) << std::setw(14)
        << (r.skipped ? "Skipped" : std::string(to_string(r.verdict))) << std::setw(16)
        << (r.skipped ? std::string("-") : sci(r.score)) << r.detail << "\n";
  }
  out << std::right;
}

bool witness_applicable(Dims dims) { return dims.d1 == dims.d2 && dims.d1 >= 4 && dims.d1 % 2 == 0; }

std::size_t checked_family_n(int n) {
  if (n < 4 || n % 2 != 0) {
    throw UsageError("--N must be an even integer >= 4 (got " + std::to_string(n) + ")");
  }
  return static_cast<std::size_t>(n);
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Analysis of one state plus the witness value when W is defined.
struct StateAnalysis {
  std::vector<CriterionReport> reports;
  std::optional<double> witness;
};

StateAnalysis analyze_state(const DensityState& rho, double tol) {
  StateAnalysis a{analyze(rho, tol), std::nullopt};
  if (witness_applicable(rho.dims())) a.witness = witness_expectation(build_witness(rho.dims().d1), rho);
  return a;
}

void emit_analysis(std::ostream& out, const GlobalFlags& g, const std::string& echo,
                   const std::string& digest, const StateAnalysis& a, Dims dims, Clock::time_point start,
                   json extra = json::object()) {
  if (g.json) {
    json j = std::move(extra);
    j["command"] = echo;
    j["input_digest"] = digest;
    j["dims"] = {dims.d1, dims.d2};
    j["criteria"] = json::array();
    for (const auto& r : a.reports) j["criteria"].push_back(to_json(r));
    j["witness_expectation"] = a.witness ? json(*a.witness) : json(nullptr);
    j["wall_time_ms"] = elapsed_ms(start);
    out << j.dump(2) << "\n";
    return;
  }
  out << "command: " << echo << "\n";
  out << "input digest: " << digest << "\n";
  out << "dims: " << dims.d1 << " x " << dims.d2 << "\n";
  print_reports(out, a.reports);
  if (a.witness) out << "tr(W rho) = " << sci(*a.witness) << "\n";
  out << "wall time: " << fixed(elapsed_ms(start), 1) << " ms\n";
}

// ------------------------------------------------------------ analyze

int cmd_analyze(const GlobalFlags& g, const std::string& path, const std::string& echo,
                std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::string bytes;
  std::optional<DensityState> rho;
  try {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidInput("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    bytes = ss.str();
    rho.emplace(parse_state(bytes));
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInputFile;
  }
  emit_analysis(out, g, echo, fnv1a_hex(bytes), analyze_state(*rho, g.tol), rho->dims(), start);
  return kOk;
}

// ------------------------------------------------------------ family

struct SweepRange {
  double from = 0.0;
  double to = 1.0;
  double step = 0.1;
};

SweepRange parse_sweep(const std::string& spec) {
  SweepRange r;
  char c1 = 0;
  char c2 = 0;
  std::istringstream is(spec);
  if (!(is >> r.from >> c1 >> r.to >> c2 >> r.step) || c1 != ':' || c2 != ':' || !is.eof()) {
    throw UsageError("--sweep expects a:b:step");
  }
  if (!(r.from >= 0.0 && r.to <= 1.0 && r.from <= r.to && r.step > 0.0)) {
    throw UsageError("--sweep range must satisfy 0 <= a <= b <= 1 and step > 0");
  }
  return r;
}

void write_sweep(std::ostream& os, std::size_t n, const SweepRange& range, double tol) {
  const Witness w = build_witness(n);
  os << "lambda,ppt_score,reduction1_score,reduction2_score,phi_score,realign_excess,"
        "major_violation,witness_expectation\n";
  const auto count = static_cast<std::size_t>(std::floor((range.to - range.from) / range.step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    const double lambda = std::min(range.from + static_cast<double>(k) * range.step, 1.0);
    const FamilyPoint p = family_state(n, lambda);
    const auto reps = analyze(p.state, tol);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", lambda);
    os << buf;
    for (const auto& r : reps) {
      std::snprintf(buf, sizeof buf, ",%.17g", r.score);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.17g\n", witness_expectation(w, p.state));
    os << buf;
  }
}

int cmd_family(const GlobalFlags& g, int n_flag, std::optional<double> lambda,
               std::optional<std::string> sweep, bool thresholds, double resolution,
               const std::string& echo, std::ostream& out) {
  const auto start = Clock::now();
  const std::size_t n = checked_family_n(n_flag);
  const int modes = (lambda ? 1 : 0) + (sweep ? 1 : 0) + (thresholds ? 1 : 0);
  if (modes != 1) throw UsageError("family: give exactly one of --lambda, --sweep, --thresholds");

  if (lambda) {
    if (!(*lambda >= 0.0 && *lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
    const FamilyPoint p = family_state(n, *lambda);
    const std::string text = serialize_state(p.state.matrix(), p.state.dims());
    if (!g.out.empty()) write_state_file(g.out, p.state.matrix(), p.state.dims());
    json extra{{"lambda", *lambda}};
    if (!g.out.empty()) extra["state_file"] = g.out;
    emit_analysis(out, g, echo, fnv1a_hex(text), analyze_state(p.state, g.tol), p.state.dims(), start,
                  std::move(extra));
    return kOk;
  }

  if (sweep) {
    const SweepRange range = parse_sweep(*sweep);
    if (g.out.empty()) {
      write_sweep(out, n, range, g.tol);
    } else {
      std::ofstream os(g.out, std::ios::binary);
      if (!os) throw UsageError("cannot open " + g.out + " for writing");
      write_sweep(os, n, range, g.tol);
    }
    return kOk;
  }

  if (!(resolution > 0.0 && resolution < 1.0)) throw UsageError("--resolution must lie in (0, 1)");
  const std::vector<std::pair<std::string, Criterion>> table = {
      {"Phi", Criterion::Phi},
      {"PPT", Criterion::PPT},
      {"Reduction", Criterion::Reduction2},
      {"Realignment", Criterion::Realignment},
      {"Majorization", Criterion::Majorization},
  };
  const ThresholdOptions opts{resolution, g.tol};
  json j{{"command", echo}, {"N", n}, {"resolution", resolution}, {"thresholds", json::object()}};
  std::ostringstream human;
  human << "lambda_c thresholds for rho(lambda), N = " << n << "\n";
  for (const auto& [name, crit] : table) {
    const ThresholdResult t = family_threshold(n, crit, opts);
    j["thresholds"][name] = {{"lambda_c", t.lambda_c}, {"detected", t.detected},
                             {"fires_at_floor", t.fires_at_floor}};
    human << std::left << std::setw(14) << name << std::right << fixed(t.lambda_c, 6);
    if (t.fires_at_floor) human << "  (fires at lambda = " << resolution << ")";
    if (!t.detected) human << "  (not detected)";
    human << "\n";
  }
  j["wall_time_ms"] = elapsed_ms(start);
  if (g.json) {
    out << j.dump(2) << "\n";
  } else {
    out << human.str();
  }
  return kOk;
}

// ------------------------------------------------------------ generate-bound

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      w.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("--weights: cannot parse '" + item + "'");
    }
  }
  return w;
}

int cmd_generate_bound(const GlobalFlags& g, int n_flag, double lambda, std::optional<std::string> weights_flag,
                       double weight_scale, const std::string& echo, std::ostream& out) {
  const auto start = Clock::now();
  const std::size_t n = checked_family_n(n_flag);
  const double window = 1.0 / static_cast<double>(n + 2);
  if (!(lambda > 0.0 && lambda <= window)) {
    throw UsageError("--lambda must lie in the PPT window (0, 1/(N+2)] = (0, " + fixed(window, 6) + "]");
  }
  if (g.out.empty()) throw UsageError("generate-bound: --out is required");

  std::vector<double> weights;
  if (weights_flag) {
    weights = parse_weights(*weights_flag);
    if (weights.size() != 2 * n) throw UsageError("--weights: expected 2N = " + std::to_string(2 * n) + " values");
    for (double x : weights) {
      if (!(x >= 0.0) || !std::isfinite(x)) throw UsageError("--weights: values must be nonnegative");
    }
  } else {
    if (!(weight_scale >= 0.0) || !std::isfinite(weight_scale)) {
      throw UsageError("--weight-scale must be nonnegative");
    }
    Rng rng(g.seed);
    std::uniform_real_distribution<double> uni(0.0, weight_scale);
    weights.resize(2 * n);
    for (auto& x : weights) x = uni(rng);
  }

  const ManifoldMember member = standard_manifold_member(n, lambda, weights);
  write_state_file(g.out, member.matrix, member.dims);
  const DensityState rho = member.state();
  const CriterionReport ppt = ppt_check(rho, g.tol);
  const double wval = witness_expectation(build_witness(n), rho);
  const bool confirmed = ppt.verdict == Verdict::Inconclusive && wval < 0.0;

  if (g.json) {
    json j{{"command", echo},
           {"N", n},
           {"lambda_base", lambda},
           {"weights", weights},
           {"state_file", g.out},
           {"input_digest", fnv1a_hex(serialize_state(member.matrix, member.dims))},
           {"raw_trace", member.raw_trace},
           {"ppt_min_eigenvalue", ppt.score},
           {"witness_expectation", wval},
           {"confirmed", confirmed},
           {"wall_time_ms", elapsed_ms(start)}};
    out << j.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n";
    out << "wrote " << g.out << " (N = " << n << ", lambda_base = " << lambda << ")\n";
    out << "trace before normalization: " << std::setprecision(12) << member.raw_trace << "\n";
    out << "PPT min eigenvalue: " << sci(ppt.score) << "\n";
    out << "tr(W rho): " << sci(wval) << "\n";
    out << (confirmed ? "confirmed: PPT entangled state detected by W\n"
                      : "NOT confirmed: construction guarantee violated\n");
  }
  return confirmed ? kOk : kNumericalFailure;
}

// ------------------------------------------------------------ verify-optimality

int cmd_verify_optimality(const GlobalFlags& g, int n_flag, std::optional<std::size_t> samples_flag,
                          const std::string& echo, std::ostream& out) {
  const auto start = Clock::now();
  const std::size_t n = checked_family_n(n_flag);
  const std::size_t samples = samples_flag.value_or(2 * n * n);
  if (samples < n * n) throw UsageError("--samples must be at least N^2 = " + std::to_string(n * n));

  const OptimalityReport opt = verify_optimality(SpinSystem::from_dimension(n), samples, g.seed, g.tol);
  const double lambda = 1.0 / static_cast<double>(n + 2);
  const FamilyPoint p = family_state(n, lambda);
  const CriterionReport ppt = ppt_check(p.state, g.tol, PptRoute::TimeReversal);
  const double wval = witness_expectation(build_witness(n), p.state);
  // At the PPT boundary the exhibit allows the eigensolver-noise margin 1e-9.
  const bool exhibit = ppt.score >= -1e-9 && wval < 0.0;
  const bool ok = opt.optimal() && exhibit;

  if (g.json) {
    json j{{"command", echo},
           {"N", n},
           {"samples", samples},
           {"seed", g.seed},
           {"span_rank", opt.rank},
           {"full_rank", opt.full_rank},
           {"theta2_residual", opt.invariance_residual},
           {"theta2_invariant", opt.theta2_invariant},
           {"exhibit_lambda", lambda},
           {"exhibit_ppt_min_eigenvalue", ppt.score},
           {"exhibit_witness_expectation", wval},
           {"exhibit_confirmed", exhibit},
           {"optimal", ok},
           {"wall_time_ms", elapsed_ms(start)}};
    out << j.dump(2) << "\n";
  } else {
    out << "command: " << echo << "\n";
    out << "Gamma_W span rank: " << opt.rank << "/" << opt.full_rank << " (" << samples << " samples)\n";
    out << "|theta_2 W - W|_max: " << sci(opt.invariance_residual)
        << (opt.theta2_invariant ? "  invariant" : "  NOT invariant") << "\n";
    out << "exhibit rho(1/(N+2)): PPT min eig " << sci(ppt.score) << ", tr(W rho) " << sci(wval)
        << (exhibit ? "  confirmed" : "  NOT confirmed") << "\n";
    out << (ok ? "W is an optimal nondecomposable witness at N = " + std::to_string(n)
               : std::string("optimality NOT confirmed"))
        << "\n";
  }
  return ok ? kOk : kNumericalFailure;
}

// ------------------------------------------------------------ bench

int cmd_bench(const GlobalFlags& g, std::size_t d1, std::size_t d2, const std::string& ensemble_name,
              std::size_t k, std::size_t samples, const std::string& echo, std::ostream& out) {
  const auto start = Clock::now();
  if (d1 == 0 || d2 == 0) throw UsageError("--d1/--d2 must be positive");
  if (samples == 0) throw UsageError("--samples must be positive");
  Ensemble ens;
  if (ensemble_name == "ginibre") {
    ens.kind = EnsembleKind::GinibreMixed;
  } else if (ensemble_name == "pure") {
    ens.kind = EnsembleKind::PureHaar;
  } else if (ensemble_name == "separable") {
    if (k == 0) throw UsageError("--k must be at least 1");
    ens.kind = EnsembleKind::SeparableMixture;
    ens.mixture_terms = k;
  } else {
    throw UsageError("--ensemble must be one of ginibre, pure, separable");
  }

  const Dims dims{d1, d2};
  const std::vector<Criterion> order = {Criterion::PPT, Criterion::Reduction1, Criterion::Reduction2,
                                        Criterion::Phi, Criterion::Realignment, Criterion::Majorization};
  std::map<Criterion, std::size_t> hits;
  std::size_t phi_skipped = 0;
  std::size_t ppt_or_phi = 0;
  std::size_t phi_not_ppt = 0;
  std::size_t any = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const DensityState rho = random_state(dims, ens, g.seed, s);
    bool fired_any = false;
    bool ppt_fired = false;
    bool phi_fired = false;
    for (const auto& r : analyze(rho, g.tol)) {
      if (r.skipped) {
        ++phi_skipped;
        continue;
      }
      if (r.verdict != Verdict::Entangled) continue;
      ++hits[r.criterion];
      fired_any = true;
      if (r.criterion == Criterion::PPT) ppt_fired = true;
      if (r.criterion == Criterion::Phi) phi_fired = true;
    }
    if (ppt_fired || phi_fired) ++ppt_or_phi;
    if (phi_fired && !ppt_fired) ++phi_not_ppt;
    if (fired_any) ++any;
  }

  if (g.json) {
    json j{{"command", echo},
           {"dims", {d1, d2}},
           {"ensemble", ensemble_name},
           {"samples", samples},
           {"seed", g.seed},
           {"detections", json::object()},
           {"ppt_or_phi", ppt_or_phi},
           {"phi_not_ppt", phi_not_ppt},
           {"any", any},
           {"wall_time_ms", elapsed_ms(start)}};
    if (ens.kind == EnsembleKind::SeparableMixture) j["mixture_terms"] = k;
    for (Criterion c : order) {
      const bool skip = c == Criterion::Phi && phi_skipped == samples;
      j["detections"][std::string(to_string(c))] = skip ? json(nullptr) : json(hits[c]);
    }
    out << j.dump(2) << "\n";
  } else {
    out << "criterion,detections,samples\n";
    for (Criterion c : order) {
      out << to_string(c) << ",";
      if (c == Criterion::Phi && phi_skipped == samples) {
        out << "skipped";
      } else {
        out << hits[c];
      }
      out << "," << samples << "\n";
    }
    out << "PPT_or_Phi," << ppt_or_phi << "," << samples << "\n";
    out << "Phi_not_PPT," << phi_not_ppt << "," << samples << "\n";
    out << "any," << any << "," << samples << "\n";
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement criteria built on the positive map Phi(B) = tr(B) I - B - V B^T V^dag", "phimap"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--tol", g.tol, "Verdict tolerance on criterion scores")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable JSON report");
  app.add_option("--seed", g.seed, "Seed for randomized commands")->capture_default_str();
  app.add_option("--out", g.out, "Output file");

  auto* analyze_cmd = app.add_subcommand("analyze", "Run every criterion on a state file");
  std::string path;
  analyze_cmd->add_option("path", path, "State file (JSON)")->required();

  auto* family_cmd = app.add_subcommand("family", "Singlet/Werner family rho(lambda)");
  int family_n = 0;
  std::optional<double> family_lambda;
  std::optional<std::string> family_sweep;
  bool family_thresholds = false;
  double resolution = 1e-6;
  family_cmd->add_option("--N", family_n, "Local dimension (even, >= 4)")->required();
  family_cmd->add_option("--lambda", family_lambda, "Single lambda in [0, 1]");
  family_cmd->add_option("--sweep", family_sweep, "Sweep a:b:step, CSV output");
  family_cmd->add_flag("--thresholds", family_thresholds, "Bisect lambda_c for every criterion");
  family_cmd->add_option("--resolution", resolution, "Bisection resolution")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("generate-bound", "Construct a bound entangled state");
  int gen_n = 0;
  double gen_lambda = 0.0;
  std::optional<std::string> gen_weights;
  double weight_scale = 0.1;
  gen_cmd->add_option("--N", gen_n, "Local dimension (even, >= 4)")->required();
  gen_cmd->add_option("--lambda", gen_lambda, "Base family parameter in (0, 1/(N+2)]")->required();
  gen_cmd->add_option("--weights", gen_weights, "2N comma-separated nonnegative weights");
  gen_cmd->add_option("--weight-scale", weight_scale, "Seeded weights are uniform in [0, scale)")
      ->capture_default_str();

  auto* opt_cmd = app.add_subcommand("verify-optimality", "Numerically certify optimality of W");
  int opt_n = 0;
  std::optional<std::size_t> opt_samples;
  opt_cmd->add_option("--N", opt_n, "Local dimension (even, >= 4)")->required();
  opt_cmd->add_option("--samples", opt_samples, "Gamma_W samples (default 2N^2)");

  auto* bench_cmd = app.add_subcommand("bench", "Detection counts over a random ensemble");
  std::size_t d1 = 4;
  std::size_t d2 = 4;
  std::string ensemble = "separable";
  std::size_t k = 10;
  std::size_t samples = 500;
  bench_cmd->add_option("--d1", d1, "First subsystem dimension")->capture_default_str();
  bench_cmd->add_option("--d2", d2, "Second subsystem dimension")->capture_default_str();
  bench_cmd->add_option("--ensemble", ensemble, "ginibre | pure | separable")->capture_default_str();
  bench_cmd->add_option("--k", k, "Terms per separable mixture")->capture_default_str();
  bench_cmd->add_option("--samples", samples, "Number of samples")->capture_default_str();

  std::vector<std::string> argv_store{"phimap"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run 'phimap --help' for usage\n";
    return kUsage;
  }

  const std::string echo = join(args);
  try {
    if (*analyze_cmd) return cmd_analyze(g, path, echo, out, err);
    if (*family_cmd) {
      return cmd_family(g, family_n, family_lambda, family_sweep, family_thresholds, resolution, echo, out);
    }
    if (*gen_cmd) return cmd_generate_bound(g, gen_n, gen_lambda, gen_weights, weight_scale, echo, out);
    if (*opt_cmd) return cmd_verify_optimality(g, opt_n, opt_samples, echo, out);
    if (*bench_cmd) return cmd_bench(g, d1, d2, ensemble, k, samples, echo, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace phimap::cli
