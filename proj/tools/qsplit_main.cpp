#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qsplit/analysis.hpp"
#include "qsplit/report.hpp"

namespace {

using namespace qsplit;

constexpr double kPi = std::numbers::pi;

ProtocolId parse_protocol(const std::string& tok) {
  if (tok == "zc1") return ProtocolId::ZC1;
  if (tok == "zc2") return ProtocolId::ZC2;
  if (tok == "hbb") return ProtocolId::HBB;
  if (tok == "zheng") return ProtocolId::Zheng;
  throw std::invalid_argument("unknown protocol: " + tok);
}

Ensemble parse_ensemble(const std::string& tok) {
  if (tok == "equatorial") return Ensemble::Equatorial;
  if (tok == "real") return Ensemble::Real;
  if (tok == "arbitrary") return Ensemble::Arbitrary;
  throw std::invalid_argument("unknown ensemble: " + tok);
}

// ---- shared flag bundles --------------------------------------------------

struct OutputFlags {
  std::string format = "json";
  std::string path;
};

void add_output_flags(CLI::App* cmd, OutputFlags& f) {
  cmd->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", f.path, "Write the report to this file instead of stdout");
}

int emit(const OutputFlags& f, const std::vector<Record>& records) {
  const OutputFormat fmt = f.format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines;
  if (f.path.empty()) {
    write_records(std::cout, records, fmt);
    return std::cout ? 0 : 2;
  }
  std::ofstream out(f.path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file " << f.path << "\n";
    return 2;
  }
  write_records(out, records, fmt);
  out.flush();
  if (!out) {
    std::cerr << "error: failed writing " << f.path << "\n";
    return 2;
  }
  return 0;
}

// Acceptance subcommands must reject --seed; a hidden option gives the
// rejection a precise diagnostic instead of a generic parse error.
struct SeedGuard {
  std::uint64_t value = 0;
  CLI::Option* opt = nullptr;
};

void add_seed_guard(CLI::App* cmd, SeedGuard& g) {
  g.opt = cmd->add_option("--seed", g.value, "")->group("");
}

bool seed_rejected(const SeedGuard& g) {
  if (g.opt != nullptr && g.opt->count() > 0) {
    std::cerr << "error: --seed is only permitted with the sample subcommand\n";
    return true;
  }
  return false;
}

// ---- secret / grid flags ----------------------------------------------------

struct GridFlags {
  double theta = 0.0, phi = 0.0;
  double theta_start = 0.0, theta_stop = 0.0;
  double phi_start = 0.0, phi_stop = 0.0;
  int theta_steps = 0, phi_steps = 0;
  CLI::Option *o_theta = nullptr, *o_phi = nullptr;
  CLI::Option *o_ts = nullptr, *o_te = nullptr, *o_tn = nullptr;
  CLI::Option *o_ps = nullptr, *o_pe = nullptr, *o_pn = nullptr;
};

void add_point_flags(CLI::App* cmd, GridFlags& g) {
  g.o_theta = cmd->add_option("--theta", g.theta, "Polar angle of the secret (radians)");
  g.o_phi = cmd->add_option("--phi", g.phi, "Azimuthal angle of the secret (radians)");
}

void add_grid_flags(CLI::App* cmd, GridFlags& g) {
  add_point_flags(cmd, g);
  g.o_ts = cmd->add_option("--theta-start", g.theta_start, "Theta grid start (radians)");
  g.o_te = cmd->add_option("--theta-stop", g.theta_stop, "Theta grid stop, inclusive (radians)");
  g.o_tn = cmd->add_option("--theta-steps", g.theta_steps, "Theta grid point count")
               ->check(CLI::PositiveNumber);
  g.o_ps = cmd->add_option("--phi-start", g.phi_start, "Phi grid start (radians)");
  g.o_pe = cmd->add_option("--phi-stop", g.phi_stop, "Phi grid stop, inclusive (radians)");
  g.o_pn = cmd->add_option("--phi-steps", g.phi_steps, "Phi grid point count")
               ->check(CLI::PositiveNumber);
  g.o_theta->excludes(g.o_ts)->excludes(g.o_te)->excludes(g.o_tn);
  g.o_phi->excludes(g.o_ps)->excludes(g.o_pe)->excludes(g.o_pn);
}

// Grid defaults track the ensemble: equatorial pins theta to the equator and
// walks phi around it (stopping short of the 2π wrap), real walks theta with
// phi = 0, arbitrary walks both axes.
SecretGrid resolve_grid(const GridFlags& g, Ensemble ens) {
  SecretGrid grid;
  grid.ensemble = ens;

  if (g.o_theta->count()) {
    grid.theta = {g.theta, g.theta, 1};
  } else {
    int steps;
    if (g.o_tn != nullptr && g.o_tn->count()) steps = g.theta_steps;
    else if (ens == Ensemble::Equatorial) steps = 1;
    else steps = 8;
    double start = (g.o_ts != nullptr && g.o_ts->count())
                       ? g.theta_start
                       : (ens == Ensemble::Equatorial ? kPi / 2.0 : 0.0);
    double stop;
    if (g.o_te != nullptr && g.o_te->count()) stop = g.theta_stop;
    else if (ens == Ensemble::Equatorial) stop = kPi / 2.0;
    else stop = steps == 1 ? start : kPi;
    grid.theta = {start, stop, steps};
  }

  if (g.o_phi->count()) {
    grid.phi = {g.phi, g.phi, 1};
  } else {
    int steps;
    if (g.o_pn != nullptr && g.o_pn->count()) steps = g.phi_steps;
    else if (ens == Ensemble::Equatorial) steps = 8;
    else if (ens == Ensemble::Arbitrary) steps = 5;
    else steps = 1;
    double start = (g.o_ps != nullptr && g.o_ps->count()) ? g.phi_start : 0.0;
    double stop;
    if (g.o_pe != nullptr && g.o_pe->count()) stop = g.phi_stop;
    else if (steps == 1 || ens == Ensemble::Real) stop = start;
    else stop = 2.0 * kPi * (steps - 1) / steps;  // stop short of the 2π wrap
    grid.phi = {start, stop, steps};
  }
  return grid;
}

SecretQubit resolve_secret(const GridFlags& g, Ensemble ens) {
  double theta, phi;
  switch (ens) {
    case Ensemble::Equatorial: theta = kPi / 2.0; phi = 0.9; break;
    case Ensemble::Real: theta = 1.1; phi = 0.0; break;
    case Ensemble::Arbitrary: theta = 1.1; phi = 0.9; break;
    default: throw std::logic_error("unknown ensemble");
  }
  if (g.o_theta->count()) theta = g.theta;
  if (g.o_phi->count()) phi = g.phi;
  return make_secret(ens, theta, phi);
}

// ---- channel flags ----------------------------------------------------------

struct ChannelFlags {
  std::string name;
  double a2 = 0.0;
  double a = 0.0, b = 0.0, c = 0.0;
  CLI::Option *o_name = nullptr, *o_a2 = nullptr;
  CLI::Option *o_a = nullptr, *o_b = nullptr, *o_c = nullptr;
};

void add_channel_flags(CLI::App* cmd, ChannelFlags& f) {
  f.o_name = cmd->add_option("--channel", f.name, "Channel kind (default: the protocol's own)")
                 ->check(CLI::IsMember({"ghz", "nonmax-ghz", "asymw", "general-w"}));
  f.o_a2 = cmd->add_option("--a2", f.a2, "Weight a² of the a|000>+b|111> channel");
  f.o_a = cmd->add_option("--a", f.a, "Coefficient of |001> for the general W channel");
  f.o_b = cmd->add_option("--b", f.b, "Coefficient of |010> for the general W channel");
  f.o_c = cmd->add_option("--c", f.c, "Coefficient of |100> for the general W channel");
}

// CLI convenience: W coefficients are scaled to unit square-sum before the
// strict factory sees them, so values given to a few decimal places (e.g.
// --c 0.70710678) are accepted.
void normalize_w_coeffs(double& a, double& b, double& c) {
  const double n = std::sqrt(a * a + b * b + c * c);
  if (std::isfinite(n) && n > 0.0) {
    a /= n;
    b /= n;
    c /= n;
  }
}

ChannelSpec resolve_channel(const ChannelFlags& f, ProtocolId id) {
  std::string name;
  if (f.o_name->count()) name = f.name;
  else if (f.o_a2->count()) name = "nonmax-ghz";
  else if (f.o_a->count() || f.o_b->count() || f.o_c->count()) name = "general-w";
  else name = std::string(channel_token(default_channel(id).kind));

  const bool has_w_coeffs = f.o_a->count() || f.o_b->count() || f.o_c->count();
  if (name == "ghz" || name == "asymw") {
    if (f.o_a2->count() || has_w_coeffs)
      throw std::invalid_argument("channel " + name + " takes no coefficient flags");
    return name == "ghz" ? ghz_channel() : asym_w_channel();
  }
  if (name == "nonmax-ghz") {
    if (has_w_coeffs)
      throw std::invalid_argument("channel nonmax-ghz takes --a2, not --a/--b/--c");
    if (!f.o_a2->count()) throw std::invalid_argument("channel nonmax-ghz requires --a2");
    if (!(f.a2 > 0.0 && f.a2 < 1.0))
      throw std::invalid_argument("--a2 must lie strictly between 0 and 1");
    return nonmax_ghz_channel(std::sqrt(f.a2), std::sqrt(1.0 - f.a2));
  }
  // general-w
  if (f.o_a2->count()) throw std::invalid_argument("channel general-w takes --a/--b/--c, not --a2");
  if (!(f.o_a->count() && f.o_b->count() && f.o_c->count()))
    throw std::invalid_argument("channel general-w requires --a, --b and --c");
  double wa = f.a, wb = f.b, wc = f.c;
  normalize_w_coeffs(wa, wb, wc);
  return general_w_channel(wa, wb, wc);
}

// ---- invariant gates (exit status 0 only when these hold) -------------------

bool probabilities_ok(const std::vector<double>& probs, double tol, const char* what) {
  double sum = 0.0;
  for (double p : probs) {
    if (p < -tol || p > 1.0 + tol) {
      std::cerr << "error: " << what << " probability out of range: " << p << "\n";
      return false;
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::cerr << "error: " << what << " probabilities sum to " << sum << ", not 1\n";
    return false;
  }
  return true;
}

bool fidelity_ok(double f, double tol, const char* what) {
  if (f < -tol || f > 1.0 + tol) {
    std::cerr << "error: " << what << " fidelity out of range: " << f << "\n";
    return false;
  }
  return true;
}

bool run_invariants_ok(const ProtocolRun& run, double tol) {
  std::vector<double> probs;
  for (const BranchRecord& br : run.branches) {
    probs.push_back(br.probability);
    if (!fidelity_ok(br.fidelity, tol, "branch")) return false;
  }
  return probabilities_ok(probs, tol, "branch");
}

bool sweep_invariants_ok(const SweepResult& sweep, double tol) {
  for (const SweepPoint& p : sweep.points) {
    std::vector<double> probs;
    for (const BranchSummary& br : p.branches) {
      probs.push_back(br.probability);
      if (!fidelity_ok(br.fidelity, tol, "branch")) return false;
    }
    if (!probabilities_ok(probs, tol, "branch")) return false;
  }
  return true;
}

// ---- subcommand handlers -----------------------------------------------------

struct RunArgs {
  std::string protocol = "zc1";
  std::string ensemble = "equatorial";
  ChannelFlags channel;
  GridFlags grid;
  OutputFlags output;
  SeedGuard seed;
  bool serial = false;
  bool controlled = false;
  bool withhold = false;
  double tolerance = kAggregateTol;
};

int cmd_run(const RunArgs& a) {
  if (seed_rejected(a.seed)) return 2;
  const ProtocolId id = parse_protocol(a.protocol);
  const Ensemble ens = parse_ensemble(a.ensemble);
  const ChannelSpec channel = resolve_channel(a.channel, id);

  if (a.controlled || a.withhold) {
    const SecretGrid grid = resolve_grid(a.grid, ens);
    const std::vector<SecretQubit> pts = enumerate_grid(grid);
    if (pts.size() != 1) {
      std::cerr << "error: --controlled/--withhold need a single secret "
                   "(one grid point); got "
                << pts.size() << "\n";
      return 2;
    }
    const ProtocolRun run = run_controlled(id, pts.front(), channel, a.withhold);
    const int status = emit(a.output, records_from_run(run));
    if (status != 0) return status;
    return run_invariants_ok(run, a.tolerance) ? 0 : 1;
  }

  const SecretGrid grid = resolve_grid(a.grid, ens);
  const SweepResult sweep = sweep_fidelity(
      id, grid, channel, a.serial ? ExecPolicy::Serial : ExecPolicy::Parallel);
  const int status = emit(a.output, records_from_sweep(sweep));
  if (status != 0) return status;
  return sweep_invariants_ok(sweep, a.tolerance) ? 0 : 1;
}

struct CompareArgs {
  std::string protocols = "zc1,hbb";
  std::string ensemble = "equatorial";
  GridFlags grid;
  OutputFlags output;
  SeedGuard seed;
  double tolerance = kAggregateTol;
};

int cmd_compare(const CompareArgs& a) {
  if (seed_rejected(a.seed)) return 2;
  const Ensemble ens = parse_ensemble(a.ensemble);
  const SecretQubit secret = resolve_secret(a.grid, ens);

  std::vector<ProtocolRun> runs;
  std::stringstream ss(a.protocols);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    const ProtocolId id = parse_protocol(tok);
    runs.push_back(run_protocol(id, secret, default_channel(id)));
  }
  if (runs.size() < 2)
    throw std::invalid_argument("--protocols needs at least two comma-separated names");

  const int status = emit(a.output, records_from_compare(runs));
  if (status != 0) return status;
  for (const ProtocolRun& run : runs)
    if (!run_invariants_ok(run, a.tolerance)) return 1;
  return 0;
}

struct LeakageArgs {
  std::string protocol = "zc1";
  std::string ensemble = "equatorial";
  ChannelFlags channel;
  GridFlags grid;
  OutputFlags output;
  SeedGuard seed;
  double tolerance = kAggregateTol;
};

int cmd_leakage(const LeakageArgs& a) {
  if (seed_rejected(a.seed)) return 2;
  const ProtocolId id = parse_protocol(a.protocol);
  const Ensemble ens = parse_ensemble(a.ensemble);
  const ChannelSpec channel = resolve_channel(a.channel, id);
  const std::vector<SecretQubit> probes = enumerate_grid(resolve_grid(a.grid, ens));

  const LeakageReport report = leakage_report(id, channel, probes);
  const int status = emit(a.output, records_from_leakage(report));
  if (status != 0) return status;
  for (const LeakageCell& cell : report.cells) {
    const bool in_range = cell.max_pairwise_distance >= -a.tolerance &&
                          cell.max_pairwise_distance <= 1.0 + a.tolerance &&
                          cell.max_distance_from_mixed >= -a.tolerance &&
                          cell.max_distance_from_mixed <= 1.0 + a.tolerance;
    if (!in_range) {
      std::cerr << "error: trace distance out of range for outcome " << cell.alice_outcome << "\n";
      return 1;
    }
  }
  return 0;
}

struct FilterArgs {
  double a2 = 0.0;
  std::string ensemble = "real";
  GridFlags grid;
  OutputFlags output;
  SeedGuard seed;
  double tolerance = kAggregateTol;
};

int cmd_filter(const FilterArgs& a) {
  if (seed_rejected(a.seed)) return 2;
  if (!(a.a2 > 0.0 && a.a2 < 1.0))
    throw std::invalid_argument("--a2 must lie strictly between 0 and 1");
  const Ensemble ens = parse_ensemble(a.ensemble);
  const SecretQubit secret = resolve_secret(a.grid, ens);

  const FilterRun run = nonmax_ghz_recovery(secret, std::sqrt(a.a2), std::sqrt(1.0 - a.a2));
  const int status = emit(a.output, records_from_filter(run));
  if (status != 0) return status;

  std::vector<double> probs;
  for (const FilterBranch& fb : run.branches) {
    probs.push_back(fb.probability);
    if (fb.success_probability < -a.tolerance || fb.success_probability > 1.0 + a.tolerance) {
      std::cerr << "error: filter success probability out of range\n";
      return 1;
    }
    if (!fidelity_ok(fb.success_fidelity, a.tolerance, "success branch") ||
        !fidelity_ok(fb.fail_fidelity, a.tolerance, "fail branch"))
      return 1;
  }
  if (!probabilities_ok(probs, a.tolerance, "branch")) return 1;
  if (run.overall_success < -a.tolerance || run.overall_success > 1.0 + a.tolerance) {
    std::cerr << "error: overall success probability out of range\n";
    return 1;
  }
  return 0;
}

struct FeasibilityArgs {
  double a = 0.0, b = 0.0, c = 0.0;
  OutputFlags output;
  SeedGuard seed;
  double tolerance = kAggregateTol;
};

int cmd_feasibility(const FeasibilityArgs& a) {
  if (seed_rejected(a.seed)) return 2;
  double wa = a.a, wb = a.b, wc = a.c;
  normalize_w_coeffs(wa, wb, wc);
  const FeasibilityResult result = general_w_feasibility(wa, wb, wc);
  const int status = emit(a.output, records_from_feasibility(result));
  if (status != 0) return status;
  for (const FeasibilityProbe& p : result.probes)
    if (!fidelity_ok(p.min_branch_fidelity, a.tolerance, "probe")) return 1;
  return 0;
}

struct SampleArgs {
  std::string protocol = "zc1";
  std::string ensemble = "equatorial";
  ChannelFlags channel;
  GridFlags grid;
  OutputFlags output;
  int shots = 16;
  std::uint64_t seed = 12345;
};

// Demonstration only: draws branches from the exact distribution. Everything
// the acceptance path consumes comes from exhaustive enumeration instead.
int cmd_sample(const SampleArgs& a) {
  const ProtocolId id = parse_protocol(a.protocol);
  const Ensemble ens = parse_ensemble(a.ensemble);
  const ChannelSpec channel = resolve_channel(a.channel, id);
  const SecretQubit secret = resolve_secret(a.grid, ens);
  const ProtocolRun run = run_protocol(id, secret, channel);

  std::uint64_t state = a.seed ? a.seed : 1;
  // xorshift64*: tiny, portable, deterministic across platforms
  const auto next_uniform = [&state]() {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    const std::uint64_t z = state * 0x2545F4914F6CDD1DULL;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
  };

  std::vector<Record> records;
  for (int shot = 0; shot < a.shots; ++shot) {
    const double u = next_uniform();
    double acc = 0.0;
    const BranchRecord* chosen = &run.branches.back();
    for (const BranchRecord& br : run.branches) {
      acc += br.probability;
      if (u < acc) {
        chosen = &br;
        break;
      }
    }
    Record r;
    r.add("record", "sample");
    r.add("protocol", protocol_token(id));
    r.add("channel", channel_token(channel.kind));
    r.add("ensemble", ensemble_token(ens));
    r.add("theta", secret.theta);
    r.add("phi", secret.phi);
    r.add("shot", shot);
    r.add("branch_key", chosen->key());
    r.add("probability", chosen->probability);
    r.add("corrections", corrections_token(chosen->corrections));
    r.add("fidelity", chosen->fidelity);
    records.push_back(std::move(r));
  }
  return emit(a.output, records);
}

void add_tolerance_flag(CLI::App* cmd, double& tol) {
  cmd->add_option("--tolerance", tol, "Override the aggregate tolerance used by exit-status checks")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator for tripartite quantum-state splitting protocols"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flags from a key=value file");

  RunArgs run_args;
  CLI::App* run_cmd = app.add_subcommand("run", "Run a protocol over a secret grid");
  run_cmd->add_option("--protocol", run_args.protocol, "zc1|zc2|hbb|zheng")
      ->check(CLI::IsMember({"zc1", "zc2", "hbb", "zheng"}))
      ->capture_default_str();
  run_cmd->add_option("--ensemble", run_args.ensemble, "Promised secret ensemble")
      ->check(CLI::IsMember({"equatorial", "real", "arbitrary"}))
      ->capture_default_str();
  add_channel_flags(run_cmd, run_args.channel);
  add_grid_flags(run_cmd, run_args.grid);
  add_output_flags(run_cmd, run_args.output);
  add_seed_guard(run_cmd, run_args.seed);
  run_cmd->add_flag("--serial", run_args.serial, "Evaluate the grid serially");
  run_cmd->add_flag("--controlled", run_args.controlled, "Mark the run as controlled");
  run_cmd->add_flag("--withhold", run_args.withhold,
                    "Withhold Alice's message (implies --controlled; single secret only)");
  add_tolerance_flag(run_cmd, run_args.tolerance);

  CompareArgs compare_args;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Compare protocols on one secret: fidelity and resources");
  compare_cmd->add_option("--protocols", compare_args.protocols, "Comma-separated protocol names")
      ->capture_default_str();
  compare_cmd->add_option("--ensemble", compare_args.ensemble, "Promised secret ensemble")
      ->check(CLI::IsMember({"equatorial", "real", "arbitrary"}))
      ->capture_default_str();
  add_point_flags(compare_cmd, compare_args.grid);
  add_output_flags(compare_cmd, compare_args.output);
  add_seed_guard(compare_cmd, compare_args.seed);
  add_tolerance_flag(compare_cmd, compare_args.tolerance);

  LeakageArgs leakage_args;
  CLI::App* leakage_cmd = app.add_subcommand(
      "leakage", "What receiver marginals reveal about the secret before Alice's message");
  leakage_cmd->add_option("--protocol", leakage_args.protocol, "zc1|zc2|hbb|zheng")
      ->check(CLI::IsMember({"zc1", "zc2", "hbb", "zheng"}))
      ->capture_default_str();
  leakage_cmd->add_option("--ensemble", leakage_args.ensemble, "Probe secret ensemble")
      ->check(CLI::IsMember({"equatorial", "real", "arbitrary"}))
      ->capture_default_str();
  add_channel_flags(leakage_cmd, leakage_args.channel);
  add_grid_flags(leakage_cmd, leakage_args.grid);
  add_output_flags(leakage_cmd, leakage_args.output);
  add_seed_guard(leakage_cmd, leakage_args.seed);
  add_tolerance_flag(leakage_cmd, leakage_args.tolerance);

  FilterArgs filter_args;
  CLI::App* filter_cmd = app.add_subcommand(
      "filter", "Conclusive recovery through the non-maximal a|000>+b|111> channel");
  filter_cmd->add_option("--a2", filter_args.a2, "Weight a² of |000>")->required();
  filter_cmd->add_option("--ensemble", filter_args.ensemble, "Secret ensemble")
      ->check(CLI::IsMember({"equatorial", "real", "arbitrary"}))
      ->capture_default_str();
  add_point_flags(filter_cmd, filter_args.grid);
  add_output_flags(filter_cmd, filter_args.output);
  add_seed_guard(filter_cmd, filter_args.seed);
  add_tolerance_flag(filter_cmd, filter_args.tolerance);

  FeasibilityArgs feasibility_args;
  CLI::App* feasibility_cmd = app.add_subcommand(
      "feasibility", "Whether a general W channel splits both promised ensembles exactly");
  feasibility_cmd->add_option("--a", feasibility_args.a, "Coefficient of |001>")->required();
  feasibility_cmd->add_option("--b", feasibility_args.b, "Coefficient of |010>")->required();
  feasibility_cmd->add_option("--c", feasibility_args.c, "Coefficient of |100>")->required();
  add_output_flags(feasibility_cmd, feasibility_args.output);
  add_seed_guard(feasibility_cmd, feasibility_args.seed);
  add_tolerance_flag(feasibility_cmd, feasibility_args.tolerance);

  SampleArgs sample_args;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Demo: sample measurement branches instead of enumerating");
  sample_cmd->add_option("--protocol", sample_args.protocol, "zc1|zc2|hbb|zheng")
      ->check(CLI::IsMember({"zc1", "zc2", "hbb", "zheng"}))
      ->capture_default_str();
  sample_cmd->add_option("--ensemble", sample_args.ensemble, "Secret ensemble")
      ->check(CLI::IsMember({"equatorial", "real", "arbitrary"}))
      ->capture_default_str();
  add_channel_flags(sample_cmd, sample_args.channel);
  add_point_flags(sample_cmd, sample_args.grid);
  add_output_flags(sample_cmd, sample_args.output);
  sample_cmd->add_option("--shots", sample_args.shots, "Number of sampled shots")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample_cmd->add_option("--seed", sample_args.seed, "RNG seed (demo sampling only)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args);
    if (compare_cmd->parsed()) return cmd_compare(compare_args);
    if (leakage_cmd->parsed()) return cmd_leakage(leakage_args);
    if (filter_cmd->parsed()) return cmd_filter(filter_args);
    if (feasibility_cmd->parsed()) return cmd_feasibility(feasibility_args);
    if (sample_cmd->parsed()) return cmd_sample(sample_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand given\n";
  return 2;
}
