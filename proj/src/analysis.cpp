#include "qsplit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <stdexcept>

#include "qsplit/density.hpp"

namespace qsplit {

std::vector<double> linspace(const AngleRange& r) {
  if (!std::isfinite(r.start) || !std::isfinite(r.stop))
    throw std::invalid_argument("angle range endpoints must be finite");
  if (r.steps < 1) throw std::invalid_argument("angle range needs at least one step");
  if (r.stop < r.start) throw std::invalid_argument("angle range must run forward");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(r.steps));
  if (r.steps == 1) {
    out.push_back(r.start);
    return out;
  }
  const double span = r.stop - r.start;
  for (int k = 0; k < r.steps; ++k)
    out.push_back(k + 1 == r.steps ? r.stop : r.start + span * k / (r.steps - 1));
  return out;
}

std::vector<SecretQubit> enumerate_grid(const SecretGrid& grid) {
  std::vector<SecretQubit> out;
  for (double theta : linspace(grid.theta))
    for (double phi : linspace(grid.phi)) out.push_back(make_secret(grid.ensemble, theta, phi));
  return out;
}

void parallel_for(std::size_t count, ExecPolicy policy,
                  const std::function<void(std::size_t)>& body) {
  if (policy == ExecPolicy::Serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
#ifdef _OPENMP
  std::exception_ptr first_error = nullptr;
  const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qsplit_parallel_for_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  for (std::size_t i = 0; i < count; ++i) body(i);
#endif
}

SweepResult sweep_fidelity(ProtocolId id, const SecretGrid& grid, const ChannelSpec& channel,
                           ExecPolicy policy) {
  check_protocol_channel(id, channel);
  const std::vector<SecretQubit> secrets = enumerate_grid(grid);

  SweepResult out;
  out.protocol = id;
  out.channel = channel;
  out.grid = grid;
  out.ledger = protocol_ledger(id, false);
  out.points.resize(secrets.size());
  parallel_for(secrets.size(), policy, [&](std::size_t i) {
    const ProtocolRun run = run_protocol(id, secrets[i], channel);
    SweepPoint p;
    p.secret = secrets[i];
    p.branches.reserve(run.branches.size());
    for (const BranchRecord& br : run.branches)
      p.branches.push_back(
          BranchSummary{br.key(), br.probability, corrections_token(br.corrections), br.fidelity});
    p.min_branch_fidelity = run.min_fidelity();
    p.average_fidelity = run.average_fidelity();
    out.points[i] = std::move(p);
  });

  // aggregate serially so both execution policies agree bit for bit
  double worst = 1.0, acc = 0.0;
  for (const SweepPoint& p : out.points) {
    worst = std::min(worst, p.min_branch_fidelity);
    acc += p.average_fidelity;
  }
  out.grid_min_fidelity = out.points.empty() ? 1.0 : worst;
  out.grid_average_fidelity = out.points.empty() ? 0.0 : acc / static_cast<double>(out.points.size());
  return out;
}

namespace {

bool same_secret(const SecretQubit& x, const SecretQubit& y) {
  return x.ensemble == y.ensemble && x.theta == y.theta && x.phi == y.phi;
}

}  // namespace

LeakageReport leakage_report(ProtocolId id, const ChannelSpec& channel,
                             const std::vector<SecretQubit>& probes) {
  if (probes.size() < 2) throw std::invalid_argument("leakage report needs at least two probe secrets");
  bool distinct = false;
  for (std::size_t i = 0; i + 1 < probes.size() && !distinct; ++i)
    for (std::size_t j = i + 1; j < probes.size() && !distinct; ++j)
      if (!same_secret(probes[i], probes[j])) distinct = true;
  if (!distinct) throw std::invalid_argument("leakage probe secrets must not all coincide");

  // Collect the (b,c) state each of Alice's outcomes leaves behind, per probe.
  std::vector<std::string> outcomes;
  std::vector<std::vector<StateVector>> states;  // [outcome][probe]
  for (std::size_t pi = 0; pi < probes.size(); ++pi) {
    const ProtocolRun run = run_protocol(id, probes[pi], channel);
    std::vector<std::string> seen;
    for (const BranchRecord& br : run.branches) {
      if (std::find(seen.begin(), seen.end(), br.alice_outcome) != seen.end()) continue;
      seen.push_back(br.alice_outcome);
      if (pi == 0) {
        outcomes.push_back(br.alice_outcome);
        states.emplace_back();
      }
      const auto it = std::find(outcomes.begin(), outcomes.end(), br.alice_outcome);
      if (it == outcomes.end()) throw std::logic_error("alice outcomes differ across probes");
      states[static_cast<std::size_t>(it - outcomes.begin())].push_back(br.post_alice_bc);
    }
  }
  for (const auto& per_probe : states)
    if (per_probe.size() != probes.size())
      throw std::logic_error("alice outcomes differ across probes");

  LeakageReport rep;
  rep.protocol = id;
  rep.channel = channel;
  rep.probes = probes;
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  for (std::size_t oi = 0; oi < outcomes.size(); ++oi) {
    for (QubitLabel party : {'b', 'c'}) {
      LeakageCell cell;
      cell.alice_outcome = outcomes[oi];
      cell.party = party;
      std::vector<DensityMatrix> rho;
      rho.reserve(probes.size());
      for (const StateVector& st : states[oi]) rho.push_back(partial_trace(st, {party}));
      for (std::size_t i = 0; i + 1 < rho.size(); ++i)
        for (std::size_t j = i + 1; j < rho.size(); ++j) {
          const double d = trace_distance(rho[i], rho[j]);
          if (d > cell.max_pairwise_distance) {
            cell.max_pairwise_distance = d;
            cell.witness_i = i;
            cell.witness_j = j;
          }
        }
      for (const DensityMatrix& r : rho)
        cell.max_distance_from_mixed = std::max(cell.max_distance_from_mixed, trace_distance(r, mixed));
      rep.max_pairwise_distance = std::max(rep.max_pairwise_distance, cell.max_pairwise_distance);
      rep.max_distance_from_mixed =
          std::max(rep.max_distance_from_mixed, cell.max_distance_from_mixed);
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

FilterRun nonmax_ghz_recovery(const SecretQubit& secret, double a, double b) {
  const ChannelSpec channel = nonmax_ghz_channel(a, b);
  const ProtocolRun run = run_zc1(secret, channel);
  const double m = std::min(a, b);

  FilterRun fr;
  fr.secret = secret;
  fr.a = a;
  fr.b = b;
  fr.reference_success_probability = 2.0 * a * a * b * b;

  const StateVector target = secret_state(secret, 'c');
  double overall = 0.0;
  for (const BranchRecord& br : run.branches) {
    int antidiagonal_count = 0;
    for (const CorrectionStep& s : br.corrections)
      if (op_antidiagonal(s.op)) ++antidiagonal_count;
    const double w0 = (antidiagonal_count % 2 == 0) ? a : b;
    const double w1 = (antidiagonal_count % 2 == 0) ? b : a;

    Matrix success = Matrix::zero(2);
    success.at(0, 0) = m / w0;
    success.at(1, 1) = m / w1;
    Matrix fail = Matrix::zero(2);
    fail.at(0, 0) = std::sqrt(std::max(0.0, 1.0 - (m / w0) * (m / w0)));
    fail.at(1, 1) = std::sqrt(std::max(0.0, 1.0 - (m / w1) * (m / w1)));
    const KrausPair filter(std::move(success), std::move(fail));

    const auto [succ, failed] = apply_kraus(*br.final_state, filter, 'c');
    FilterBranch fb;
    fb.branch_key = br.key();
    fb.probability = br.probability;
    fb.corrections = corrections_token(br.corrections);
    fb.success_probability = succ.probability;
    fb.success_fidelity =
        succ.post_state ? fidelity(partial_trace(*succ.post_state, {'c'}), target) : 0.0;
    fb.fail_fidelity =
        failed.post_state ? fidelity(partial_trace(*failed.post_state, {'c'}), target) : 0.0;
    overall += br.probability * fb.success_probability;
    fr.branches.push_back(std::move(fb));
  }
  fr.overall_success = overall;
  return fr;
}

std::vector<SecretQubit> feasibility_probes() {
  const double half_pi = std::numbers::pi / 2.0;
  return {equatorial_secret(0.0), equatorial_secret(0.9),
          equatorial_secret(half_pi), equatorial_secret(2.3),
          real_secret(0.7),          real_secret(1.1),
          real_secret(1.9),          real_secret(2.6)};
}

FeasibilityResult general_w_feasibility(double a, double b, double c) {
  const ChannelSpec channel = general_w_channel(a, b, c);

  FeasibilityResult res;
  res.a = a;
  res.b = b;
  res.c = c;
  double worst = 1.0;
  for (const SecretQubit& s : feasibility_probes()) {
    const StateVector st = make_channel(channel);
    double probe_worst = 1.0;
    for (const MeasurementBranch& mb : measure_in_basis(st, secret_basis(s), {'a'})) {
      if (!mb.post_state) continue;
      probe_worst = std::min(
          probe_worst, derive_correction(*mb.post_state, s, mb.outcome_label).achieved_fidelity);
    }
    res.probes.push_back(FeasibilityProbe{s, probe_worst});
    worst = std::min(worst, probe_worst);
  }
  res.feasible = worst >= 1.0 - kAggregateTol;

  const double root2 = std::sqrt(2.0);
  std::string failures;
  if (std::abs(a - b) > kAggregateTol) failures = "a != b";
  if (std::abs(c - root2 * a) > kAggregateTol) {
    if (!failures.empty()) failures += " and ";
    failures += "c != sqrt(2)*a";
  }
  if (res.feasible)
    res.witness = "a = b and c = sqrt(2)*a";
  else
    res.witness = failures.empty() ? "corrections fall short despite matching coefficients" : failures;
  return res;
}

}  // namespace qsplit
